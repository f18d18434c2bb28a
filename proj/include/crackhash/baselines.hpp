#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "crackhash/forest.hpp"

namespace crackhash {

// Gaussian naive Bayes with per-class, per-feature maximum-likelihood fits
// (population variance). Variances are floored at
// 1e-9 * max-over-features variance of the pooled training data, so the
// astronomically scaled hash floats cannot produce zero-width Gaussians.
struct GnbModel {
  double prior[2] = {0.0, 0.0};
  FeatureVector mean[2]{};
  FeatureVector var[2]{};
  double epsilon = 0.0;
};

inline GnbModel train_gnb(const std::vector<LabeledSample>& samples) {
  std::uint64_t counts[2] = {0, 0};
  for (const auto& s : samples) counts[static_cast<int>(s.label)]++;
  if (counts[0] == 0 || counts[1] == 0) {
    throw std::invalid_argument("train_gnb: both classes must be present");
  }
  GnbModel m;
  const double n = static_cast<double>(samples.size());
  for (int c = 0; c < 2; ++c) m.prior[c] = counts[c] / n;

  FeatureVector pooled_mean{}, pooled_var{};
  for (const auto& s : samples) {
    const int c = static_cast<int>(s.label);
    for (int f = 0; f < kFeatureCount; ++f) {
      m.mean[c][f] += s.features[f];
      pooled_mean[f] += s.features[f];
    }
  }
  for (int c = 0; c < 2; ++c) {
    for (int f = 0; f < kFeatureCount; ++f) m.mean[c][f] /= counts[c];
  }
  for (int f = 0; f < kFeatureCount; ++f) pooled_mean[f] /= n;
  for (const auto& s : samples) {
    const int c = static_cast<int>(s.label);
    for (int f = 0; f < kFeatureCount; ++f) {
      const double dc = s.features[f] - m.mean[c][f];
      m.var[c][f] += dc * dc;
      const double dp = s.features[f] - pooled_mean[f];
      pooled_var[f] += dp * dp;
    }
  }
  double max_var = 0.0;
  for (int f = 0; f < kFeatureCount; ++f) {
    max_var = std::max(max_var, pooled_var[f] / n);
  }
  m.epsilon = max_var > 0.0 ? 1e-9 * max_var : 1e-9;
  for (int c = 0; c < 2; ++c) {
    for (int f = 0; f < kFeatureCount; ++f) {
      m.var[c][f] = std::max(m.var[c][f] / counts[c], m.epsilon);
    }
  }
  return m;
}

inline double gnb_log_posterior(const GnbModel& m, const FeatureVector& x, int c) {
  double lp = std::log(m.prior[c]);
  for (int f = 0; f < kFeatureCount; ++f) {
    const double d = x[f] - m.mean[c][f];
    lp -= 0.5 * (std::log(2.0 * std::numbers::pi * m.var[c][f]) +
                 d * d / m.var[c][f]);
  }
  return lp;
}

inline double gnb_predict_proba(const GnbModel& m, const FeatureVector& x) {
  const double l0 = gnb_log_posterior(m, x, 0);
  const double l1 = gnb_log_posterior(m, x, 1);
  // normalized posterior of class 1, computed stably
  const double mx = std::max(l0, l1);
  const double e0 = std::exp(l0 - mx), e1 = std::exp(l1 - mx);
  return e1 / (e0 + e1);
}

// k-nearest-neighbors on z-scored features. Distance ties are broken by
// lower training-sample index, vote ties go to Cracked.
struct KnnModel {
  int k = 5;
  FeatureVector mean{};
  FeatureVector stddev{};
  std::vector<FeatureVector> points;  // standardized training features
  std::vector<Label> labels;
};

inline KnnModel train_knn(const std::vector<LabeledSample>& samples, int k = 5) {
  if (k < 1) throw std::invalid_argument("train_knn: k must be >= 1");
  if (static_cast<std::size_t>(k) > samples.size()) {
    throw std::invalid_argument("train_knn: k exceeds the training set size");
  }
  KnnModel m;
  m.k = k;
  const double n = static_cast<double>(samples.size());
  for (const auto& s : samples) {
    for (int f = 0; f < kFeatureCount; ++f) m.mean[f] += s.features[f];
  }
  for (int f = 0; f < kFeatureCount; ++f) m.mean[f] /= n;
  for (const auto& s : samples) {
    for (int f = 0; f < kFeatureCount; ++f) {
      const double d = s.features[f] - m.mean[f];
      m.stddev[f] += d * d;
    }
  }
  for (int f = 0; f < kFeatureCount; ++f) {
    m.stddev[f] = std::sqrt(m.stddev[f] / n);
    if (m.stddev[f] == 0.0) m.stddev[f] = 1.0;  // constant feature: no contribution
  }
  m.points.reserve(samples.size());
  m.labels.reserve(samples.size());
  for (const auto& s : samples) {
    FeatureVector p{};
    for (int f = 0; f < kFeatureCount; ++f) {
      p[f] = (s.features[f] - m.mean[f]) / m.stddev[f];
    }
    m.points.push_back(p);
    m.labels.push_back(s.label);
  }
  return m;
}

inline double knn_predict_proba(const KnnModel& m, const FeatureVector& x) {
  if (static_cast<std::size_t>(m.k) > m.points.size()) {
    throw std::invalid_argument("knn_predict: k exceeds the training set size");
  }
  FeatureVector q{};
  for (int f = 0; f < kFeatureCount; ++f) q[f] = (x[f] - m.mean[f]) / m.stddev[f];
  std::vector<std::pair<double, int>> dist(m.points.size());
  for (std::size_t i = 0; i < m.points.size(); ++i) {
    double d2 = 0.0;
    for (int f = 0; f < kFeatureCount; ++f) {
      const double d = q[f] - m.points[i][f];
      d2 += d * d;
    }
    dist[i] = {d2, static_cast<int>(i)};
  }
  std::sort(dist.begin(), dist.end());
  int votes = 0;
  for (int i = 0; i < m.k; ++i) {
    if (m.labels[dist[i].second] == Label::Cracked) ++votes;
  }
  return static_cast<double>(votes) / m.k;
}

inline Label knn_predict(const KnnModel& m, const FeatureVector& x) {
  return predict_label(knn_predict_proba(m, x));
}

}  // namespace crackhash
