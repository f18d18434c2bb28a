#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "crackhash/forest.hpp"

namespace crackhash {

// Cracked is the positive class throughout.
struct ConfusionMatrix {
  std::uint64_t tp = 0, fp = 0, tn = 0, fn = 0;

  std::uint64_t total() const { return tp + fp + tn + fn; }
};

inline ConfusionMatrix confusion(const std::vector<Label>& predicted,
                                 const std::vector<Label>& truth) {
  if (predicted.size() != truth.size()) {
    throw std::invalid_argument("confusion: length mismatch");
  }
  if (predicted.empty()) throw std::invalid_argument("confusion: empty input");
  ConfusionMatrix cm;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    const bool pos_true = truth[i] == Label::Cracked;
    const bool pos_pred = predicted[i] == Label::Cracked;
    if (pos_true && pos_pred) ++cm.tp;
    else if (!pos_true && pos_pred) ++cm.fp;
    else if (pos_true && !pos_pred) ++cm.fn;
    else ++cm.tn;
  }
  return cm;
}

struct ClassMetrics {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::uint64_t support = 0;
};

struct Metrics {
  double accuracy = 0.0;
  ClassMetrics cracked, uncracked;
  double macro_precision = 0.0, macro_recall = 0.0, macro_f1 = 0.0;
  std::vector<std::string> warnings;  // degenerate zero-denominator cases
};

namespace detail {

inline double safe_ratio(std::uint64_t num, std::uint64_t den, const char* what,
                         std::vector<std::string>& warnings) {
  if (den == 0) {
    warnings.push_back(std::string(what) + " undefined (zero denominator), reported as 0");
    return 0.0;
  }
  return static_cast<double>(num) / den;
}

inline double f1_score(double precision, double recall, const char* what,
                       std::vector<std::string>& warnings) {
  if (precision + recall == 0.0) {
    warnings.push_back(std::string(what) + " undefined (zero denominator), reported as 0");
    return 0.0;
  }
  return 2.0 * precision * recall / (precision + recall);
}

}  // namespace detail

inline Metrics metrics(const ConfusionMatrix& cm) {
  if (cm.total() == 0) throw std::invalid_argument("metrics: empty confusion matrix");
  Metrics m;
  m.accuracy = static_cast<double>(cm.tp + cm.tn) / cm.total();
  m.cracked.support = cm.tp + cm.fn;
  m.uncracked.support = cm.tn + cm.fp;
  m.cracked.precision = detail::safe_ratio(cm.tp, cm.tp + cm.fp, "precision(cracked)", m.warnings);
  m.cracked.recall = detail::safe_ratio(cm.tp, cm.tp + cm.fn, "recall(cracked)", m.warnings);
  m.uncracked.precision = detail::safe_ratio(cm.tn, cm.tn + cm.fn, "precision(uncracked)", m.warnings);
  m.uncracked.recall = detail::safe_ratio(cm.tn, cm.tn + cm.fp, "recall(uncracked)", m.warnings);
  m.cracked.f1 = detail::f1_score(m.cracked.precision, m.cracked.recall, "f1(cracked)", m.warnings);
  m.uncracked.f1 = detail::f1_score(m.uncracked.precision, m.uncracked.recall, "f1(uncracked)", m.warnings);
  m.macro_precision = (m.cracked.precision + m.uncracked.precision) / 2.0;
  m.macro_recall = (m.cracked.recall + m.uncracked.recall) / 2.0;
  m.macro_f1 = (m.cracked.f1 + m.uncracked.f1) / 2.0;
  return m;
}

struct RocPoint {
  double threshold = 0.0;
  double fpr = 0.0;
  double tpr = 0.0;
};

struct RocCurve {
  std::vector<RocPoint> points;
  double auc = 0.0;
};

// ROC sweep over all distinct score values (descending), predicting
// positive at score >= threshold; samples sharing a score flip together.
// Starts from the (+inf, 0, 0) sentinel and ends at (min score, 1, 1).
// The AUC accumulates the trapezoid areas in exact integer arithmetic, so
// it equals the Mann-Whitney pair count (ties at weight 1/2) bit for bit.
inline RocCurve roc(const std::vector<double>& scores,
                    const std::vector<Label>& labels) {
  if (scores.size() != labels.size()) throw std::invalid_argument("roc: length mismatch");
  if (scores.empty()) throw std::invalid_argument("roc: empty input");
  std::uint64_t n1 = 0, n0 = 0;
  for (Label l : labels) (l == Label::Cracked ? n1 : n0)++;
  if (n0 == 0 || n1 == 0) {
    throw std::invalid_argument("roc: both classes must be present");
  }
  std::vector<int> order(scores.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return scores[a] > scores[b];
  });

  RocCurve curve;
  curve.points.push_back({std::numeric_limits<double>::infinity(), 0.0, 0.0});
  std::uint64_t tp = 0, fp = 0;
  std::uint64_t auc_num = 0;  // sum of (delta fp) * (tp before + tp after)
  std::size_t i = 0;
  while (i < order.size()) {
    const double s = scores[order[i]];
    std::uint64_t dtp = 0, dfp = 0;
    while (i < order.size() && scores[order[i]] == s) {
      (labels[order[i]] == Label::Cracked ? dtp : dfp)++;
      ++i;
    }
    auc_num += dfp * (2 * tp + dtp);
    tp += dtp;
    fp += dfp;
    curve.points.push_back({s, static_cast<double>(fp) / n0,
                            static_cast<double>(tp) / n1});
  }
  curve.auc = static_cast<double>(auc_num) / (2.0 * static_cast<double>(n0) *
                                              static_cast<double>(n1));
  return curve;
}

}  // namespace crackhash
