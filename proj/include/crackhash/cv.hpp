#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "crackhash/baselines.hpp"
#include "crackhash/forest.hpp"
#include "crackhash/metrics.hpp"
#include "crackhash/rng.hpp"

namespace crackhash {

enum class ModelKind { RandomForest, DecisionTree, KNeighbors, GaussianNB };

inline const char* model_kind_name(ModelKind k) {
  switch (k) {
    case ModelKind::RandomForest: return "rf";
    case ModelKind::DecisionTree: return "tree";
    case ModelKind::KNeighbors: return "knn";
    case ModelKind::GaussianNB: return "gnb";
  }
  return "?";
}

inline ModelKind model_kind_from_name(const std::string& s) {
  if (s == "rf") return ModelKind::RandomForest;
  if (s == "tree") return ModelKind::DecisionTree;
  if (s == "knn") return ModelKind::KNeighbors;
  if (s == "gnb") return ModelKind::GaussianNB;
  throw std::invalid_argument("unknown model kind: " + s);
}

struct ModelParams {
  ForestParams forest;
  int knn_k = 5;
};

// Seeded stratified k-fold split. Per class, indices are shuffled and dealt
// round-robin, so per-fold class counts differ from perfect stratification
// by at most one. Folds are returned with ascending indices.
inline std::vector<std::vector<int>> stratified_kfold(
    const std::vector<Label>& labels, int k, std::uint64_t seed) {
  if (k < 2) throw std::invalid_argument("stratified_kfold: k must be >= 2");
  std::vector<int> by_class[2];
  for (std::size_t i = 0; i < labels.size(); ++i) {
    by_class[static_cast<int>(labels[i])].push_back(static_cast<int>(i));
  }
  for (int c = 0; c < 2; ++c) {
    if (by_class[c].size() < static_cast<std::size_t>(k)) {
      throw std::invalid_argument(
          "stratified_kfold: every class needs at least k samples");
    }
  }
  Rng rng(seed);
  std::vector<std::vector<int>> folds(k);
  for (int c = 0; c < 2; ++c) {
    rng.shuffle(by_class[c]);
    for (std::size_t i = 0; i < by_class[c].size(); ++i) {
      folds[i % k].push_back(by_class[c][i]);
    }
  }
  for (auto& fold : folds) std::sort(fold.begin(), fold.end());
  return folds;
}

inline std::vector<std::vector<int>> stratified_kfold(
    const std::vector<LabeledSample>& samples, int k, std::uint64_t seed) {
  std::vector<Label> labels(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) labels[i] = samples[i].label;
  return stratified_kfold(labels, k, seed);
}

struct CVResult {
  std::vector<double> fold_accuracy;
  double mean = 0.0;
  double stddev = 0.0;  // population standard deviation over folds
  std::vector<RocCurve> fold_roc;

  double mean_auc() const {
    double s = 0.0;
    for (const auto& r : fold_roc) s += r.auc;
    return fold_roc.empty() ? 0.0 : s / fold_roc.size();
  }
};

namespace detail {

// A trained model of any supported kind with a common scoring interface.
struct FittedModel {
  ModelKind kind = ModelKind::RandomForest;
  Forest forest;
  GnbModel gnb;
  KnnModel knn;

  double proba(const FeatureVector& x) const {
    switch (kind) {
      case ModelKind::RandomForest:
      case ModelKind::DecisionTree: return forest_predict_proba(forest, x);
      case ModelKind::KNeighbors: return knn_predict_proba(knn, x);
      case ModelKind::GaussianNB: return gnb_predict_proba(gnb, x);
    }
    return 0.0;
  }
};

inline FittedModel fit_model(ModelKind kind, const ModelParams& params,
                             const std::vector<LabeledSample>& train,
                             std::uint64_t seed, int threads) {
  FittedModel m;
  m.kind = kind;
  switch (kind) {
    case ModelKind::RandomForest:
      m.forest = train_forest(train, params.forest, seed, threads);
      break;
    case ModelKind::DecisionTree: {
      // single unbagged CART over all features
      ForestParams p = params.forest;
      p.n_trees = 1;
      p.bootstrap = false;
      p.max_features = kFeatureCount;
      m.forest = train_forest(train, p, seed, 1);
      break;
    }
    case ModelKind::KNeighbors:
      m.knn = train_knn(train, params.knn_k);
      break;
    case ModelKind::GaussianNB:
      m.gnb = train_gnb(train);
      break;
  }
  return m;
}

}  // namespace detail

// The paper's protocol: for each of the k stratified folds, train on the
// other k-1 and score the held-out fold. Fold f trains with seed
// derive_seed(seed, f); the fold layout uses the master seed directly.
inline CVResult cross_validate(ModelKind kind, const ModelParams& params,
                               const std::vector<LabeledSample>& samples,
                               int k = 10, std::uint64_t seed = 42,
                               int threads = 1) {
  const auto folds = stratified_kfold(samples, k, seed);
  CVResult result;
  for (int f = 0; f < k; ++f) {
    std::vector<char> in_test(samples.size(), 0);
    for (int i : folds[f]) in_test[i] = 1;
    std::vector<LabeledSample> train;
    train.reserve(samples.size() - folds[f].size());
    for (std::size_t i = 0; i < samples.size(); ++i) {
      if (!in_test[i]) train.push_back(samples[i]);
    }
    const auto model = detail::fit_model(kind, params, train,
                                         derive_seed(seed, f), threads);
    std::vector<double> scores;
    std::vector<Label> truth, pred;
    scores.reserve(folds[f].size());
    for (int i : folds[f]) {
      const double p = model.proba(samples[i].features);
      scores.push_back(p);
      pred.push_back(predict_label(p));
      truth.push_back(samples[i].label);
    }
    const ConfusionMatrix cm = confusion(pred, truth);
    result.fold_accuracy.push_back(static_cast<double>(cm.tp + cm.tn) / cm.total());
    result.fold_roc.push_back(roc(scores, truth));
  }
  double sum = 0.0;
  for (double a : result.fold_accuracy) sum += a;
  result.mean = sum / k;
  double ss = 0.0;
  for (double a : result.fold_accuracy) ss += (a - result.mean) * (a - result.mean);
  result.stddev = std::sqrt(ss / k);
  return result;
}

}  // namespace crackhash
