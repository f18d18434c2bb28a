#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "crackhash/cv.hpp"

namespace crackhash {

struct SelectionResult {
  std::vector<int> selected;         // accepted features, in acceptance order
  std::vector<double> history;       // mean CV accuracy after each acceptance
  double baseline_accuracy = 0.0;    // empty-set majority-class baseline
};

namespace detail {

// Mean k-fold accuracy of a random forest restricted to `subset`, on folds
// fixed once by the caller. max_features follows the sqrt rule for the
// subset size so small subsets are not starved of candidates.
inline double subset_cv_accuracy(const std::vector<LabeledSample>& samples,
                                 const std::vector<std::vector<int>>& folds,
                                 const std::vector<int>& subset,
                                 const ForestParams& base, std::uint64_t seed,
                                 int threads) {
  ForestParams params = base;
  params.max_features = std::max(
      1, static_cast<int>(std::floor(std::sqrt(static_cast<double>(subset.size())))));
  double sum = 0.0;
  for (std::size_t f = 0; f < folds.size(); ++f) {
    std::vector<char> in_test(samples.size(), 0);
    for (int i : folds[f]) in_test[i] = 1;
    std::vector<LabeledSample> train;
    train.reserve(samples.size() - folds[f].size());
    for (std::size_t i = 0; i < samples.size(); ++i) {
      if (!in_test[i]) train.push_back(samples[i]);
    }
    const Forest forest =
        train_forest_subset(train, params, derive_seed(seed, f), subset, threads);
    std::uint64_t correct = 0;
    for (int i : folds[f]) {
      if (predict_label(forest_predict_proba(forest, samples[i].features)) ==
          samples[i].label) {
        ++correct;
      }
    }
    sum += static_cast<double>(correct) / folds[f].size();
  }
  return sum / folds.size();
}

// Accuracy of predicting each fold with the training majority label (ties
// to Cracked): the reference point for the first selection step.
inline double majority_baseline(const std::vector<LabeledSample>& samples,
                                const std::vector<std::vector<int>>& folds) {
  double sum = 0.0;
  for (const auto& fold : folds) {
    std::vector<char> in_test(samples.size(), 0);
    for (int i : fold) in_test[i] = 1;
    std::uint64_t counts[2] = {0, 0};
    for (std::size_t i = 0; i < samples.size(); ++i) {
      if (!in_test[i]) counts[static_cast<int>(samples[i].label)]++;
    }
    const Label majority = counts[1] >= counts[0] ? Label::Cracked : Label::Uncracked;
    std::uint64_t correct = 0;
    for (int i : fold) {
      if (samples[i].label == majority) ++correct;
    }
    sum += static_cast<double>(correct) / fold.size();
  }
  return sum / folds.size();
}

}  // namespace detail

// Greedy forward selection of hash features, scored by mean k-fold CV
// accuracy of the random forest. The fold layout is fixed once from the
// master seed and shared by every candidate evaluation, so comparisons are
// paired. A step is accepted only when the best candidate improves the
// running accuracy by more than `tolerance`; candidate ties go to the lower
// feature index.
inline SelectionResult sequential_forward_selection(
    const std::vector<LabeledSample>& samples, int k = 10,
    std::uint64_t seed = 42, const ForestParams& base = {}, int threads = 1,
    double tolerance = 1e-4) {
  const auto folds = stratified_kfold(samples, k, seed);
  SelectionResult result;
  result.baseline_accuracy = detail::majority_baseline(samples, folds);

  double current = result.baseline_accuracy;
  std::vector<char> taken(kFeatureCount, 0);
  for (int step = 0; step < kFeatureCount; ++step) {
    int best_feature = -1;
    double best_acc = 0.0;
    for (int f = 0; f < kFeatureCount; ++f) {
      if (taken[f]) continue;
      std::vector<int> subset = result.selected;
      subset.push_back(f);
      std::sort(subset.begin(), subset.end());
      const double acc =
          detail::subset_cv_accuracy(samples, folds, subset, base, seed, threads);
      if (best_feature < 0 || acc > best_acc) {
        best_feature = f;
        best_acc = acc;
      }
    }
    if (best_feature < 0 || best_acc - current <= tolerance) break;
    taken[best_feature] = 1;
    result.selected.push_back(best_feature);
    result.history.push_back(best_acc);
    current = best_acc;
  }
  return result;
}

}  // namespace crackhash
