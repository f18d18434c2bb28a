#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "crackhash/hash.hpp"
#include "crackhash/parallel.hpp"
#include "crackhash/rng.hpp"

namespace crackhash {

enum class Label : std::uint8_t { Uncracked = 0, Cracked = 1 };

struct LabeledSample {
  FeatureVector features{};
  Label label = Label::Uncracked;
};

struct ForestParams {
  int n_trees = 100;
  int max_features = 3;  // floor(sqrt(10)) candidate features per split
  int min_samples_leaf = 1;
  int max_depth = -1;  // -1: unlimited
  bool bootstrap = true;
};

// Gini impurity of binary class counts.
inline double gini(std::uint64_t n0, std::uint64_t n1) {
  const std::uint64_t n = n0 + n1;
  if (n == 0) throw std::invalid_argument("gini: empty counts");
  const double p0 = static_cast<double>(n0) / n;
  const double p1 = static_cast<double>(n1) / n;
  return 1.0 - p0 * p0 - p1 * p1;
}

struct Split {
  int feature = -1;
  double threshold = 0.0;
  double child_impurity = 0.0;  // weighted mean Gini of the two children
};

namespace detail {

// Exhaustive threshold search over the given candidate features (must be in
// ascending order). Thresholds are midpoints between consecutive distinct
// values; when the midpoint rounds up to the higher value it is collapsed
// to the lower one so that `x <= threshold` always reproduces the training
// partition. Ties are broken by lower feature index, then lower threshold.
// Returns nothing when no split strictly reduces the weighted impurity or
// when no split satisfies the leaf minimum.
inline std::optional<Split> best_split_on(const std::vector<LabeledSample>& samples,
                                          const std::vector<int>& idx,
                                          const std::vector<int>& features,
                                          int min_leaf) {
  const std::size_t n = idx.size();
  if (n < 2) return std::nullopt;
  std::uint64_t n0 = 0, n1 = 0;
  for (int i : idx) (samples[i].label == Label::Cracked ? n1 : n0)++;
  if (n0 == 0 || n1 == 0) return std::nullopt;
  const double parent = gini(n0, n1);

  std::optional<Split> best;
  std::vector<std::pair<double, std::uint8_t>> vals(n);
  for (int f : features) {
    for (std::size_t i = 0; i < n; ++i) {
      const LabeledSample& s = samples[idx[i]];
      vals[i] = {s.features[f], static_cast<std::uint8_t>(s.label)};
    }
    std::sort(vals.begin(), vals.end());
    std::uint64_t c0 = 0, c1 = 0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
      (vals[i].second ? c1 : c0)++;
      if (vals[i + 1].first == vals[i].first) continue;
      const std::uint64_t nl = i + 1, nr = n - nl;
      if (nl < static_cast<std::uint64_t>(min_leaf) ||
          nr < static_cast<std::uint64_t>(min_leaf)) {
        continue;
      }
      const double wg =
          (nl * gini(c0, c1) + nr * gini(n0 - c0, n1 - c1)) / n;
      if (!best || wg < best->child_impurity) {
        double t = (vals[i].first + vals[i + 1].first) / 2.0;
        if (t == vals[i + 1].first) t = vals[i].first;
        best = Split{f, t, wg};
      }
    }
  }
  if (best && best->child_impurity < parent) return best;
  return std::nullopt;
}

}  // namespace detail

// Spec-facing split search over the full sample set.
inline std::optional<Split> best_split(const std::vector<LabeledSample>& samples,
                                       const std::vector<int>& candidate_features) {
  std::vector<int> idx(samples.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<int>(i);
  std::vector<int> feats = candidate_features;
  std::sort(feats.begin(), feats.end());
  return detail::best_split_on(samples, idx, feats, 1);
}

// CART node. feature < 0 marks a leaf; children are slots in the node
// vector, which is laid out in preorder (root first, then the whole left
// subtree, then the right subtree).
struct TreeNode {
  int feature = -1;
  double threshold = 0.0;
  std::int32_t left = -1;
  std::int32_t right = -1;
  std::uint64_t count[2] = {0, 0};  // class counts of the training samples here

  bool is_leaf() const { return feature < 0; }
};

struct Tree {
  std::vector<TreeNode> nodes;
};

namespace detail {

// Recursive CART via an explicit stack; nodes are created (and consume
// their candidate-feature draws) in preorder, which pins the RNG stream.
inline Tree build_tree_on(const std::vector<LabeledSample>& samples,
                          std::vector<int> root_idx, const ForestParams& p,
                          const std::vector<int>& feature_domain, Rng& rng) {
  struct Task {
    std::vector<int> idx;
    int depth;
    std::int32_t parent;
    bool is_left;
  };
  Tree tree;
  std::vector<Task> stack;
  stack.push_back({std::move(root_idx), 0, -1, false});
  const int d = static_cast<int>(feature_domain.size());
  const int m = std::min(p.max_features, d);
  std::vector<int> pool, feats;
  while (!stack.empty()) {
    Task task = std::move(stack.back());
    stack.pop_back();
    const auto slot = static_cast<std::int32_t>(tree.nodes.size());
    tree.nodes.emplace_back();
    if (task.parent >= 0) {
      (task.is_left ? tree.nodes[task.parent].left
                    : tree.nodes[task.parent].right) = slot;
    }
    std::uint64_t n0 = 0, n1 = 0;
    for (int i : task.idx) (samples[i].label == Label::Cracked ? n1 : n0)++;
    tree.nodes[slot].count[0] = n0;
    tree.nodes[slot].count[1] = n1;

    const bool pure = (n0 == 0 || n1 == 0);
    const bool depth_capped = (p.max_depth >= 0 && task.depth >= p.max_depth);
    const bool too_small =
        task.idx.size() < 2 * static_cast<std::size_t>(p.min_samples_leaf);
    if (pure || depth_capped || too_small || task.idx.size() < 2) continue;

    // candidate features: m distinct draws, examined in ascending order
    pool = feature_domain;
    feats.clear();
    for (int j = 0; j < m; ++j) {
      const auto pick = static_cast<std::size_t>(rng.bounded(pool.size() - j));
      feats.push_back(pool[pick]);
      std::swap(pool[pick], pool[pool.size() - 1 - j]);
    }
    std::sort(feats.begin(), feats.end());

    auto split = best_split_on(samples, task.idx, feats, p.min_samples_leaf);
    if (!split) continue;

    std::vector<int> left_idx, right_idx;
    for (int i : task.idx) {
      (samples[i].features[split->feature] <= split->threshold ? left_idx
                                                               : right_idx)
          .push_back(i);
    }
    tree.nodes[slot].feature = split->feature;
    tree.nodes[slot].threshold = split->threshold;
    stack.push_back({std::move(right_idx), task.depth + 1, slot, false});
    stack.push_back({std::move(left_idx), task.depth + 1, slot, true});
  }
  return tree;
}

inline std::vector<int> all_feature_indices() {
  std::vector<int> f(kFeatureCount);
  for (int i = 0; i < kFeatureCount; ++i) f[i] = i;
  return f;
}

inline void validate_params(const ForestParams& p) {
  if (p.n_trees < 1) throw std::invalid_argument("forest: n_trees must be >= 1");
  if (p.max_features < 1 || p.max_features > kFeatureCount) {
    throw std::invalid_argument("forest: max_features must be in [1, 10]");
  }
  if (p.min_samples_leaf < 1) {
    throw std::invalid_argument("forest: min_samples_leaf must be >= 1");
  }
}

}  // namespace detail

// Deterministic CART construction: (samples, params, seed) fully determine
// the tree.
inline Tree build_tree(const std::vector<LabeledSample>& samples,
                       const ForestParams& params, std::uint64_t rng_seed) {
  if (samples.empty()) throw std::invalid_argument("build_tree: empty input");
  detail::validate_params(params);
  std::vector<int> idx(samples.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<int>(i);
  Rng rng(rng_seed);
  return detail::build_tree_on(samples, std::move(idx), params,
                               detail::all_feature_indices(), rng);
}

struct Forest {
  std::vector<Tree> trees;
  ForestParams params;
  std::uint64_t train_seed = 0;
};

// Trains params.n_trees CART trees on bootstrap resamples. Tree t draws its
// whole RNG stream from derive_seed(seed, t), so the result is independent
// of the number of workers and of scheduling.
inline Forest train_forest_subset(const std::vector<LabeledSample>& samples,
                                  const ForestParams& params, std::uint64_t seed,
                                  const std::vector<int>& feature_domain,
                                  int threads = 1) {
  if (samples.size() < 2) {
    throw std::invalid_argument("train_forest: need at least 2 samples");
  }
  detail::validate_params(params);
  bool has[2] = {false, false};
  for (const auto& s : samples) has[static_cast<int>(s.label)] = true;
  if (!has[0] || !has[1]) {
    throw std::invalid_argument("train_forest: both classes must be present");
  }
  const std::size_t n = samples.size();
  Forest forest;
  forest.params = params;
  forest.train_seed = seed;
  forest.trees.resize(params.n_trees);
  parallel_for(params.n_trees, threads, [&](std::size_t t) {
    Rng rng(derive_seed(seed, t));
    std::vector<int> idx(n);
    if (params.bootstrap) {
      for (std::size_t i = 0; i < n; ++i) idx[i] = static_cast<int>(rng.bounded(n));
    } else {
      for (std::size_t i = 0; i < n; ++i) idx[i] = static_cast<int>(i);
    }
    forest.trees[t] =
        detail::build_tree_on(samples, std::move(idx), params, feature_domain, rng);
  });
  return forest;
}

inline Forest train_forest(const std::vector<LabeledSample>& samples,
                           const ForestParams& params, std::uint64_t seed,
                           int threads = 1) {
  return train_forest_subset(samples, params, seed, detail::all_feature_indices(),
                             threads);
}

inline double tree_predict_proba(const Tree& t, const FeatureVector& x) {
  const TreeNode* node = &t.nodes[0];
  while (!node->is_leaf()) {
    node = &t.nodes[x[node->feature] <= node->threshold ? node->left : node->right];
  }
  return static_cast<double>(node->count[1]) / (node->count[0] + node->count[1]);
}

// Mean over trees of the leaf class-1 fraction.
inline double forest_predict_proba(const Forest& f, const FeatureVector& x) {
  double sum = 0.0;
  for (const Tree& t : f.trees) sum += tree_predict_proba(t, x);
  return sum / static_cast<double>(f.trees.size());
}

// Decision rule shared by all classifiers: probability ties go to Cracked.
inline Label predict_label(double proba_cracked) {
  return proba_cracked >= 0.5 ? Label::Cracked : Label::Uncracked;
}

}  // namespace crackhash
