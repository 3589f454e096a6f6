#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "imbatree/tree.hpp"
#include "imbatree/types.hpp"

namespace imbatree {

enum class ForestMode { bagging, extra };
enum class MaxFeaturesRule { sqrt_total, all };

struct ForestParams {
  std::size_t n_estimators = 100;
  std::optional<std::size_t> max_depth;
  std::size_t min_split = 2;
  ClassWeight class_weight = ClassWeight::none;
  MaxFeaturesRule max_features = MaxFeaturesRule::sqrt_total;
};

struct ForestModel {
  ForestMode mode = ForestMode::bagging;
  ForestParams params;
  std::size_t feature_count = 0;
  std::vector<Tree> trees;

  /// Unweighted mean of per-tree leaf probabilities; arity checked.
  std::vector<double> predict_prob1(const FeatureMatrix& m) const;
};

/// Bagging mode draws one bootstrap sample per tree and uses exact splits;
/// extra mode trains every tree on the full sample with random thresholds.
/// Per-tree RNG streams are pre-split from the seed.
ForestModel fit_forest(const FeatureMatrix& m, const LabelVector& y,
                       const ForestParams& params, ForestMode mode,
                       std::uint64_t seed);

}  // namespace imbatree
