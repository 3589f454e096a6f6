#include "imbatree/forest.hpp"

#include <cmath>

#include "imbatree/error.hpp"
#include "imbatree/rng.hpp"

namespace imbatree {

std::vector<double> ForestModel::predict_prob1(const FeatureMatrix& m) const {
  if (m.n_cols != feature_count) {
    fail(ErrorCode::arity_mismatch,
         "forest was trained on " + std::to_string(feature_count) +
             " features, input has " + std::to_string(m.n_cols));
  }
  std::vector<double> prob(m.n_rows, 0.0);
  for (const auto& tree : trees) {
    for (std::size_t r = 0; r < m.n_rows; ++r) prob[r] += tree.predict_prob(m.row(r));
  }
  const double scale = 1.0 / static_cast<double>(trees.size());
  for (double& p : prob) p *= scale;
  return prob;
}

ForestModel fit_forest(const FeatureMatrix& m, const LabelVector& y,
                       const ForestParams& params, ForestMode mode,
                       std::uint64_t seed) {
  if (params.n_estimators < 1) {
    fail(ErrorCode::invalid_config, "n_estimators must be >= 1");
  }
  if (m.n_rows == 0 || m.n_cols == 0) {
    fail(ErrorCode::empty_input, "fit_forest needs at least one row and one feature");
  }
  if (y.size() != m.n_rows) {
    fail(ErrorCode::length_mismatch, "labels and matrix row counts differ");
  }
  class_counts(y);

  std::size_t max_features = 0;
  if (params.max_features == MaxFeaturesRule::sqrt_total) {
    max_features = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::sqrt(static_cast<double>(m.n_cols))));
  }

  ForestModel model;
  model.mode = mode;
  model.params = params;
  model.feature_count = m.n_cols;
  model.trees.reserve(params.n_estimators);

  const detail::GrowSettings settings{
      TreeParams{params.max_depth, params.min_split, params.class_weight},
      mode == ForestMode::bagging ? SplitMode::exact : SplitMode::random_threshold,
      max_features};

  std::vector<std::vector<std::uint32_t>> presorted;
  if (mode == ForestMode::bagging) presorted = detail::presort_columns(m);

  const Rng root = Rng(seed).child("forest");
  std::vector<double> multiplicity(m.n_rows);
  const std::vector<double> ones(m.n_rows, 1.0);
  for (std::size_t t = 0; t < params.n_estimators; ++t) {
    Rng tree_rng = root.child("tree", t);
    if (mode == ForestMode::bagging) {
      std::fill(multiplicity.begin(), multiplicity.end(), 0.0);
      for (std::size_t i = 0; i < m.n_rows; ++i) {
        multiplicity[tree_rng.below(m.n_rows)] += 1.0;
      }
      model.trees.push_back(detail::grow_classification_tree(
          m, y, multiplicity, settings, tree_rng, &presorted));
    } else {
      model.trees.push_back(
          detail::grow_classification_tree(m, y, ones, settings, tree_rng, nullptr));
    }
  }
  return model;
}

}  // namespace imbatree
