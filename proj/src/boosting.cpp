#include "imbatree/boosting.hpp"

#include <algorithm>
#include <cmath>

#include "imbatree/error.hpp"
#include "imbatree/rng.hpp"
#include "imbatree/stats.hpp"
#include "tree_grower.hpp"

namespace imbatree {

double logistic_loss(double margin, int y) {
  // log(1 + exp(-y~ * z)) with y~ in {-1, +1}
  return stats::log1pexp(y == 1 ? -margin : margin);
}

double logistic_gradient(double margin, int y) {
  return stats::sigmoid(margin) - static_cast<double>(y);
}

double logistic_hessian(double margin) {
  const double p = stats::sigmoid(margin);
  return p * (1.0 - p);
}

double boost_leaf_weight(double grad_sum, double hess_sum, double lambda) {
  return -grad_sum / (hess_sum + lambda);
}

double boost_split_gain(double grad_left, double hess_left, double grad_right,
                        double hess_right, double lambda, double gamma) {
  const double g = grad_left + grad_right;
  const double h = hess_left + hess_right;
  return 0.5 * (grad_left * grad_left / (hess_left + lambda) +
                grad_right * grad_right / (hess_right + lambda) -
                g * g / (h + lambda)) -
         gamma;
}

std::vector<double> BoostedModel::margins(const FeatureMatrix& m) const {
  if (m.n_cols != feature_count) {
    fail(ErrorCode::arity_mismatch,
         "boosted model was trained on " + std::to_string(feature_count) +
             " features, input has " + std::to_string(m.n_cols));
  }
  std::vector<double> out(m.n_rows, base_score);
  for (const auto& tree : trees) {
    for (std::size_t r = 0; r < m.n_rows; ++r) {
      out[r] += params.learning_rate * tree.predict_value(m.row(r));
    }
  }
  return out;
}

std::vector<double> BoostedModel::predict_prob1(const FeatureMatrix& m) const {
  auto out = margins(m);
  for (double& z : out) z = stats::sigmoid(z);
  return out;
}

namespace {

/// Regression-tree policy over (gradient, hessian) sums. Scores are negated
/// gains so the shared grower minimizes; inadmissible when gain <= 0.
struct BoostPolicy {
  std::span<const double> grad;
  std::span<const double> hess;
  double lambda;
  double gamma;

  void row_stats(std::size_t row, double& a, double& b) const {
    a = grad[row];
    b = hess[row];
  }
  bool leaf_before_search(double, double, double) const { return false; }
  bool candidate(double la, double lb, double ta, double tb, double& score) const {
    const double gain = boost_split_gain(la, lb, ta - la, tb - lb, lambda, gamma);
    if (!(gain > 0.0)) return false;
    score = -gain;
    return true;
  }
  void fill_leaf(Tree::Node& node, double a, double b, double) const {
    node.value = boost_leaf_weight(a, b, lambda);
  }
};

}  // namespace

BoostedModel fit_boosted(const FeatureMatrix& m, const LabelVector& y,
                         const BoostParams& params, std::uint64_t seed) {
  if (params.n_estimators < 1) {
    fail(ErrorCode::invalid_config, "n_estimators must be >= 1");
  }
  if (!(params.learning_rate > 0.0)) {
    fail(ErrorCode::invalid_config, "learning_rate must be > 0");
  }
  if (m.n_rows == 0 || m.n_cols == 0) {
    fail(ErrorCode::empty_input, "fit_boosted needs at least one row and one feature");
  }
  if (y.size() != m.n_rows) {
    fail(ErrorCode::length_mismatch, "labels and matrix row counts differ");
  }
  const auto counts = class_counts(y);

  BoostedModel model;
  model.variant = params.variant;
  model.params = params;
  if (params.variant == BoostVariant::first_order) {
    model.params.reg_lambda = 0.0;
    model.params.reg_gamma = 0.0;
  }
  model.feature_count = m.n_cols;

  const double positive_rate =
      std::clamp(static_cast<double>(counts[1]) / static_cast<double>(y.size()),
                 1e-12, 1.0 - 1e-12);
  model.base_score = std::log(positive_rate / (1.0 - positive_rate));

  const auto presorted = detail::presort_columns(m);
  const std::vector<double> ones(m.n_rows, 1.0);
  std::vector<double> margin(m.n_rows, model.base_score);
  std::vector<double> grad(m.n_rows), hess(m.n_rows);
  std::vector<std::int32_t> leaf_of_row;

  Rng rng(seed);  // growth is deterministic; kept for interface symmetry
  const detail::LevelGrowParams level{model.params.max_depth, 0};
  const bool second = params.variant == BoostVariant::second_order;

  for (std::size_t round = 0; round < params.n_estimators; ++round) {
    for (std::size_t i = 0; i < m.n_rows; ++i) {
      grad[i] = logistic_gradient(margin[i], y[i]);
      hess[i] = second ? logistic_hessian(margin[i]) : 1.0;
    }
    const BoostPolicy policy{grad, hess, model.params.reg_lambda,
                             model.params.reg_gamma};
    Tree tree =
        detail::grow_levelwise(m, ones, level, policy, rng, presorted, &leaf_of_row);
    for (std::size_t i = 0; i < m.n_rows; ++i) {
      margin[i] += params.learning_rate *
                   tree.nodes[static_cast<std::size_t>(leaf_of_row[i])].value;
    }
    model.trees.push_back(std::move(tree));
  }
  return model;
}

}  // namespace imbatree
