#pragma once

#include <cstdint>
#include <vector>

#include "imbatree/tree.hpp"
#include "imbatree/types.hpp"

namespace imbatree {

enum class BoostVariant { first_order, second_order };

struct BoostParams {
  std::size_t n_estimators = 100;
  std::size_t max_depth = 3;
  double learning_rate = 0.1;
  double reg_lambda = 1.0;  // forced to 0 for first_order
  double reg_gamma = 0.0;   // forced to 0 for first_order
  BoostVariant variant = BoostVariant::second_order;
};

/// Additive regression-tree model on the logistic loss.
/// Prediction: sigmoid(base_score + learning_rate * sum of tree outputs).
struct BoostedModel {
  BoostVariant variant = BoostVariant::second_order;
  BoostParams params;
  double base_score = 0.0;  // log-odds of the positive rate
  std::size_t feature_count = 0;
  std::vector<Tree> trees;

  std::vector<double> margins(const FeatureMatrix& m) const;
  std::vector<double> predict_prob1(const FeatureMatrix& m) const;
};

/// first_order fits each round's tree to residuals (leaf = mean residual);
/// second_order uses per-instance gradients and hessians with L2 leaf
/// regularization (lambda) and split penalty (gamma); splits whose gain is
/// <= 0 are rejected.
BoostedModel fit_boosted(const FeatureMatrix& m, const LabelVector& y,
                         const BoostParams& params, std::uint64_t seed);

/// Logistic-loss pieces at margin z for a 0/1 label.
double logistic_loss(double margin, int y);
double logistic_gradient(double margin, int y);  // p - y
double logistic_hessian(double margin);          // p (1 - p)

double boost_leaf_weight(double grad_sum, double hess_sum, double lambda);
double boost_split_gain(double grad_left, double hess_left, double grad_right,
                        double hess_right, double lambda, double gamma);

}  // namespace imbatree
