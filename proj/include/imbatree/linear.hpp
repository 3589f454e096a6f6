#pragma once

#include <cstddef>
#include <vector>

#include "imbatree/types.hpp"

namespace imbatree {

enum class Penalty { l1, l2 };

struct LogRegParams {
  double C = 1.0;  // inverse regularization strength
  Penalty penalty = Penalty::l2;
  std::size_t max_iter = 1000;
  double tol = 1e-8;  // L2 norm of the parameter step
};

struct LinearModel {
  std::vector<double> weights;
  double intercept = 0.0;
  Penalty penalty = Penalty::l2;
  double C = 1.0;
  std::size_t iterations = 0;
  bool converged = false;

  std::vector<double> predict_prob1(const FeatureMatrix& m) const;
};

/// Minimizes (1/n) sum log(1 + exp(-y~ z)) + R(w) / (C n) with z = w.x + b,
/// R = ||w||^2 / 2 (l2, via its gradient) or ||w||_1 (l1, via
/// soft-thresholding), intercept unpenalized. Proximal gradient descent with
/// fixed step 1/L, L from the logistic-loss Lipschitz bound.
LinearModel fit_logreg(const FeatureMatrix& m, const LabelVector& y,
                       const LogRegParams& params);

/// Objective and smooth-part gradient, exposed for optimality checks.
double logreg_objective(const FeatureMatrix& m, const LabelVector& y,
                        const std::vector<double>& weights, double intercept,
                        const LogRegParams& params);
std::vector<double> logreg_data_gradient(const FeatureMatrix& m, const LabelVector& y,
                                         const std::vector<double>& weights,
                                         double intercept);  // d/dw and d/db (last)

}  // namespace imbatree
