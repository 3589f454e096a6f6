#include "imbatree/linear.hpp"

#include <algorithm>
#include <cmath>

#include "imbatree/error.hpp"
#include "imbatree/stats.hpp"

namespace imbatree {

std::vector<double> LinearModel::predict_prob1(const FeatureMatrix& m) const {
  if (m.n_cols != weights.size()) {
    fail(ErrorCode::arity_mismatch,
         "linear model was trained on " + std::to_string(weights.size()) +
             " features, input has " + std::to_string(m.n_cols));
  }
  std::vector<double> out(m.n_rows);
  for (std::size_t r = 0; r < m.n_rows; ++r) {
    const auto row = m.row(r);
    double z = intercept;
    for (std::size_t c = 0; c < m.n_cols; ++c) z += weights[c] * row[c];
    out[r] = stats::sigmoid(z);
  }
  return out;
}

double logreg_objective(const FeatureMatrix& m, const LabelVector& y,
                        const std::vector<double>& weights, double intercept,
                        const LogRegParams& params) {
  const double n = static_cast<double>(m.n_rows);
  double loss = 0.0;
  for (std::size_t r = 0; r < m.n_rows; ++r) {
    const auto row = m.row(r);
    double z = intercept;
    for (std::size_t c = 0; c < m.n_cols; ++c) z += weights[c] * row[c];
    loss += stats::log1pexp(y[r] == 1 ? -z : z);
  }
  loss /= n;
  double reg = 0.0;
  for (double w : weights) {
    reg += params.penalty == Penalty::l2 ? 0.5 * w * w : std::abs(w);
  }
  return loss + reg / (params.C * n);
}

std::vector<double> logreg_data_gradient(const FeatureMatrix& m, const LabelVector& y,
                                         const std::vector<double>& weights,
                                         double intercept) {
  const std::size_t f = m.n_cols;
  const double n = static_cast<double>(m.n_rows);
  std::vector<double> grad(f + 1, 0.0);
  for (std::size_t r = 0; r < m.n_rows; ++r) {
    const auto row = m.row(r);
    double z = intercept;
    for (std::size_t c = 0; c < f; ++c) z += weights[c] * row[c];
    const double residual = stats::sigmoid(z) - static_cast<double>(y[r]);
    for (std::size_t c = 0; c < f; ++c) grad[c] += residual * row[c];
    grad[f] += residual;
  }
  for (double& g : grad) g /= n;
  return grad;
}

namespace {

/// Largest eigenvalue of A^T A / n for A = [X | 1], via power iteration.
/// Bounds the logistic-loss hessian by /4.
double gram_spectral_bound(const FeatureMatrix& m) {
  const std::size_t f = m.n_cols + 1;
  const double n = static_cast<double>(m.n_rows);
  std::vector<double> gram(f * f, 0.0);
  for (std::size_t r = 0; r < m.n_rows; ++r) {
    const auto row = m.row(r);
    for (std::size_t i = 0; i < f; ++i) {
      const double vi = i < m.n_cols ? row[i] : 1.0;
      for (std::size_t j = i; j < f; ++j) {
        const double vj = j < m.n_cols ? row[j] : 1.0;
        gram[i * f + j] += vi * vj;
      }
    }
  }
  for (std::size_t i = 0; i < f; ++i) {
    for (std::size_t j = 0; j < i; ++j) gram[i * f + j] = gram[j * f + i];
  }
  for (double& g : gram) g /= n;

  std::vector<double> v(f, 1.0), next(f);
  double eigen = 0.0;
  for (int iter = 0; iter < 200; ++iter) {
    for (std::size_t i = 0; i < f; ++i) {
      double acc = 0.0;
      for (std::size_t j = 0; j < f; ++j) acc += gram[i * f + j] * v[j];
      next[i] = acc;
    }
    double norm = 0.0;
    for (double x : next) norm += x * x;
    norm = std::sqrt(norm);
    if (norm == 0.0) return 1.0;
    for (std::size_t i = 0; i < f; ++i) v[i] = next[i] / norm;
    const double previous = eigen;
    eigen = norm;
    if (iter > 10 && std::abs(eigen - previous) <= 1e-12 * std::max(1.0, eigen)) break;
  }
  return eigen;
}

}  // namespace

LinearModel fit_logreg(const FeatureMatrix& m, const LabelVector& y,
                       const LogRegParams& params) {
  if (!(params.C > 0.0)) fail(ErrorCode::invalid_config, "C must be > 0");
  if (m.n_rows == 0 || m.n_cols == 0) {
    fail(ErrorCode::empty_input, "fit_logreg needs at least one row and one feature");
  }
  if (y.size() != m.n_rows) {
    fail(ErrorCode::length_mismatch, "labels and matrix row counts differ");
  }
  class_counts(y);

  const std::size_t f = m.n_cols;
  const double n = static_cast<double>(m.n_rows);
  const double reg_scale = 1.0 / (params.C * n);

  // Lipschitz constant of the smooth part; the 1.05 margin absorbs the power
  // iteration truncation.
  double lipschitz = 1.05 * gram_spectral_bound(m) / 4.0;
  if (params.penalty == Penalty::l2) lipschitz += reg_scale;
  const double step = 1.0 / std::max(lipschitz, 1e-12);

  LinearModel model;
  model.weights.assign(f, 0.0);
  model.penalty = params.penalty;
  model.C = params.C;

  for (std::size_t iter = 0; iter < params.max_iter; ++iter) {
    auto grad = logreg_data_gradient(m, y, model.weights, model.intercept);
    if (params.penalty == Penalty::l2) {
      for (std::size_t c = 0; c < f; ++c) grad[c] += reg_scale * model.weights[c];
    }
    double step_norm_sq = 0.0;
    for (std::size_t c = 0; c < f; ++c) {
      double w = model.weights[c] - step * grad[c];
      if (params.penalty == Penalty::l1) {
        const double shrink = step * reg_scale;
        w = std::copysign(std::max(std::abs(w) - shrink, 0.0), w);
      }
      const double delta = w - model.weights[c];
      step_norm_sq += delta * delta;
      model.weights[c] = w;
    }
    const double db = step * grad[f];
    model.intercept -= db;
    step_norm_sq += db * db;
    model.iterations = iter + 1;
    if (std::sqrt(step_norm_sq) < params.tol) {
      model.converged = true;
      break;
    }
  }
  return model;
}

}  // namespace imbatree
