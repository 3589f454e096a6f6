#include "imbatree/naive_bayes.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "imbatree/error.hpp"
#include "imbatree/stats.hpp"

namespace imbatree {

std::vector<double> GaussianNBModel::predict_prob1(const FeatureMatrix& m) const {
  if (m.n_cols != mean0.size()) {
    fail(ErrorCode::arity_mismatch,
         "naive bayes model was trained on " + std::to_string(mean0.size()) +
             " features, input has " + std::to_string(m.n_cols));
  }
  std::vector<double> out(m.n_rows);
  const double log_2pi = std::log(2.0 * std::numbers::pi);
  for (std::size_t r = 0; r < m.n_rows; ++r) {
    const auto row = m.row(r);
    double log0 = std::log(priors[0]);
    double log1 = std::log(priors[1]);
    for (std::size_t c = 0; c < m.n_cols; ++c) {
      const double v0 = var0[c] + epsilon;
      const double v1 = var1[c] + epsilon;
      const double d0 = row[c] - mean0[c];
      const double d1 = row[c] - mean1[c];
      log0 += -0.5 * (log_2pi + std::log(v0) + d0 * d0 / v0);
      log1 += -0.5 * (log_2pi + std::log(v1) + d1 * d1 / v1);
    }
    // normalize in log space
    const double peak = std::max(log0, log1);
    const double e0 = std::exp(log0 - peak);
    const double e1 = std::exp(log1 - peak);
    out[r] = e1 / (e0 + e1);
  }
  return out;
}

GaussianNBModel fit_gnb(const FeatureMatrix& m, const LabelVector& y,
                        double var_smoothing) {
  if (m.n_rows == 0 || m.n_cols == 0) {
    fail(ErrorCode::empty_input, "fit_gnb needs at least one row and one feature");
  }
  if (y.size() != m.n_rows) {
    fail(ErrorCode::length_mismatch, "labels and matrix row counts differ");
  }
  const auto counts = class_counts(y);
  if (counts[0] == 0 || counts[1] == 0) {
    fail(ErrorCode::single_class, "fit_gnb needs both classes present");
  }

  GaussianNBModel model;
  model.var_smoothing = var_smoothing;
  model.priors = {static_cast<double>(counts[0]) / static_cast<double>(y.size()),
                  static_cast<double>(counts[1]) / static_cast<double>(y.size())};
  model.mean0.assign(m.n_cols, 0.0);
  model.mean1.assign(m.n_cols, 0.0);
  model.var0.assign(m.n_cols, 0.0);
  model.var1.assign(m.n_cols, 0.0);

  double max_variance = 0.0;
  std::vector<double> class_values;
  for (std::size_t c = 0; c < m.n_cols; ++c) {
    const auto column = m.column(c);
    max_variance = std::max(max_variance, stats::population_variance(column));
    for (int cls : {0, 1}) {
      class_values.clear();
      for (std::size_t r = 0; r < m.n_rows; ++r) {
        if (y[r] == cls) class_values.push_back(column[r]);
      }
      const double mu = stats::mean(class_values);
      const double var = stats::population_variance(class_values);
      if (cls == 0) {
        model.mean0[c] = mu;
        model.var0[c] = var;
      } else {
        model.mean1[c] = mu;
        model.var1[c] = var;
      }
    }
  }
  model.epsilon = var_smoothing * max_variance;
  if (model.epsilon == 0.0) model.epsilon = var_smoothing;  // all-constant features
  return model;
}

}  // namespace imbatree
