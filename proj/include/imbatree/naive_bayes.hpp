#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "imbatree/types.hpp"

namespace imbatree {

struct GaussianNBModel {
  std::array<double, 2> priors{0.5, 0.5};
  std::vector<double> mean0, mean1;
  std::vector<double> var0, var1;  // population variances
  double var_smoothing = 1e-9;
  double epsilon = 0.0;  // var_smoothing * max feature variance

  std::vector<double> predict_prob1(const FeatureMatrix& m) const;
};

/// Class priors from frequencies; per-class per-feature Gaussian densities
/// with variances lifted by epsilon = var_smoothing * max feature variance.
GaussianNBModel fit_gnb(const FeatureMatrix& m, const LabelVector& y,
                        double var_smoothing = 1e-9);

}  // namespace imbatree
