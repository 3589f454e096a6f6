#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "imbatree/types.hpp"

namespace imbatree {

/// Classification and error metrics. Fields not produced by a given
/// computation stay NaN.
struct MetricSet {
  double accuracy = std::numeric_limits<double>::quiet_NaN();
  double precision = std::numeric_limits<double>::quiet_NaN();
  double recall = std::numeric_limits<double>::quiet_NaN();
  double f1 = std::numeric_limits<double>::quiet_NaN();
  double auc = std::numeric_limits<double>::quiet_NaN();
  double mae = std::numeric_limits<double>::quiet_NaN();
  double mse = std::numeric_limits<double>::quiet_NaN();
  double rmse = std::numeric_limits<double>::quiet_NaN();
  double r2 = std::numeric_limits<double>::quiet_NaN();
};

/// Accuracy, precision, recall and F1 with class 1 positive. Zero predicted
/// positives give precision 0; zero actual positives give recall 0; F1 is 0
/// when precision + recall is 0.
MetricSet confusion_metrics(const LabelVector& y_true, const LabelVector& y_pred);

/// Rank-statistic AUC: over all (positive, negative) pairs, 1 when the
/// positive scores higher, 0.5 on ties.
double roc_auc(const LabelVector& y_true, std::span<const double> scores);

/// MAE, MSE, RMSE and R^2 of positive-class probabilities against labels.
MetricSet error_metrics(const LabelVector& y_true, std::span<const double> p);

struct FoldPlan {
  std::size_t k = 0;
  std::uint64_t seed = 0;
  std::vector<std::vector<std::size_t>> test_folds;

  const std::vector<std::size_t>& test_indices(std::size_t fold) const {
    return test_folds[fold];
  }
  std::vector<std::size_t> train_indices(std::size_t fold) const;
  std::size_t total_rows() const;
};

/// Shuffles each class with the seed, then deals round-robin into k folds.
FoldPlan stratified_kfold(const LabelVector& y, std::size_t k, std::uint64_t seed);

struct HoldoutSplit {
  std::vector<std::size_t> train;
  std::vector<std::size_t> test;
};

/// Seeded stratified holdout; each class contributes round(fraction * count)
/// test rows, at least 1, leaving at least 1 for training.
HoldoutSplit stratified_holdout(const LabelVector& y, double test_fraction,
                                std::uint64_t seed);

}  // namespace imbatree
