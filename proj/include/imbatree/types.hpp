#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace imbatree {

/// What an encoded feature column originally was. Outlier and discretization
/// rules only apply to numeric columns, so the matrix keeps this around.
enum class FeatureKind { numeric, binary, onehot };

struct FeatureMatrix {
  std::size_t n_rows = 0;
  std::size_t n_cols = 0;
  std::vector<double> values;  // row-major
  std::vector<std::string> feature_names;
  std::vector<FeatureKind> kinds;

  static FeatureMatrix zeros(std::size_t rows, std::size_t cols);

  double at(std::size_t row, std::size_t col) const {
    return values[row * n_cols + col];
  }
  double& at(std::size_t row, std::size_t col) {
    return values[row * n_cols + col];
  }
  std::span<const double> row(std::size_t r) const {
    return {values.data() + r * n_cols, n_cols};
  }

  /// Column copy; handy for per-feature statistics.
  std::vector<double> column(std::size_t c) const;
};

using LabelVector = std::vector<int>;

FeatureMatrix take_rows(const FeatureMatrix& m, std::span<const std::size_t> rows);
LabelVector take_rows(const LabelVector& y, std::span<const std::size_t> rows);
FeatureMatrix select_columns(const FeatureMatrix& m, std::span<const std::size_t> cols);

/// Counts of label 0 and label 1. Throws NonBinaryLabels for anything else.
std::array<std::size_t, 2> class_counts(const LabelVector& y);

}  // namespace imbatree
