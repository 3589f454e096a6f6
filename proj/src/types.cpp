#include "imbatree/types.hpp"

#include "imbatree/error.hpp"

namespace imbatree {

FeatureMatrix FeatureMatrix::zeros(std::size_t rows, std::size_t cols) {
  FeatureMatrix m;
  m.n_rows = rows;
  m.n_cols = cols;
  m.values.assign(rows * cols, 0.0);
  m.feature_names.resize(cols);
  m.kinds.assign(cols, FeatureKind::numeric);
  return m;
}

std::vector<double> FeatureMatrix::column(std::size_t c) const {
  std::vector<double> out(n_rows);
  for (std::size_t r = 0; r < n_rows; ++r) out[r] = at(r, c);
  return out;
}

FeatureMatrix take_rows(const FeatureMatrix& m, std::span<const std::size_t> rows) {
  FeatureMatrix out;
  out.n_rows = rows.size();
  out.n_cols = m.n_cols;
  out.feature_names = m.feature_names;
  out.kinds = m.kinds;
  out.values.resize(rows.size() * m.n_cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto src = m.row(rows[i]);
    std::copy(src.begin(), src.end(), out.values.begin() + i * m.n_cols);
  }
  return out;
}

LabelVector take_rows(const LabelVector& y, std::span<const std::size_t> rows) {
  LabelVector out(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) out[i] = y[rows[i]];
  return out;
}

FeatureMatrix select_columns(const FeatureMatrix& m, std::span<const std::size_t> cols) {
  FeatureMatrix out;
  out.n_rows = m.n_rows;
  out.n_cols = cols.size();
  out.values.resize(m.n_rows * cols.size());
  out.feature_names.reserve(cols.size());
  out.kinds.reserve(cols.size());
  for (std::size_t c : cols) {
    out.feature_names.push_back(m.feature_names[c]);
    out.kinds.push_back(m.kinds[c]);
  }
  for (std::size_t r = 0; r < m.n_rows; ++r) {
    for (std::size_t i = 0; i < cols.size(); ++i) {
      out.values[r * cols.size() + i] = m.at(r, cols[i]);
    }
  }
  return out;
}

std::array<std::size_t, 2> class_counts(const LabelVector& y) {
  std::array<std::size_t, 2> counts{0, 0};
  for (int label : y) {
    if (label != 0 && label != 1) {
      fail(ErrorCode::non_binary_labels,
           "labels must be 0 or 1, got " + std::to_string(label));
    }
    ++counts[static_cast<std::size_t>(label)];
  }
  return counts;
}

}  // namespace imbatree
