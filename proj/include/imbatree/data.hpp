#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "imbatree/types.hpp"

namespace imbatree {

enum class ColumnKind { numeric, categorical, binary };
enum class ColumnRole { feature, label, ignore };

struct ColumnSpec {
  std::string name;
  ColumnKind kind = ColumnKind::numeric;
  ColumnRole role = ColumnRole::feature;
};

/// Columnar table. Numeric and binary cells live in `num`, categorical tokens
/// in `cat`; `missing` marks cells that still need imputation.
struct Column {
  ColumnSpec spec;
  std::vector<double> num;
  std::vector<std::string> cat;
  std::vector<char> missing;
};

struct Table {
  std::vector<Column> columns;
  std::size_t n_rows = 0;

  std::size_t missing_count() const;
  std::size_t column_index(const std::string& name) const;
  const Column& label_column() const;
  LabelVector labels() const;
};

struct CsvOptions {
  /// Tokens treated as missing markers in any column.
  std::vector<std::string> missing_sentinels = {"N/A", ""};
};

/// Reads a CSV with a header row. The header must contain every spec name
/// (order-insensitive); extra columns are ignored. Cells are parsed per
/// ColumnSpec.kind; unparseable numeric cells and sentinel tokens become
/// missing markers. The label column must come out binary.
Table load_csv(const std::string& path, const std::vector<ColumnSpec>& spec,
               const CsvOptions& options = {});
Table load_csv_stream(std::istream& in, const std::vector<ColumnSpec>& spec,
                      const CsvOptions& options = {});

enum class ImputeStrategy { mean, median, mode, knn };

ImputeStrategy impute_strategy_from_string(const std::string& name);
std::string to_string(ImputeStrategy strategy);

/// Fills every missing cell. Categorical and binary columns always take the
/// column mode (ties break toward the smaller value / lexicographically first
/// token). Numeric columns take the requested strategy; `mode` on a numeric
/// column with missing cells is a WrongKind error. For knn each incomplete
/// row finds the k complete rows nearest in missing-aware Euclidean distance
/// (mutually observed numeric coordinates, rescaled by the observed fraction)
/// and takes their column mean.
Table impute(const Table& table, ImputeStrategy strategy, std::size_t k = 5);

struct EncodingVocabulary {
  struct Entry {
    std::string column;
    ColumnKind kind;
    std::vector<std::string> tokens;  // lexicographic; empty for non-categorical
  };
  std::vector<Entry> entries;
  std::size_t feature_count() const;
};

/// One-hot encodes categorical columns ("col=token", lexicographic token
/// order), passes numeric columns through, maps binary to 0/1, and excludes
/// the label. The table must be fully imputed.
std::pair<FeatureMatrix, EncodingVocabulary> encode(const Table& table);

/// Encoding against a frozen vocabulary; unknown tokens raise UnseenCategory.
FeatureMatrix encode(const Table& table, const EncodingVocabulary& vocabulary);

struct ScalerStats {
  std::vector<double> mean;
  std::vector<double> stddev;  // constant columns stored as 1
};

std::pair<FeatureMatrix, ScalerStats> standardize(const FeatureMatrix& m);
FeatureMatrix standardize(const FeatureMatrix& m, const ScalerStats& stats);

struct OutlierResult {
  FeatureMatrix features;
  LabelVector labels;
  std::vector<std::size_t> kept_rows;  // indices into the input, ascending
};

/// Drops rows where any numeric feature falls outside
/// [Q1 - iqr_k*IQR, Q3 + iqr_k*IQR] (quartiles linearly interpolated).
OutlierResult remove_outliers(const FeatureMatrix& m, const LabelVector& y,
                              double iqr_k = 1.5);

struct CorrelationFilterResult {
  FeatureMatrix features;
  std::vector<std::size_t> kept_columns;  // original indices, ascending
};

/// Scans feature pairs (i, j) with i < j in index order and drops j when
/// |pearson(i, j)| >= threshold and i is still kept. Bitwise-identical
/// columns count as perfectly correlated; constant columns otherwise
/// correlate with nothing.
CorrelationFilterResult filter_correlated(const FeatureMatrix& m, double threshold);

}  // namespace imbatree
