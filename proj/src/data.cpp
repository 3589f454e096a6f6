#include "imbatree/data.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "imbatree/error.hpp"
#include "imbatree/stats.hpp"

namespace imbatree {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

bool parse_double(const std::string& text, double& out) {
  const std::string t = trim(text);
  if (t.empty()) return false;
  const char* first = t.data();
  const char* last = t.data() + t.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc{} && ptr == last && std::isfinite(out);
}

/// Full CSV record parser: quoted fields, escaped quotes, CRLF, embedded
/// newlines inside quotes.
std::vector<std::vector<std::string>> parse_csv_records(std::istream& in) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> record;
  std::string field;
  bool in_quotes = false;
  bool field_was_quoted = false;
  char c;

  auto end_field = [&] {
    record.push_back(field_was_quoted ? field : trim(field));
    field.clear();
    field_was_quoted = false;
  };
  auto end_record = [&] {
    end_field();
    const bool blank = record.size() == 1 && record[0].empty();
    if (!blank) records.push_back(std::move(record));
    record.clear();
  };

  while (in.get(c)) {
    if (in_quotes) {
      if (c == '"') {
        if (in.peek() == '"') {
          field.push_back('"');
          in.get(c);
        } else {
          in_quotes = false;
        }
      } else {
        field.push_back(c);
      }
      continue;
    }
    switch (c) {
      case '"':
        in_quotes = true;
        field_was_quoted = true;
        break;
      case ',':
        end_field();
        break;
      case '\r':
        break;
      case '\n':
        end_record();
        break;
      default:
        field.push_back(c);
    }
  }
  if (!field.empty() || field_was_quoted || !record.empty()) end_record();
  return records;
}

bool is_sentinel(const std::string& token, const CsvOptions& options) {
  return std::find(options.missing_sentinels.begin(), options.missing_sentinels.end(),
                   token) != options.missing_sentinels.end();
}

std::string mode_token(const std::vector<std::string>& values,
                       const std::vector<char>& missing) {
  std::map<std::string, std::size_t> counts;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!missing[i]) ++counts[values[i]];
  }
  std::string best;
  std::size_t best_count = 0;
  for (const auto& [token, count] : counts) {  // lexicographic order: ties pick the first
    if (count > best_count) {
      best = token;
      best_count = count;
    }
  }
  return best;
}

double mode_value(const std::vector<double>& values, const std::vector<char>& missing) {
  std::map<double, std::size_t> counts;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!missing[i]) ++counts[values[i]];
  }
  double best = 0.0;
  std::size_t best_count = 0;
  for (const auto& [value, count] : counts) {
    if (count > best_count) {
      best = value;
      best_count = count;
    }
  }
  return best;
}

std::vector<double> observed_values(const Column& col) {
  std::vector<double> out;
  for (std::size_t i = 0; i < col.num.size(); ++i) {
    if (!col.missing[i]) out.push_back(col.num[i]);
  }
  return out;
}

void require_observed(const Column& col, std::size_t observed) {
  if (observed == 0) {
    fail(ErrorCode::empty_input,
         "column '" + col.spec.name + "' has no observed values to impute from");
  }
}

}  // namespace

std::size_t Table::missing_count() const {
  std::size_t total = 0;
  for (const auto& col : columns) {
    for (char m : col.missing) total += static_cast<std::size_t>(m);
  }
  return total;
}

std::size_t Table::column_index(const std::string& name) const {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (columns[i].spec.name == name) return i;
  }
  fail(ErrorCode::missing_column, "no column named '" + name + "'");
}

const Column& Table::label_column() const {
  for (const auto& col : columns) {
    if (col.spec.role == ColumnRole::label) return col;
  }
  fail(ErrorCode::missing_column, "table has no label column");
}

LabelVector Table::labels() const {
  const Column& label = label_column();
  LabelVector y(n_rows);
  for (std::size_t i = 0; i < n_rows; ++i) y[i] = static_cast<int>(label.num[i]);
  return y;
}

Table load_csv(const std::string& path, const std::vector<ColumnSpec>& spec,
               const CsvOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::io_error, "cannot open '" + path + "'");
  return load_csv_stream(in, spec, options);
}

Table load_csv_stream(std::istream& in, const std::vector<ColumnSpec>& spec,
                      const CsvOptions& options) {
  std::size_t label_count = 0;
  for (const auto& cs : spec) {
    if (cs.role == ColumnRole::label) {
      ++label_count;
      if (cs.kind != ColumnKind::binary) {
        fail(ErrorCode::invalid_config,
             "label column '" + cs.name + "' must be declared binary");
      }
    }
  }
  if (label_count != 1) {
    fail(ErrorCode::invalid_config, "exactly one column must have role=label");
  }

  const auto records = parse_csv_records(in);
  if (records.empty()) fail(ErrorCode::malformed_csv, "input has no header row");

  const auto& header = records.front();
  std::vector<std::size_t> source_index(spec.size());
  for (std::size_t i = 0; i < spec.size(); ++i) {
    const auto it = std::find(header.begin(), header.end(), spec[i].name);
    if (it == header.end()) {
      fail(ErrorCode::missing_column, "header lacks column '" + spec[i].name + "'");
    }
    source_index[i] = static_cast<std::size_t>(it - header.begin());
  }

  Table table;
  table.n_rows = records.size() - 1;
  table.columns.resize(spec.size());
  for (std::size_t i = 0; i < spec.size(); ++i) {
    auto& col = table.columns[i];
    col.spec = spec[i];
    col.missing.assign(table.n_rows, 0);
    if (spec[i].kind == ColumnKind::categorical) {
      col.cat.assign(table.n_rows, "");
    } else {
      col.num.assign(table.n_rows, 0.0);
    }
  }

  for (std::size_t r = 0; r < table.n_rows; ++r) {
    const auto& record = records[r + 1];
    if (record.size() != header.size()) {
      fail(ErrorCode::malformed_csv,
           "row " + std::to_string(r + 1) + " has " + std::to_string(record.size()) +
               " cells, expected " + std::to_string(header.size()));
    }
    for (std::size_t i = 0; i < spec.size(); ++i) {
      auto& col = table.columns[i];
      const std::string& cell = record[source_index[i]];
      if (is_sentinel(cell, options)) {
        col.missing[r] = 1;
        continue;
      }
      switch (spec[i].kind) {
        case ColumnKind::numeric: {
          double v;
          if (parse_double(cell, v)) {
            col.num[r] = v;
          } else {
            col.missing[r] = 1;
          }
          break;
        }
        case ColumnKind::binary: {
          double v;
          if (parse_double(cell, v) && (v == 0.0 || v == 1.0)) {
            col.num[r] = v;
          } else {
            col.missing[r] = 1;
          }
          break;
        }
        case ColumnKind::categorical:
          col.cat[r] = cell;
          break;
      }
    }
  }

  const Column& label = table.label_column();
  for (std::size_t r = 0; r < table.n_rows; ++r) {
    if (label.missing[r]) {
      fail(ErrorCode::label_not_binary,
           "label column '" + label.spec.name + "' has a non-binary value in data row " +
               std::to_string(r));
    }
  }
  return table;
}

ImputeStrategy impute_strategy_from_string(const std::string& name) {
  if (name == "mean") return ImputeStrategy::mean;
  if (name == "median") return ImputeStrategy::median;
  if (name == "mode") return ImputeStrategy::mode;
  if (name == "knn") return ImputeStrategy::knn;
  fail(ErrorCode::invalid_config, "unknown imputation strategy '" + name + "'");
}

std::string to_string(ImputeStrategy strategy) {
  switch (strategy) {
    case ImputeStrategy::mean: return "mean";
    case ImputeStrategy::median: return "median";
    case ImputeStrategy::mode: return "mode";
    case ImputeStrategy::knn: return "knn";
  }
  return "?";
}

namespace {

void impute_numeric_knn(Table& table, std::size_t k) {
  // Distance space: numeric feature columns. Ignored numeric columns are
  // filled from their column mean instead of skewing neighbor distances.
  std::vector<std::size_t> space;
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    const auto& col = table.columns[c];
    if (col.spec.kind == ColumnKind::numeric && col.spec.role == ColumnRole::feature) {
      space.push_back(c);
    }
  }

  std::vector<std::size_t> complete;
  for (std::size_t r = 0; r < table.n_rows; ++r) {
    bool ok = true;
    for (std::size_t c : space) ok = ok && !table.columns[c].missing[r];
    if (ok) complete.push_back(r);
  }
  if (complete.size() < k) {
    fail(ErrorCode::not_enough_neighbors,
         "knn imputation needs " + std::to_string(k) + " complete rows, found " +
             std::to_string(complete.size()));
  }

  for (std::size_t r = 0; r < table.n_rows; ++r) {
    std::vector<std::size_t> observed;
    std::vector<std::size_t> holes;
    for (std::size_t c : space) {
      (table.columns[c].missing[r] ? holes : observed).push_back(c);
    }
    if (holes.empty()) continue;

    std::vector<std::pair<double, std::size_t>> dist;
    dist.reserve(complete.size());
    const double scale = observed.empty()
                             ? 0.0
                             : static_cast<double>(space.size()) /
                                   static_cast<double>(observed.size());
    for (std::size_t donor : complete) {
      double sq = 0.0;
      for (std::size_t c : observed) {
        const double d = table.columns[c].num[r] - table.columns[c].num[donor];
        sq += d * d;
      }
      dist.emplace_back(std::sqrt(scale * sq), donor);
    }
    std::sort(dist.begin(), dist.end());  // ties break toward the lower row index

    for (std::size_t c : holes) {
      double sum = 0.0;
      for (std::size_t i = 0; i < k; ++i) sum += table.columns[c].num[dist[i].second];
      table.columns[c].num[r] = sum / static_cast<double>(k);
      table.columns[c].missing[r] = 0;
    }
  }
}

}  // namespace

Table impute(const Table& table, ImputeStrategy strategy, std::size_t k) {
  if (strategy == ImputeStrategy::knn && k < 1) {
    fail(ErrorCode::invalid_config, "knn imputation requires k >= 1");
  }
  Table out = table;

  // Categorical and binary columns take the mode regardless of strategy.
  for (auto& col : out.columns) {
    const bool has_missing =
        std::find(col.missing.begin(), col.missing.end(), char(1)) != col.missing.end();
    if (!has_missing) continue;
    if (col.spec.kind == ColumnKind::categorical) {
      std::size_t observed = 0;
      for (char m : col.missing) observed += static_cast<std::size_t>(!m);
      require_observed(col, observed);
      const std::string fill = mode_token(col.cat, col.missing);
      for (std::size_t r = 0; r < out.n_rows; ++r) {
        if (col.missing[r]) {
          col.cat[r] = fill;
          col.missing[r] = 0;
        }
      }
    } else if (col.spec.kind == ColumnKind::binary) {
      std::size_t observed = 0;
      for (char m : col.missing) observed += static_cast<std::size_t>(!m);
      require_observed(col, observed);
      const double fill = mode_value(col.num, col.missing);
      for (std::size_t r = 0; r < out.n_rows; ++r) {
        if (col.missing[r]) {
          col.num[r] = fill;
          col.missing[r] = 0;
        }
      }
    }
  }

  if (strategy == ImputeStrategy::knn) {
    impute_numeric_knn(out, k);
  }

  for (auto& col : out.columns) {
    if (col.spec.kind != ColumnKind::numeric) continue;
    const bool has_missing =
        std::find(col.missing.begin(), col.missing.end(), char(1)) != col.missing.end();
    if (!has_missing) continue;
    if (strategy == ImputeStrategy::mode) {
      fail(ErrorCode::wrong_kind,
           "mode imputation does not apply to numeric column '" + col.spec.name + "'");
    }
    const auto values = observed_values(col);
    require_observed(col, values.size());
    double fill = 0.0;
    if (strategy == ImputeStrategy::median) {
      auto sorted = values;
      std::sort(sorted.begin(), sorted.end());
      fill = stats::quantile_sorted(sorted, 0.5);
    } else {
      // knn reaches here only for ignored numeric columns outside the
      // neighbor space; they take the column mean.
      fill = stats::mean(values);
    }
    for (std::size_t r = 0; r < out.n_rows; ++r) {
      if (col.missing[r]) {
        col.num[r] = fill;
        col.missing[r] = 0;
      }
    }
  }
  return out;
}

std::size_t EncodingVocabulary::feature_count() const {
  std::size_t total = 0;
  for (const auto& entry : entries) {
    total += entry.kind == ColumnKind::categorical ? entry.tokens.size() : 1;
  }
  return total;
}

namespace {

FeatureMatrix encode_with(const Table& table, const EncodingVocabulary& vocabulary,
                          bool frozen) {
  if (table.missing_count() != 0) {
    fail(ErrorCode::wrong_kind, "encode requires a fully imputed table");
  }
  FeatureMatrix m;
  m.n_rows = table.n_rows;
  m.n_cols = vocabulary.feature_count();
  m.values.assign(m.n_rows * m.n_cols, 0.0);
  m.feature_names.reserve(m.n_cols);
  m.kinds.reserve(m.n_cols);

  std::size_t out_col = 0;
  for (const auto& entry : vocabulary.entries) {
    const Column& col = table.columns[table.column_index(entry.column)];
    if (col.spec.kind != entry.kind) {
      fail(ErrorCode::wrong_kind,
           "column '" + entry.column + "' kind does not match the encoding vocabulary");
    }
    switch (entry.kind) {
      case ColumnKind::numeric:
      case ColumnKind::binary: {
        m.feature_names.push_back(entry.column);
        m.kinds.push_back(entry.kind == ColumnKind::numeric ? FeatureKind::numeric
                                                            : FeatureKind::binary);
        for (std::size_t r = 0; r < m.n_rows; ++r) {
          m.values[r * m.n_cols + out_col] = col.num[r];
        }
        ++out_col;
        break;
      }
      case ColumnKind::categorical: {
        for (const auto& token : entry.tokens) {
          m.feature_names.push_back(entry.column + "=" + token);
          m.kinds.push_back(FeatureKind::onehot);
        }
        for (std::size_t r = 0; r < m.n_rows; ++r) {
          const auto it =
              std::lower_bound(entry.tokens.begin(), entry.tokens.end(), col.cat[r]);
          if (it == entry.tokens.end() || *it != col.cat[r]) {
            if (frozen) {
              fail(ErrorCode::unseen_category, "column '" + entry.column +
                                                   "' has unseen category '" +
                                                   col.cat[r] + "'");
            }
            continue;  // unreachable in fit mode: vocabulary was built from this table
          }
          const std::size_t offset =
              static_cast<std::size_t>(it - entry.tokens.begin());
          m.values[r * m.n_cols + out_col + offset] = 1.0;
        }
        out_col += entry.tokens.size();
        break;
      }
    }
  }
  return m;
}

}  // namespace

std::pair<FeatureMatrix, EncodingVocabulary> encode(const Table& table) {
  EncodingVocabulary vocabulary;
  for (const auto& col : table.columns) {
    if (col.spec.role != ColumnRole::feature) continue;
    EncodingVocabulary::Entry entry{col.spec.name, col.spec.kind, {}};
    if (col.spec.kind == ColumnKind::categorical) {
      std::set<std::string> tokens(col.cat.begin(), col.cat.end());
      entry.tokens.assign(tokens.begin(), tokens.end());
    }
    vocabulary.entries.push_back(std::move(entry));
  }
  return {encode_with(table, vocabulary, false), vocabulary};
}

FeatureMatrix encode(const Table& table, const EncodingVocabulary& vocabulary) {
  return encode_with(table, vocabulary, true);
}

std::pair<FeatureMatrix, ScalerStats> standardize(const FeatureMatrix& m) {
  ScalerStats stats;
  stats.mean.resize(m.n_cols);
  stats.stddev.resize(m.n_cols);
  for (std::size_t c = 0; c < m.n_cols; ++c) {
    const auto column = m.column(c);
    stats.mean[c] = stats::mean(column);
    const double sd = stats::population_stddev(column);
    stats.stddev[c] = sd == 0.0 ? 1.0 : sd;
  }
  return {standardize(m, stats), stats};
}

FeatureMatrix standardize(const FeatureMatrix& m, const ScalerStats& stats) {
  if (stats.mean.size() != m.n_cols || stats.stddev.size() != m.n_cols) {
    fail(ErrorCode::arity_mismatch,
         "scaler stats cover " + std::to_string(stats.mean.size()) +
             " features, matrix has " + std::to_string(m.n_cols));
  }
  FeatureMatrix out = m;
  for (std::size_t r = 0; r < m.n_rows; ++r) {
    for (std::size_t c = 0; c < m.n_cols; ++c) {
      out.values[r * m.n_cols + c] =
          (m.values[r * m.n_cols + c] - stats.mean[c]) / stats.stddev[c];
    }
  }
  return out;
}

OutlierResult remove_outliers(const FeatureMatrix& m, const LabelVector& y,
                              double iqr_k) {
  if (iqr_k <= 0.0) fail(ErrorCode::invalid_config, "iqr_k must be > 0");
  if (y.size() != m.n_rows) {
    fail(ErrorCode::length_mismatch, "labels and matrix row counts differ");
  }

  std::vector<std::pair<double, double>> fences;  // per numeric column
  std::vector<std::size_t> numeric_cols;
  for (std::size_t c = 0; c < m.n_cols; ++c) {
    if (m.kinds[c] != FeatureKind::numeric) continue;
    auto column = m.column(c);
    std::sort(column.begin(), column.end());
    const double q1 = stats::quantile_sorted(column, 0.25);
    const double q3 = stats::quantile_sorted(column, 0.75);
    const double iqr = q3 - q1;
    fences.emplace_back(q1 - iqr_k * iqr, q3 + iqr_k * iqr);
    numeric_cols.push_back(c);
  }

  OutlierResult result;
  for (std::size_t r = 0; r < m.n_rows; ++r) {
    bool keep = true;
    for (std::size_t i = 0; i < numeric_cols.size() && keep; ++i) {
      const double v = m.at(r, numeric_cols[i]);
      keep = v >= fences[i].first && v <= fences[i].second;
    }
    if (keep) result.kept_rows.push_back(r);
  }
  if (result.kept_rows.empty()) {
    fail(ErrorCode::all_rows_dropped,
         "iqr_k=" + std::to_string(iqr_k) + " removed every row");
  }
  result.features = take_rows(m, result.kept_rows);
  result.labels = take_rows(y, result.kept_rows);
  return result;
}

CorrelationFilterResult filter_correlated(const FeatureMatrix& m, double threshold) {
  if (!(threshold > 0.0 && threshold <= 1.0)) {
    fail(ErrorCode::invalid_config, "correlation threshold must be in (0, 1]");
  }
  std::vector<std::vector<double>> columns(m.n_cols);
  for (std::size_t c = 0; c < m.n_cols; ++c) columns[c] = m.column(c);

  std::vector<char> kept(m.n_cols, 1);
  for (std::size_t i = 0; i < m.n_cols; ++i) {
    if (!kept[i]) continue;
    for (std::size_t j = i + 1; j < m.n_cols; ++j) {
      if (!kept[j]) continue;
      const bool duplicate = columns[i] == columns[j];
      const double r =
          std::min(std::abs(stats::pearson(columns[i], columns[j])), 1.0);
      if (duplicate || r > threshold) kept[j] = 0;
    }
  }

  CorrelationFilterResult result;
  for (std::size_t c = 0; c < m.n_cols; ++c) {
    if (kept[c]) result.kept_columns.push_back(c);
  }
  result.features = select_columns(m, result.kept_columns);
  return result;
}

}  // namespace imbatree
