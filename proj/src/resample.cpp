#include "imbatree/resample.hpp"

#include <algorithm>
#include <cmath>

#include "imbatree/error.hpp"
#include "imbatree/rng.hpp"

namespace imbatree {

ResampleMethod resample_method_from_string(const std::string& name) {
  if (name == "ros") return ResampleMethod::ros;
  if (name == "smote") return ResampleMethod::smote;
  if (name == "bsmote") return ResampleMethod::bsmote;
  if (name == "adasyn") return ResampleMethod::adasyn;
  fail(ErrorCode::invalid_config, "unknown resampling method '" + name + "'");
}

std::string to_string(ResampleMethod method) {
  switch (method) {
    case ResampleMethod::ros: return "ros";
    case ResampleMethod::smote: return "smote";
    case ResampleMethod::bsmote: return "bsmote";
    case ResampleMethod::adasyn: return "adasyn";
  }
  return "?";
}

namespace {

struct ClassSplit {
  std::vector<std::size_t> minority;
  std::vector<std::size_t> majority;
  int minority_label = 1;
};

ClassSplit split_classes(const LabelVector& y) {
  const auto counts = class_counts(y);
  if (counts[0] == 0 || counts[1] == 0) {
    fail(ErrorCode::single_class, "resampling needs both classes present");
  }
  ClassSplit split;
  split.minority_label = counts[1] <= counts[0] ? 1 : 0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    (y[i] == split.minority_label ? split.minority : split.majority).push_back(i);
  }
  return split;
}

ResampleResult passthrough(const FeatureMatrix& m, const LabelVector& y) {
  return ResampleResult{m, y, 0, {}};
}

double sq_distance(const FeatureMatrix& m, std::size_t a, std::size_t b) {
  const auto ra = m.row(a);
  const auto rb = m.row(b);
  double sq = 0.0;
  for (std::size_t c = 0; c < ra.size(); ++c) {
    const double d = ra[c] - rb[c];
    sq += d * d;
  }
  return sq;
}

/// Indices of the k candidates nearest to `query`, excluding `query` itself.
/// Ties break toward the lower row index (stable sort on distance).
std::vector<std::size_t> nearest_neighbors(const FeatureMatrix& m, std::size_t query,
                                           const std::vector<std::size_t>& candidates,
                                           std::size_t k) {
  std::vector<std::pair<double, std::size_t>> dist;
  dist.reserve(candidates.size());
  for (std::size_t c : candidates) {
    if (c == query) continue;
    dist.emplace_back(sq_distance(m, query, c), c);
  }
  std::sort(dist.begin(), dist.end());
  std::vector<std::size_t> out;
  out.reserve(std::min(k, dist.size()));
  for (std::size_t i = 0; i < std::min(k, dist.size()); ++i) out.push_back(dist[i].second);
  return out;
}

void append_row(ResampleResult& result, const FeatureMatrix& m, std::size_t parent,
                std::size_t neighbor, double u, int label, bool interpolate) {
  const auto base = m.row(parent);
  for (std::size_t c = 0; c < m.n_cols; ++c) {
    double v = base[c];
    if (interpolate) v += u * (m.at(neighbor, c) - base[c]);
    result.features.values.push_back(v);
  }
  ++result.features.n_rows;
  result.labels.push_back(label);
  ++result.synthetic_count;
  result.provenance.push_back(
      {parent, interpolate ? static_cast<std::ptrdiff_t>(neighbor) : -1,
       interpolate ? u : 0.0});
}

/// Shared SMOTE-style generation loop: parents cycle round-robin through
/// `parents`; each synthetic interpolates toward one of the parent's k
/// nearest rows within `neighbor_pool`.
void generate_interpolated(ResampleResult& result, const FeatureMatrix& m,
                           const std::vector<std::size_t>& parents,
                           const std::vector<std::size_t>& neighbor_pool,
                           std::size_t k, std::size_t total, int label, Rng& rng) {
  std::vector<std::vector<std::size_t>> neighbors(parents.size());
  for (std::size_t i = 0; i < parents.size(); ++i) {
    neighbors[i] = nearest_neighbors(m, parents[i], neighbor_pool, k);
  }
  for (std::size_t s = 0; s < total; ++s) {
    const std::size_t pi = s % parents.size();
    const auto& nn = neighbors[pi];
    const std::size_t neighbor = nn[rng.below(nn.size())];
    const double u = rng.next_double();
    append_row(result, m, parents[pi], neighbor, u, label, true);
  }
}

void check_smote_preconditions(const ClassSplit& split, const ResampleConfig& cfg) {
  if (cfg.k_neighbors < 1) {
    fail(ErrorCode::invalid_config, "k_neighbors must be >= 1");
  }
  if (split.minority.size() < 2 || cfg.k_neighbors > split.minority.size() - 1) {
    fail(ErrorCode::too_few_minority,
         "SMOTE needs k_neighbors + 1 <= minority count; minority has " +
             std::to_string(split.minority.size()) + " rows");
  }
}

}  // namespace

ResampleResult random_oversample(const FeatureMatrix& m, const LabelVector& y,
                                 std::uint64_t seed) {
  const auto split = split_classes(y);
  const std::size_t deficit = split.majority.size() - split.minority.size();
  if (deficit == 0) return passthrough(m, y);

  ResampleResult result = passthrough(m, y);
  Rng rng = Rng(seed).child("ros");
  for (std::size_t s = 0; s < deficit; ++s) {
    const std::size_t parent = split.minority[rng.below(split.minority.size())];
    append_row(result, m, parent, 0, 0.0, split.minority_label, false);
  }
  return result;
}

ResampleResult smote(const FeatureMatrix& m, const LabelVector& y,
                     const ResampleConfig& cfg) {
  const auto split = split_classes(y);
  check_smote_preconditions(split, cfg);
  const std::size_t deficit = split.majority.size() - split.minority.size();
  if (deficit == 0) return passthrough(m, y);

  ResampleResult result = passthrough(m, y);
  Rng rng = Rng(cfg.seed).child("smote");
  generate_interpolated(result, m, split.minority, split.minority, cfg.k_neighbors,
                        deficit, split.minority_label, rng);
  return result;
}

ResampleResult borderline_smote(const FeatureMatrix& m, const LabelVector& y,
                                const ResampleConfig& cfg) {
  const auto split = split_classes(y);
  check_smote_preconditions(split, cfg);
  if (cfg.m_neighbors < cfg.k_neighbors) {
    fail(ErrorCode::invalid_config, "bsmote needs m_neighbors >= k_neighbors");
  }
  const std::size_t deficit = split.majority.size() - split.minority.size();
  if (deficit == 0) return passthrough(m, y);

  std::vector<std::size_t> all_rows(m.n_rows);
  for (std::size_t i = 0; i < m.n_rows; ++i) all_rows[i] = i;

  // Danger rows: at least m/2 but fewer than m majority rows among the m
  // nearest neighbors over both classes. m majority neighbors means noise,
  // fewer than m/2 means safe; neither generates.
  std::vector<std::size_t> danger;
  for (std::size_t row : split.minority) {
    const auto nn = nearest_neighbors(m, row, all_rows, cfg.m_neighbors);
    std::size_t majority_count = 0;
    for (std::size_t n : nn) {
      if (y[n] != split.minority_label) ++majority_count;
    }
    const double half = static_cast<double>(cfg.m_neighbors) / 2.0;
    if (static_cast<double>(majority_count) >= half && majority_count < nn.size()) {
      danger.push_back(row);
    }
  }
  if (danger.empty()) {
    fail(ErrorCode::empty_danger_set,
         "no minority row lies on the class border; bsmote does not apply");
  }

  ResampleResult result = passthrough(m, y);
  Rng rng = Rng(cfg.seed).child("bsmote");
  generate_interpolated(result, m, danger, split.minority, cfg.k_neighbors, deficit,
                        split.minority_label, rng);
  return result;
}

ResampleResult adasyn(const FeatureMatrix& m, const LabelVector& y,
                      const ResampleConfig& cfg) {
  const auto split = split_classes(y);
  check_smote_preconditions(split, cfg);
  const std::size_t deficit = split.majority.size() - split.minority.size();
  if (deficit == 0) return passthrough(m, y);

  std::vector<std::size_t> all_rows(m.n_rows);
  for (std::size_t i = 0; i < m.n_rows; ++i) all_rows[i] = i;

  std::vector<double> ratio(split.minority.size());
  double ratio_sum = 0.0;
  for (std::size_t i = 0; i < split.minority.size(); ++i) {
    const auto nn = nearest_neighbors(m, split.minority[i], all_rows, cfg.k_neighbors);
    std::size_t majority_count = 0;
    for (std::size_t n : nn) {
      if (y[n] != split.minority_label) ++majority_count;
    }
    ratio[i] = static_cast<double>(majority_count) / static_cast<double>(nn.size());
    ratio_sum += ratio[i];
  }
  if (ratio_sum == 0.0) {
    fail(ErrorCode::all_safe,
         "every minority row is interior (no majority neighbors); adasyn quota undefined");
  }

  std::vector<std::vector<std::size_t>> neighbors(split.minority.size());
  for (std::size_t i = 0; i < split.minority.size(); ++i) {
    neighbors[i] =
        nearest_neighbors(m, split.minority[i], split.minority, cfg.k_neighbors);
  }

  ResampleResult result = passthrough(m, y);
  Rng rng = Rng(cfg.seed).child("adasyn");
  for (std::size_t i = 0; i < split.minority.size(); ++i) {
    const double normalized = ratio[i] / ratio_sum;
    const auto quota = static_cast<std::size_t>(std::llround(
        normalized * static_cast<double>(deficit)));
    for (std::size_t s = 0; s < quota; ++s) {
      const auto& nn = neighbors[i];
      const std::size_t neighbor = nn[rng.below(nn.size())];
      const double u = rng.next_double();
      append_row(result, m, split.minority[i], neighbor, u, split.minority_label, true);
    }
  }
  return result;
}

ResampleResult resample(const FeatureMatrix& m, const LabelVector& y,
                        const ResampleConfig& cfg) {
  switch (cfg.method) {
    case ResampleMethod::ros: return random_oversample(m, y, cfg.seed);
    case ResampleMethod::smote: return smote(m, y, cfg);
    case ResampleMethod::bsmote: return borderline_smote(m, y, cfg);
    case ResampleMethod::adasyn: return adasyn(m, y, cfg);
  }
  fail(ErrorCode::invalid_config, "unknown resampling method");
}

}  // namespace imbatree
