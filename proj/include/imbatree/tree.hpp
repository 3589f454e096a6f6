#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "imbatree/rng.hpp"
#include "imbatree/types.hpp"

namespace imbatree {

enum class ClassWeight { none, balanced };
enum class SplitMode { exact, random_threshold };

struct TreeParams {
  std::optional<std::size_t> max_depth;  // nullopt = unlimited
  std::size_t min_split = 2;
  ClassWeight class_weight = ClassWeight::none;
};

/// Flat binary tree; root at index 0, children referenced by index. The same
/// node layout carries classification leaves (class counts + probability) and
/// regression leaves (value).
struct Tree {
  struct Node {
    std::int32_t feature = -1;  // -1 marks a leaf
    double threshold = 0.0;     // rows with x[feature] <= threshold go left
    std::int32_t left = -1;
    std::int32_t right = -1;
    double count0 = 0.0;  // training occurrences per class at this node
    double count1 = 0.0;
    double prob = 0.0;   // class-1 share (class-weight adjusted)
    double value = 0.0;  // regression output
  };
  std::vector<Node> nodes;

  bool is_leaf(std::size_t i) const { return nodes[i].feature < 0; }
  std::size_t leaf_index(std::span<const double> row) const;
  double predict_prob(std::span<const double> row) const;
  double predict_value(std::span<const double> row) const;
  std::size_t depth() const;
};

/// Greedy CART: exact mode scans midpoints of sorted unique values per
/// feature; random_threshold mode draws one uniform threshold per feature in
/// [min, max). Splits minimize weighted Gini impurity; ties break toward the
/// lowest feature index, then the lowest threshold.
Tree fit_tree(const FeatureMatrix& m, const LabelVector& y, const TreeParams& params,
              SplitMode mode, Rng& rng);

namespace detail {

/// Per-column row orders sorted by value (ties by row index). Computed once
/// per training matrix and shared by every exact-split tree fit on it.
std::vector<std::vector<std::uint32_t>> presort_columns(const FeatureMatrix& m);

struct GrowSettings {
  TreeParams params;
  SplitMode mode = SplitMode::exact;
  std::size_t max_features = 0;  // 0 = use all features
};

/// Grows one classification tree over the rows with multiplicity > 0;
/// multiplicity carries bootstrap occurrence counts. `presorted` is required
/// in exact mode.
Tree grow_classification_tree(const FeatureMatrix& m, const LabelVector& y,
                              std::span<const double> multiplicity,
                              const GrowSettings& settings, Rng& rng,
                              const std::vector<std::vector<std::uint32_t>>* presorted);

}  // namespace detail
}  // namespace imbatree
