#include "imbatree/tree.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "imbatree/error.hpp"
#include "tree_grower.hpp"

namespace imbatree {

std::size_t Tree::leaf_index(std::span<const double> row) const {
  std::size_t i = 0;
  while (!is_leaf(i)) {
    const auto& node = nodes[i];
    i = static_cast<std::size_t>(
        row[static_cast<std::size_t>(node.feature)] <= node.threshold ? node.left
                                                                      : node.right);
  }
  return i;
}

double Tree::predict_prob(std::span<const double> row) const {
  return nodes[leaf_index(row)].prob;
}

double Tree::predict_value(std::span<const double> row) const {
  return nodes[leaf_index(row)].value;
}

std::size_t Tree::depth() const {
  if (nodes.empty()) return 0;
  std::size_t max_depth = 0;
  std::vector<std::pair<std::size_t, std::size_t>> stack{{0, 0}};
  while (!stack.empty()) {
    const auto [i, d] = stack.back();
    stack.pop_back();
    max_depth = std::max(max_depth, d);
    if (!is_leaf(i)) {
      stack.emplace_back(static_cast<std::size_t>(nodes[i].left), d + 1);
      stack.emplace_back(static_cast<std::size_t>(nodes[i].right), d + 1);
    }
  }
  return max_depth;
}

namespace detail {

std::vector<std::vector<std::uint32_t>> presort_columns(const FeatureMatrix& m) {
  std::vector<std::vector<std::uint32_t>> orders(m.n_cols);
  for (std::size_t c = 0; c < m.n_cols; ++c) {
    auto& order = orders[c];
    order.resize(m.n_rows);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::uint32_t a, std::uint32_t b) {
                       return m.at(a, c) < m.at(b, c);
                     });
  }
  return orders;
}

namespace {

struct GiniPolicy {
  const LabelVector& y;
  std::span<const double> multiplicity;
  std::size_t min_split;
  double cw0, cw1;

  void row_stats(std::size_t row, double& a, double& b) const {
    if (y[row] == 0) {
      a = multiplicity[row];
      b = 0.0;
    } else {
      a = 0.0;
      b = multiplicity[row];
    }
  }
  bool leaf_before_search(double a, double b, double n_samples) const {
    return a == 0.0 || b == 0.0 || n_samples < static_cast<double>(min_split);
  }
  bool candidate(double la, double lb, double ta, double tb, double& score) const {
    score = gini_split_score(la, lb, ta, tb, cw0, cw1);
    return true;
  }
  void fill_leaf(Tree::Node& node, double a, double b, double) const {
    node.count0 = a;
    node.count1 = b;
    const double w0 = a * cw0;
    const double w1 = b * cw1;
    node.prob = w1 / (w0 + w1);
  }
};

struct ClassWeights {
  double cw0 = 1.0, cw1 = 1.0;
};

ClassWeights class_weights(const LabelVector& y, std::span<const double> multiplicity,
                           ClassWeight scheme) {
  ClassWeights w;
  if (scheme == ClassWeight::balanced) {
    double n0 = 0.0, n1 = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
      (y[i] == 0 ? n0 : n1) += multiplicity[i];
    }
    const double n = n0 + n1;
    if (n0 > 0.0) w.cw0 = n / (2.0 * n0);
    if (n1 > 0.0) w.cw1 = n / (2.0 * n1);
  }
  return w;
}

/// Recursive random-threshold growth. Draw order per node: the feature
/// subset, then one uniform per candidate feature in ascending index order;
/// children recurse left first.
class RandomThresholdGrower {
 public:
  RandomThresholdGrower(const FeatureMatrix& m, const LabelVector& y,
                        std::span<const double> multiplicity,
                        const detail::GrowSettings& settings, const ClassWeights& cw,
                        Rng& rng)
      : m_(m), y_(y), mult_(multiplicity), settings_(settings), cw_(cw), rng_(rng) {}

  Tree grow(std::vector<std::uint32_t> rows) {
    tree_.nodes.clear();
    grow_node(rows.data(), rows.size(), 0);
    return std::move(tree_);
  }

 private:
  std::size_t grow_node(std::uint32_t* rows, std::size_t count, std::size_t depth) {
    double n0 = 0.0, n1 = 0.0;
    for (std::size_t i = 0; i < count; ++i) (y_[rows[i]] == 0 ? n0 : n1) += mult_[rows[i]];

    const std::size_t id = tree_.nodes.size();
    tree_.nodes.emplace_back();

    const bool stop =
        n0 == 0.0 || n1 == 0.0 ||
        n0 + n1 < static_cast<double>(settings_.params.min_split) ||
        (settings_.params.max_depth && depth >= *settings_.params.max_depth);
    if (!stop) {
      const auto split = find_split(rows, count, n0, n1);
      if (split.feature >= 0) {
        // Two-pass partition keeps row order deterministic.
        std::vector<std::uint32_t> left, right;
        left.reserve(count);
        for (std::size_t i = 0; i < count; ++i) {
          const bool goes_left =
              m_.at(rows[i], static_cast<std::size_t>(split.feature)) <=
              split.threshold;
          (goes_left ? left : right).push_back(rows[i]);
        }
        std::copy(left.begin(), left.end(), rows);
        std::copy(right.begin(), right.end(), rows + left.size());

        const std::size_t left_id = grow_node(rows, left.size(), depth + 1);
        const std::size_t right_id =
            grow_node(rows + left.size(), right.size(), depth + 1);
        auto& node = tree_.nodes[id];
        node.feature = split.feature;
        node.threshold = split.threshold;
        node.left = static_cast<std::int32_t>(left_id);
        node.right = static_cast<std::int32_t>(right_id);
        node.count0 = n0;
        node.count1 = n1;
        return id;
      }
    }

    auto& node = tree_.nodes[id];
    node.count0 = n0;
    node.count1 = n1;
    const double w0 = n0 * cw_.cw0;
    const double w1 = n1 * cw_.cw1;
    node.prob = w1 / (w0 + w1);
    return id;
  }

  struct Split {
    std::int32_t feature = -1;
    double threshold = 0.0;
  };

  Split find_split(const std::uint32_t* rows, std::size_t count, double n0, double n1) {
    const std::size_t f = m_.n_cols;
    std::vector<std::size_t> features;
    if (settings_.max_features > 0 && settings_.max_features < f) {
      std::vector<std::size_t> scratch(f);
      std::iota(scratch.begin(), scratch.end(), 0);
      for (std::size_t i = 0; i < settings_.max_features; ++i) {
        const std::size_t j = i + rng_.below(f - i);
        std::swap(scratch[i], scratch[j]);
      }
      features.assign(scratch.begin(),
                      scratch.begin() + static_cast<std::ptrdiff_t>(settings_.max_features));
      std::sort(features.begin(), features.end());
    } else {
      features.resize(f);
      std::iota(features.begin(), features.end(), 0);
    }

    Split best;
    double best_score = std::numeric_limits<double>::infinity();
    for (const std::size_t j : features) {
      double vmin = m_.at(rows[0], j), vmax = vmin;
      for (std::size_t i = 1; i < count; ++i) {
        const double v = m_.at(rows[i], j);
        vmin = std::min(vmin, v);
        vmax = std::max(vmax, v);
      }
      if (vmin == vmax) continue;
      const double u = rng_.next_double();
      double t = vmin + u * (vmax - vmin);
      if (!(t < vmax)) t = vmin;

      double l0 = 0.0, l1 = 0.0;
      for (std::size_t i = 0; i < count; ++i) {
        if (m_.at(rows[i], j) <= t) (y_[rows[i]] == 0 ? l0 : l1) += mult_[rows[i]];
      }
      const double score = detail::gini_split_score(l0, l1, n0, n1, cw_.cw0, cw_.cw1);
      if (score < best_score) {
        best_score = score;
        best.feature = static_cast<std::int32_t>(j);
        best.threshold = t;
      }
    }
    return best;
  }

  const FeatureMatrix& m_;
  const LabelVector& y_;
  std::span<const double> mult_;
  const detail::GrowSettings& settings_;
  const ClassWeights& cw_;
  Rng& rng_;
  Tree tree_;
};

}  // namespace

Tree grow_classification_tree(const FeatureMatrix& m, const LabelVector& y,
                              std::span<const double> multiplicity,
                              const GrowSettings& settings, Rng& rng,
                              const std::vector<std::vector<std::uint32_t>>* presorted) {
  const auto weights = class_weights(y, multiplicity, settings.params.class_weight);
  if (settings.mode == SplitMode::exact) {
    const GiniPolicy policy{y, multiplicity, settings.params.min_split, weights.cw0,
                            weights.cw1};
    LevelGrowParams level{settings.params.max_depth, settings.max_features};
    return grow_levelwise(m, multiplicity, level, policy, rng, *presorted);
  }
  std::vector<std::uint32_t> rows;
  rows.reserve(m.n_rows);
  for (std::size_t i = 0; i < m.n_rows; ++i) {
    if (multiplicity[i] > 0.0) rows.push_back(static_cast<std::uint32_t>(i));
  }
  RandomThresholdGrower grower(m, y, multiplicity, settings, weights, rng);
  return grower.grow(std::move(rows));
}

}  // namespace detail

Tree fit_tree(const FeatureMatrix& m, const LabelVector& y, const TreeParams& params,
              SplitMode mode, Rng& rng) {
  if (m.n_rows == 0 || m.n_cols == 0) {
    fail(ErrorCode::empty_input, "fit_tree needs at least one row and one feature");
  }
  if (y.size() != m.n_rows) {
    fail(ErrorCode::length_mismatch, "labels and matrix row counts differ");
  }
  class_counts(y);  // validates 0/1 labels
  const std::vector<double> ones(m.n_rows, 1.0);
  detail::GrowSettings settings{params, mode, 0};
  if (mode == SplitMode::exact) {
    const auto presorted = detail::presort_columns(m);
    return detail::grow_classification_tree(m, y, ones, settings, rng, &presorted);
  }
  return detail::grow_classification_tree(m, y, ones, settings, rng, nullptr);
}

}  // namespace imbatree
