#pragma once

// Internal level-synchronous tree growth shared by the gini and boosting
// trainers. Every level walks each feature's presorted order once,
// accumulating running per-node statistics, so no per-node re-sorting
// happens. All rows of a level are partitioned in one pass afterwards.

#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <span>
#include <vector>

#include "imbatree/rng.hpp"
#include "imbatree/tree.hpp"
#include "imbatree/types.hpp"

namespace imbatree::detail {

struct LevelGrowParams {
  std::optional<std::size_t> max_depth;
  std::size_t max_features = 0;  // 0 or >= n_cols means all
};

// Policy contract:
//   void row_stats(std::size_t row, double& a, double& b) const
//       per-row accumulator contributions, already multiplicity-scaled;
//   bool leaf_before_search(double a, double b, double n_samples) const
//       stops a node before any split search (purity, min_split, ...);
//   bool candidate(double la, double lb, double ta, double tb, double& score) const
//       score (to minimize) of a split with left stats (la, lb) out of node
//       totals (ta, tb); returns false when the split is inadmissible;
//   void fill_leaf(Tree::Node& node, double a, double b, double n_samples) const.
template <class Policy>
Tree grow_levelwise(const FeatureMatrix& m, std::span<const double> multiplicity,
                    const LevelGrowParams& params, const Policy& policy, Rng& rng,
                    const std::vector<std::vector<std::uint32_t>>& presorted,
                    std::vector<std::int32_t>* leaf_of_row = nullptr) {
  const std::size_t n = m.n_rows;
  const std::size_t f = m.n_cols;
  const bool subsetting = params.max_features > 0 && params.max_features < f;

  Tree tree;
  struct BuildNode {
    std::int32_t id;
    double a, b, n_samples;
  };

  std::vector<std::int32_t> node_of_row(n, -1);
  double root_a = 0.0, root_b = 0.0, root_n = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (multiplicity[i] <= 0.0) continue;
    node_of_row[i] = 0;
    double a, b;
    policy.row_stats(i, a, b);
    root_a += a;
    root_b += b;
    root_n += multiplicity[i];
  }
  tree.nodes.emplace_back();
  std::vector<BuildNode> active{{0, root_a, root_b, root_n}};
  if (leaf_of_row) leaf_of_row->assign(n, -1);

  std::vector<std::int32_t> ordinal_of_node;
  std::vector<std::size_t> feature_scratch(f);
  std::vector<char> in_subset;

  std::size_t depth = 0;
  while (!active.empty()) {
    const bool depth_capped = params.max_depth && depth >= *params.max_depth;

    // Pass 1: pick the nodes that will search for a split this level.
    std::vector<BuildNode> searching;
    std::vector<char> settled_node(tree.nodes.size(), 0);
    for (const auto& node : active) {
      if (depth_capped || policy.leaf_before_search(node.a, node.b, node.n_samples)) {
        policy.fill_leaf(tree.nodes[node.id], node.a, node.b, node.n_samples);
        settled_node[node.id] = 1;
      } else {
        searching.push_back(node);
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      const std::int32_t nid = node_of_row[i];
      if (nid >= 0 && settled_node[nid]) {
        if (leaf_of_row) (*leaf_of_row)[i] = nid;
        node_of_row[i] = -1;
      }
    }
    if (searching.empty()) break;

    const std::size_t s_count = searching.size();
    ordinal_of_node.assign(tree.nodes.size(), -1);
    for (std::size_t s = 0; s < s_count; ++s) {
      ordinal_of_node[searching[s].id] = static_cast<std::int32_t>(s);
    }

    // Feature subsets, drawn per searching node in node-id order.
    if (subsetting) {
      in_subset.assign(s_count * f, 0);
      for (std::size_t s = 0; s < s_count; ++s) {
        std::iota(feature_scratch.begin(), feature_scratch.end(), 0);
        for (std::size_t i = 0; i < params.max_features; ++i) {
          const std::size_t j = i + rng.below(f - i);
          std::swap(feature_scratch[i], feature_scratch[j]);
          in_subset[s * f + feature_scratch[i]] = 1;
        }
      }
    }

    // Pass 2: scan every feature's sorted order once, evaluating candidate
    // thresholds at each value change within each node.
    constexpr double kInf = std::numeric_limits<double>::infinity();
    std::vector<double> best_score(s_count, kInf);
    std::vector<std::int32_t> best_feature(s_count, -1);
    std::vector<double> best_threshold(s_count, 0.0);
    std::vector<double> left_a(s_count), left_b(s_count), prev_value(s_count);
    std::vector<char> has_prev(s_count);

    for (std::size_t j = 0; j < f; ++j) {
      std::fill(left_a.begin(), left_a.end(), 0.0);
      std::fill(left_b.begin(), left_b.end(), 0.0);
      std::fill(has_prev.begin(), has_prev.end(), 0);
      for (const std::uint32_t idx : presorted[j]) {
        const std::int32_t nid = node_of_row[idx];
        if (nid < 0) continue;
        const std::int32_t s = ordinal_of_node[nid];
        if (s < 0) continue;
        if (subsetting && !in_subset[static_cast<std::size_t>(s) * f + j]) continue;

        const double v = m.at(idx, j);
        if (has_prev[s] && v > prev_value[s]) {
          double t = prev_value[s] + (v - prev_value[s]) / 2.0;
          if (!(t < v)) t = prev_value[s];  // adjacent floats
          double score;
          if (policy.candidate(left_a[s], left_b[s], searching[s].a, searching[s].b,
                               score) &&
              score < best_score[s]) {
            best_score[s] = score;
            best_feature[s] = static_cast<std::int32_t>(j);
            best_threshold[s] = t;
          }
        }
        double a, b;
        policy.row_stats(idx, a, b);
        left_a[s] += a;
        left_b[s] += b;
        prev_value[s] = v;
        has_prev[s] = 1;
      }
    }

    // Pass 3: realize splits, partition rows, seed the next level.
    std::vector<BuildNode> next;
    std::vector<char> splits(s_count, 0);
    for (std::size_t s = 0; s < s_count; ++s) {
      const auto& node = searching[s];
      if (best_feature[s] < 0) {
        policy.fill_leaf(tree.nodes[node.id], node.a, node.b, node.n_samples);
        continue;
      }
      splits[s] = 1;
      const auto left_id = static_cast<std::int32_t>(tree.nodes.size());
      tree.nodes.emplace_back();
      const auto right_id = static_cast<std::int32_t>(tree.nodes.size());
      tree.nodes.emplace_back();
      auto& parent = tree.nodes[node.id];
      parent.feature = best_feature[s];
      parent.threshold = best_threshold[s];
      parent.left = left_id;
      parent.right = right_id;
      next.push_back({left_id, 0.0, 0.0, 0.0});
      next.push_back({right_id, 0.0, 0.0, 0.0});
    }

    std::vector<std::int32_t> next_slot(tree.nodes.size(), -1);
    for (std::size_t i = 0; i < next.size(); ++i) next_slot[next[i].id] = static_cast<std::int32_t>(i);

    for (std::size_t i = 0; i < n; ++i) {
      const std::int32_t nid = node_of_row[i];
      if (nid < 0) continue;
      const std::int32_t s = ordinal_of_node[nid];
      if (s < 0) continue;
      const auto& parent = tree.nodes[nid];
      if (!splits[s]) {
        if (leaf_of_row) (*leaf_of_row)[i] = nid;
        node_of_row[i] = -1;
        continue;
      }
      const std::int32_t child =
          m.at(i, static_cast<std::size_t>(parent.feature)) <= parent.threshold
              ? parent.left
              : parent.right;
      node_of_row[i] = child;
      auto& bn = next[static_cast<std::size_t>(next_slot[child])];
      double a, b;
      policy.row_stats(i, a, b);
      bn.a += a;
      bn.b += b;
      bn.n_samples += multiplicity[i];
    }

    active = std::move(next);
    ++depth;
  }
  return tree;
}

/// Weighted Gini split score (lower is better). Raw counts are occurrence
/// sums; class weights are applied here so equal-count splits score
/// bit-identically no matter the accumulation path.
inline double gini_split_score(double lraw0, double lraw1, double traw0, double traw1,
                               double cw0, double cw1) {
  const double lw0 = lraw0 * cw0;
  const double lw1 = lraw1 * cw1;
  const double rw0 = (traw0 - lraw0) * cw0;
  const double rw1 = (traw1 - lraw1) * cw1;
  const double wl = lw0 + lw1;
  const double wr = rw0 + rw1;
  return (wl - (lw0 * lw0 + lw1 * lw1) / wl) + (wr - (rw0 * rw0 + rw1 * rw1) / wr);
}

}  // namespace imbatree::detail
