#include "imbatree/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "imbatree/error.hpp"
#include "imbatree/rng.hpp"

namespace imbatree {

MetricSet confusion_metrics(const LabelVector& y_true, const LabelVector& y_pred) {
  if (y_true.size() != y_pred.size() || y_true.empty()) {
    fail(ErrorCode::length_mismatch, "confusion_metrics needs equal non-empty label vectors");
  }
  double tp = 0, fp = 0, tn = 0, fn = 0;
  for (std::size_t i = 0; i < y_true.size(); ++i) {
    const int t = y_true[i];
    const int p = y_pred[i];
    if ((t != 0 && t != 1) || (p != 0 && p != 1)) {
      fail(ErrorCode::non_binary_labels, "confusion_metrics labels must be 0/1");
    }
    if (t == 1 && p == 1) ++tp;
    else if (t == 0 && p == 1) ++fp;
    else if (t == 1 && p == 0) ++fn;
    else ++tn;
  }
  MetricSet m;
  m.accuracy = (tp + tn) / static_cast<double>(y_true.size());
  m.precision = (tp + fp) > 0 ? tp / (tp + fp) : 0.0;
  m.recall = (tp + fn) > 0 ? tp / (tp + fn) : 0.0;
  m.f1 = (m.precision + m.recall) > 0
             ? 2.0 * m.precision * m.recall / (m.precision + m.recall)
             : 0.0;
  return m;
}

double roc_auc(const LabelVector& y_true, std::span<const double> scores) {
  if (y_true.size() != scores.size() || y_true.empty()) {
    fail(ErrorCode::length_mismatch, "roc_auc needs equal non-empty vectors");
  }
  const auto counts = class_counts(y_true);
  if (counts[0] == 0 || counts[1] == 0) {
    fail(ErrorCode::single_class, "roc_auc needs both classes present");
  }

  // Average ranks over ties, then the Mann-Whitney statistic. Equivalent to
  // the pairwise count with 0.5 credit for ties.
  const std::size_t n = y_true.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return scores[a] < scores[b];
  });

  double positive_rank_sum = 0.0;
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j < n && scores[order[j]] == scores[order[i]]) ++j;
    // 1-based ranks i+1 .. j averaged
    const double avg_rank = 0.5 * static_cast<double>(i + 1 + j);
    for (std::size_t t = i; t < j; ++t) {
      if (y_true[order[t]] == 1) positive_rank_sum += avg_rank;
    }
    i = j;
  }
  const double n_pos = static_cast<double>(counts[1]);
  const double n_neg = static_cast<double>(counts[0]);
  const double u = positive_rank_sum - n_pos * (n_pos + 1.0) / 2.0;
  return u / (n_pos * n_neg);
}

MetricSet error_metrics(const LabelVector& y_true, std::span<const double> p) {
  if (y_true.size() != p.size() || y_true.empty()) {
    fail(ErrorCode::length_mismatch, "error_metrics needs equal non-empty vectors");
  }
  const double n = static_cast<double>(y_true.size());
  double abs_sum = 0.0, sq_sum = 0.0, label_sum = 0.0;
  for (std::size_t i = 0; i < y_true.size(); ++i) {
    const double d = static_cast<double>(y_true[i]) - p[i];
    abs_sum += std::abs(d);
    sq_sum += d * d;
    label_sum += static_cast<double>(y_true[i]);
  }
  const double y_mean = label_sum / n;
  double sst = 0.0;
  for (int t : y_true) {
    const double d = static_cast<double>(t) - y_mean;
    sst += d * d;
  }
  if (sst == 0.0) {
    fail(ErrorCode::constant_truth, "R^2 is undefined when all labels are equal");
  }
  MetricSet m;
  m.mae = abs_sum / n;
  m.mse = sq_sum / n;
  m.rmse = std::sqrt(m.mse);
  m.r2 = 1.0 - sq_sum / sst;
  return m;
}

std::vector<std::size_t> FoldPlan::train_indices(std::size_t fold) const {
  std::vector<std::size_t> out;
  for (std::size_t f = 0; f < test_folds.size(); ++f) {
    if (f == fold) continue;
    out.insert(out.end(), test_folds[f].begin(), test_folds[f].end());
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::size_t FoldPlan::total_rows() const {
  std::size_t total = 0;
  for (const auto& fold : test_folds) total += fold.size();
  return total;
}

namespace {

void seeded_shuffle(std::vector<std::size_t>& values, Rng& rng) {
  for (std::size_t i = values.size(); i > 1; --i) {
    const std::size_t j = rng.below(i);
    std::swap(values[i - 1], values[j]);
  }
}

}  // namespace

FoldPlan stratified_kfold(const LabelVector& y, std::size_t k, std::uint64_t seed) {
  if (k < 2) fail(ErrorCode::invalid_config, "k-fold needs k >= 2");
  const auto counts = class_counts(y);
  if (counts[0] < k || counts[1] < k) {
    fail(ErrorCode::too_few_per_class,
         "stratified " + std::to_string(k) + "-fold needs >= " + std::to_string(k) +
             " rows per class");
  }

  FoldPlan plan;
  plan.k = k;
  plan.seed = seed;
  plan.test_folds.assign(k, {});

  Rng rng = Rng(seed).child("stratified-kfold");
  for (int cls : {0, 1}) {
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < y.size(); ++i) {
      if (y[i] == cls) members.push_back(i);
    }
    seeded_shuffle(members, rng);
    for (std::size_t i = 0; i < members.size(); ++i) {
      plan.test_folds[i % k].push_back(members[i]);
    }
  }
  for (auto& fold : plan.test_folds) std::sort(fold.begin(), fold.end());
  return plan;
}

HoldoutSplit stratified_holdout(const LabelVector& y, double test_fraction,
                                std::uint64_t seed) {
  if (!(test_fraction > 0.0 && test_fraction < 1.0)) {
    fail(ErrorCode::invalid_config, "test fraction must be in (0, 1)");
  }
  const auto counts = class_counts(y);
  if (counts[0] < 2 || counts[1] < 2) {
    fail(ErrorCode::too_few_per_class, "holdout needs >= 2 rows per class");
  }

  HoldoutSplit split;
  Rng rng = Rng(seed).child("stratified-holdout");
  for (int cls : {0, 1}) {
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < y.size(); ++i) {
      if (y[i] == cls) members.push_back(i);
    }
    seeded_shuffle(members, rng);
    auto n_test = static_cast<std::size_t>(
        std::llround(test_fraction * static_cast<double>(members.size())));
    n_test = std::clamp<std::size_t>(n_test, 1, members.size() - 1);
    for (std::size_t i = 0; i < members.size(); ++i) {
      (i < n_test ? split.test : split.train).push_back(members[i]);
    }
  }
  std::sort(split.train.begin(), split.train.end());
  std::sort(split.test.begin(), split.test.end());
  return split;
}

}  // namespace imbatree
