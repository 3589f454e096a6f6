#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "imbatree/types.hpp"

namespace imbatree {

enum class ResampleMethod { ros, smote, bsmote, adasyn };

ResampleMethod resample_method_from_string(const std::string& name);
std::string to_string(ResampleMethod method);

struct ResampleConfig {
  ResampleMethod method = ResampleMethod::ros;
  std::size_t k_neighbors = 5;   // SMOTE family
  std::size_t m_neighbors = 10;  // Borderline danger test
  std::uint64_t seed = 0;
};

/// One record per synthetic row, in generation order. ROS rows copy `parent`
/// and have neighbor = -1, u = 0. SMOTE-family rows satisfy
/// synthetic = x_parent + u * (x_neighbor - x_parent) component-wise.
struct SyntheticRecord {
  std::size_t parent = 0;
  std::ptrdiff_t neighbor = -1;
  double u = 0.0;
};

struct ResampleResult {
  FeatureMatrix features;     // originals first, synthetics appended
  LabelVector labels;
  std::size_t synthetic_count = 0;
  std::vector<SyntheticRecord> provenance;
};

/// Duplicates minority rows uniformly at random (seeded) until class parity.
ResampleResult random_oversample(const FeatureMatrix& m, const LabelVector& y,
                                 std::uint64_t seed);

/// Canonical SMOTE: parents round-robin over minority rows; neighbors drawn
/// uniformly among each parent's k nearest minority rows.
ResampleResult smote(const FeatureMatrix& m, const LabelVector& y,
                     const ResampleConfig& cfg);

/// Borderline-SMOTE-1: parents restricted to "danger" minority rows, i.e.
/// rows whose m nearest neighbors over both classes contain at least m/2 but
/// fewer than m majority rows.
ResampleResult borderline_smote(const FeatureMatrix& m, const LabelVector& y,
                                const ResampleConfig& cfg);

/// ADASYN: per-row quotas proportional to the majority share of each minority
/// row's k-neighborhood.
ResampleResult adasyn(const FeatureMatrix& m, const LabelVector& y,
                      const ResampleConfig& cfg);

/// Dispatch on cfg.method.
ResampleResult resample(const FeatureMatrix& m, const LabelVector& y,
                        const ResampleConfig& cfg);

}  // namespace imbatree
