#pragma once

#include <cstdint>
#include <string_view>

namespace imbatree {

/// Hash used to key child RNG streams by stage name.
std::uint64_t fnv1a64(std::string_view text);

/// Deterministic, portable 64-bit generator (xoshiro256**), seeded through
/// SplitMix64. All distributions are implemented here rather than with
/// <random> adapters so that a fixed seed yields bit-identical draws on every
/// platform and standard library.
///
/// Stream-split convention: every pipeline stage derives its own child stream
/// with child("stage-name") (optionally plus an index, e.g. one stream per
/// tree). Children are keyed by the parent's root seed and the stage name
/// only, so they are independent of how many values the parent has consumed.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t next_u64();

  /// Uniform in [0, 1) with 53-bit resolution.
  double next_double();

  /// Standard normal via Box-Muller (two uniforms per draw).
  double next_normal();

  /// Uniform in [0, bound), unbiased (rejection sampling). bound must be > 0.
  std::uint64_t below(std::uint64_t bound);

  Rng child(std::string_view stage) const;
  Rng child(std::string_view stage, std::uint64_t index) const;

  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_;
  std::uint64_t s_[4];
};

}  // namespace imbatree
