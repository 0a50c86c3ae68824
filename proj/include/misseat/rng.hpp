#pragma once

#include <cstdint>

namespace misseat {

/// SplitMix64 with counter-derived streams.
///
/// Stream derivation: state0 = mix(seed + 0x9E3779B97F4A7C15) ^
/// mix(stream + 0x517CC1B727220A95), where mix is the SplitMix64 output
/// function. Distinct (seed, stream) pairs give decorrelated sequences,
/// so trial i of a simulation can be generated independently of trial
/// i-1 and a run can be partitioned across workers without changing any
/// draw. Pure 64-bit integer arithmetic; identical on every platform.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  SplitMix64(std::uint64_t seed, std::uint64_t stream);

  std::uint64_t next();

  /// Exact-uniform draw from [0, bound), bound >= 1. Debiased
  /// multiply-shift (Lemire); the retry on the biased low region keeps
  /// every residue exactly equally likely.
  std::uint64_t next_below(std::uint64_t bound);

 private:
  std::uint64_t state_;
};

}  // namespace misseat
