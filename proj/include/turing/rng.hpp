#pragma once

#include <cstdint>

namespace turing {

/// SplitMix64 (Steele, Lea & Flood). The full update is
///
///   state += 0x9E3779B97F4A7C15
///   z = state
///   z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
///   z = (z ^ (z >> 27)) * 0x94D049BB133111EB
///   return z ^ (z >> 31)
///
/// and uniform doubles in [0, 1) are (next() >> 11) * 2^-53. Both are fixed so
/// that initial perturbations can be reproduced in any language.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next();
  double uniform();

 private:
  std::uint64_t state_;
};

}  // namespace turing
