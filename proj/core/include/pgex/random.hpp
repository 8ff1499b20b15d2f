#pragma once

#include <cstdint>
#include <random>

namespace pgex {

/// Version tag written into serialized instances. Bump whenever the sampling
/// algorithms below change.
inline constexpr int kGeneratorVersion = 1;

/// Reproducible sampler for instance generation.
///
/// Algorithm (version 1):
///   - raw stream: std::mt19937_64 seeded with the 64-bit seed (its output
///     sequence is fixed by the C++ standard);
///   - uniform [0, 1): top 53 bits of one draw times 2^-53;
///   - standard normal: Box-Muller on (1 - u1, u2), both outputs used in order;
///   - uniform index in [0, n): rejection sampling on the raw 64-bit draw.
/// The library distributions in <random> are implementation-defined, so none
/// of them are used.
class InstanceRng {
 public:
  explicit InstanceRng(std::uint64_t seed) : engine_(seed) {}

  double uniform();
  double normal();
  std::uint64_t index(std::uint64_t n);

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

/// Independent per-instance seed derived from (base_seed, index) via splitmix64.
std::uint64_t derive_seed(std::uint64_t base_seed, std::uint64_t index) noexcept;

}  // namespace pgex
