#include "pgex/random.hpp"

#include <cmath>
#include <numbers>

#include "pgex/errors.hpp"

namespace pgex {

double InstanceRng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double InstanceRng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = 1.0 - uniform();  // (0, 1]
  const double u2 = uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

std::uint64_t InstanceRng::index(std::uint64_t n) {
  if (n == 0) throw ArgumentError("InstanceRng::index: empty range");
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t draw;
  do {
    draw = engine_();
  } while (draw >= limit);
  return draw % n;
}

std::uint64_t derive_seed(std::uint64_t base_seed, std::uint64_t index) noexcept {
  std::uint64_t z = base_seed + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace pgex
