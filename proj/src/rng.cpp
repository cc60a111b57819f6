#include "satfuzz/rng.hpp"

#include <limits>

namespace satfuzz {

std::uint64_t Rng::below(std::uint64_t bound) {
  // Rejection sampling keeps the draw unbiased.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x = next();
  while (x >= limit) x = next();
  return x % bound;
}

std::size_t Rng::geometric(double p, std::size_t cap) {
  std::size_t failures = 0;
  while (failures < cap && !chance(p)) ++failures;
  return failures;
}

}  // namespace satfuzz
