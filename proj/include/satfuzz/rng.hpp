#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

namespace satfuzz {

// mt19937_64 with draw helpers built on raw output bits, so sequences are
// identical across standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform in [0, bound). bound must be > 0.
  std::uint64_t below(std::uint64_t bound);

  // Uniform in [0, 1) with 53 bits of precision.
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  bool chance(double p) { return unit() < p; }

  // Number of failures before the first success, success probability p.
  std::size_t geometric(double p, std::size_t cap);

 private:
  std::mt19937_64 engine_;
};

}  // namespace satfuzz
