#pragma once

#include <cstdint>
#include <random>

namespace finram::detail {

// Seeded generator with distribution code written out by hand so that
// sample streams do not depend on the standard library's distributions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform in [0, 1).
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Uniform in [-1, 1).
  double uniform_signed() { return 2.0 * uniform01() - 1.0; }

  // Uniform in [0, n); n > 0.
  std::uint64_t below(std::uint64_t n) {
    std::uint64_t const limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t       x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % n;
  }

  int between(int lo, int hi) {  // inclusive
    return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace finram::detail
