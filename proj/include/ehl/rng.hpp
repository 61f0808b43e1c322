#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>

namespace ehl {

// Deterministic 64-bit shift/multiply generator (splitmix64 constants).
// Embedded here so seeded runs are byte-reproducible across platforms; the
// platform std::mt19937 distributions are deliberately not used for anything
// that lands in an output file.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1), 53-bit resolution.
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform in (0, 1]; never zero, safe under log.
  double next_double_pos() {
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
  }

  // Standard normal via Box-Muller. Two fresh uniforms per call, no cached
  // spare, so the draw sequence is a pure function of the seed.
  double next_normal() {
    const double u = next_double_pos();
    const double v = next_double();
    return std::sqrt(-2.0 * std::log(u)) * std::cos(2.0 * std::numbers::pi * v);
  }

  std::complex<double> next_complex_normal() {
    const double re = next_normal();
    const double im = next_normal();
    return {re, im};
  }

 private:
  std::uint64_t state_;
};

}  // namespace ehl
