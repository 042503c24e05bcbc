#pragma once

// Counter-based pseudo-random streams. A stream is keyed by (seed, stream id);
// consumers that agree on the key draw identical values regardless of thread
// scheduling, which is what makes parallel experiment runs reproducible.

#include <cstdint>
#include <cmath>
#include <complex>

namespace lcross {

namespace detail {

// SplitMix64 finalizer; full-avalanche 64-bit mixer.
inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace detail

// Derives a child seed from a parent seed and a counter (e.g. pair index).
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t counter) {
  return detail::mix64(detail::mix64(seed + 0x9e3779b97f4a7c15ULL) ^
                       (counter + 0xd1b54a32d192ed03ULL));
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0)
      : state_(derive_seed(seed, stream)), cache_valid_(false), cache_(0.0) {}

  std::uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ULL;
    return detail::mix64(state_);
  }

  // Uniform on (0, 1]; never returns 0, so log() is safe.
  double uniform() {
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
  }

  // Uniform on [0, n). Modulo bias is < 2^-53 for the small n used here.
  std::uint64_t uniform_below(std::uint64_t n) { return next_u64() % n; }

  // Standard normal via Box-Muller; the second value of each pair is cached.
  double normal() {
    if (cache_valid_) {
      cache_valid_ = false;
      return cache_;
    }
    const double u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 6.283185307179586476925286766559 * u2;
    cache_ = r * std::sin(a);
    cache_valid_ = true;
    return r * std::cos(a);
  }

  // Complex normal with E|z|^2 = 1 (real and imaginary parts N(0, 1/2)).
  std::complex<double> complex_normal() {
    const double s = 0.70710678118654752440084436210485;  // 1/sqrt(2)
    return {s * normal(), s * normal()};
  }

 private:
  std::uint64_t state_;
  bool cache_valid_;
  double cache_;
};

}  // namespace lcross
