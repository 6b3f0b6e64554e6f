#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <initializer_list>
#include <string_view>

namespace orbitrip {

// Deterministic seeding utilities. Every random draw in the library is keyed
// by a 64-bit value derived from (seed, tag, parts...), so independent draws
// produce the same output no matter which thread or order executes them.

inline constexpr std::uint64_t kGoldenGamma = 0x9e3779b97f4a7c15ULL;

inline std::uint64_t mix_bits(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xbf58476d1ce4e5b9ULL;
  z ^= z >> 27;
  z *= 0x94d049bb133111ebULL;
  z ^= z >> 31;
  return z;
}

inline std::uint64_t combine_keys(std::uint64_t a, std::uint64_t b) {
  return mix_bits(a + kGoldenGamma + b);
}

inline std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline std::uint64_t derive_key(std::uint64_t seed, std::string_view tag) {
  return combine_keys(seed, fnv1a64(tag));
}

inline std::uint64_t derive_key(std::uint64_t seed, std::string_view tag,
                                std::initializer_list<std::uint64_t> parts) {
  std::uint64_t k = derive_key(seed, tag);
  for (std::uint64_t p : parts) k = combine_keys(k, p);
  return k;
}

/// Counter-mode generator: output i of a stream is mix_bits(key + i*gamma),
/// i.e. the SplitMix64 sequence started at `key`. Streams with distinct keys
/// are independent for Monte-Carlo purposes and carry no hidden global state.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t key) : state_(key) {}

  std::uint64_t next_u64() {
    state_ += kGoldenGamma;
    return mix_bits(state_);
  }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform01() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Uniform on {0, ..., n-1}, unbiased via rejection.
  std::int64_t below(std::int64_t n) {
    const std::uint64_t un = static_cast<std::uint64_t>(n);
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % un;
    std::uint64_t v;
    do {
      v = next_u64();
    } while (v >= limit);
    return static_cast<std::int64_t>(v % un);
  }

  /// Standard normal via Box-Muller; the second value of a pair is cached.
  double gaussian() {
    if (have_cached_) {
      have_cached_ = false;
      return cached_;
    }
    const double u1 = 1.0 - uniform01();  // in (0, 1], keeps log finite
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * kPi * u2;
    cached_ = r * std::sin(a);
    have_cached_ = true;
    return r * std::cos(a);
  }

  /// Uniform on the complex unit circle.
  std::complex<double> unit_circle() {
    const double a = 2.0 * kPi * uniform01();
    return {std::cos(a), std::sin(a)};
  }

 private:
  static constexpr double kPi = 3.14159265358979323846;
  std::uint64_t state_;
  double cached_ = 0.0;
  bool have_cached_ = false;
};

}  // namespace orbitrip
