#pragma once

#include <cmath>
#include <cstdint>

namespace anderlab {

inline constexpr std::uint64_t kGolden64 = 0x9e3779b97f4a7c15ULL;

// SplitMix64 finalizer; bijective mixing of a 64-bit word.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Order-sensitive combination of two keys into one stream key.
constexpr std::uint64_t derive_key(std::uint64_t a, std::uint64_t b) {
  return mix64(a ^ mix64(b + kGolden64));
}

// Counter-based generator: the i-th output is a pure function of
// (key, i), so independently keyed streams can be consumed in any
// order (or in parallel) with identical results.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t key) : key_(key) {}
  CounterRng(std::uint64_t master, std::uint64_t stream)
      : key_(derive_key(master, stream)) {}

  std::uint64_t next_u64() { return mix64(key_ + (++ctr_) * kGolden64); }

  // Uniform on [0,1) with 53 random bits.
  double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform on (0,1]; safe as a log() argument.
  double next_unit_open() {
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
  }

  // Standard normal via Box-Muller (two words per draw).
  double next_normal() {
    const double u1 = next_unit_open();
    const double u2 = next_unit();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586477 * u2);
  }

 private:
  std::uint64_t key_;
  std::uint64_t ctr_ = 0;
};

}  // namespace anderlab
