#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace homsim::rng {

// SplitMix64 finalizer; bijective on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ULL;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebULL;
  x ^= x >> 31;
  return x;
}

// Keyed counter hash: one independent word per (seed, index, dim).
// Stateless, so the sampled stream never depends on evaluation order
// or worker count.
constexpr std::uint64_t word(std::uint64_t seed, std::uint64_t index,
                             std::uint64_t dim) noexcept {
  constexpr std::uint64_t gamma = 0x9e3779b97f4a7c15ULL;
  std::uint64_t h = mix64(seed + gamma);
  h = mix64(h ^ (index + gamma));
  h = mix64(h ^ (dim + gamma));
  return h;
}

// Uniform in [0, 1) with 53 mantissa bits.
inline double uniform01(std::uint64_t seed, std::uint64_t index,
                        std::uint64_t dim) noexcept {
  return static_cast<double>(word(seed, index, dim) >> 11) * 0x1.0p-53;
}

// Standard normal via Box-Muller; consumes dims (dim, dim + 1).
inline double standard_normal(std::uint64_t seed, std::uint64_t index,
                              std::uint64_t dim) noexcept {
  const double u1 = uniform01(seed, index, dim);
  const double u2 = uniform01(seed, index, dim + 1);
  const double r = std::sqrt(-2.0 * std::log1p(-u1));  // u1 < 1, so finite
  return r * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace homsim::rng
