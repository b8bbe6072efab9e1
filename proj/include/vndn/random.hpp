#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string_view>

namespace vndn {

/**
 * Portable random helpers.
 *
 * std::mt19937_64 output is fully specified by the standard, but the
 * <random> distributions are not, so all variates are derived here from raw
 * engine output to keep runs bit-identical across standard libraries.
 */
using Engine = std::mt19937_64;

inline constexpr std::uint64_t
splitmix64(std::uint64_t x) noexcept
{
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline constexpr std::uint64_t
fnv1a(std::string_view s) noexcept
{
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

/// Independent engine for a named stream ("traffic", "app-rates", ...) of a run seed.
inline Engine
make_stream(std::uint64_t seed, std::string_view stream)
{
  return Engine(splitmix64(splitmix64(seed) ^ fnv1a(stream)));
}

/// Uniform in [0, 1) with 53 random bits.
inline double
uniform01(Engine& eng)
{
  return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

inline double
uniform(Engine& eng, double lo, double hi)
{
  return lo + (hi - lo) * uniform01(eng);
}

/// Unbiased integer in [0, n). n must be > 0.
inline std::uint64_t
uniform_below(Engine& eng, std::uint64_t n)
{
  std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
  std::uint64_t x;
  do {
    x = eng();
  } while (x >= limit);
  return x % n;
}

inline bool
bernoulli(Engine& eng, double p)
{
  return uniform01(eng) < p;
}

/// Triangular variate on [lo, hi] with the given mode, by inverse CDF.
inline double
triangular(Engine& eng, double lo, double mode, double hi)
{
  double u = uniform01(eng);
  if (hi <= lo)
    return lo;
  double split = (mode - lo) / (hi - lo);
  if (u < split)
    return lo + std::sqrt(u * (hi - lo) * (mode - lo));
  return hi - std::sqrt((1 - u) * (hi - lo) * (hi - mode));
}

} // namespace vndn
