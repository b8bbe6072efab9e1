#pragma once

#include <chrono>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace vndn {

/// Simulated time. Integer nanoseconds keep event ordering exact and runs bit-reproducible.
using Time = std::chrono::nanoseconds;

using NodeId = std::uint32_t;
using FaceId = std::uint32_t;

inline constexpr FaceId INVALID_FACE = 0;

inline Time
from_seconds(double s)
{
  return Time(std::llround(s * 1e9));
}

inline constexpr double
to_seconds(Time t)
{
  return static_cast<double>(t.count()) * 1e-9;
}

/// Raised for invalid user-supplied configuration (scenario files, CLI overrides).
class ConfigError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

} // namespace vndn
