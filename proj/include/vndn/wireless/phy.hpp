#pragma once

#include "vndn/common.hpp"

#include <chrono>
#include <string>

namespace vndn::wireless {

/**
 * Link-layer timing parameters.
 *
 * Defaults: 802.11ax HE MCS 11, 20 MHz, one spatial stream, 800 ns GI for
 * unicast; the legacy 6 Mb/s OFDM rate for group-addressed frames.
 */
struct PhyProfile
{
  double unicast_rate = 143.4e6; ///< bit/s
  double basic_rate = 6e6;       ///< bit/s, used by broadcast frames
  Time per_frame_overhead = std::chrono::microseconds(60);
  Time ack_overhead = std::chrono::microseconds(50);
  unsigned retry_limit = 7;
  double range = 80.0; ///< meters
  /// MAC header + LLC + FCS added to every NDN packet.
  std::size_t header_bytes = 38;
  /// Independent loss probability of each reception attempt. Unicast retries; broadcast does not.
  double loss_probability = 0.0;
  /// A frame that would wait longer than this for the medium is dropped at enqueue.
  Time max_queue_delay = std::chrono::milliseconds(500);

  /// Throws ConfigError naming the offending field.
  void
  validate() const
  {
    if (!(basic_rate > 0))
      throw ConfigError("phy.basic_rate: must be > 0");
    if (!(unicast_rate > basic_rate))
      throw ConfigError("phy.unicast_rate: must exceed phy.basic_rate");
    if (per_frame_overhead < Time::zero())
      throw ConfigError("phy.per_frame_overhead_us: must be >= 0");
    if (ack_overhead < Time::zero())
      throw ConfigError("phy.ack_overhead_us: must be >= 0");
    if (!(range > 0))
      throw ConfigError("phy.range_m: must be > 0");
    if (!(loss_probability >= 0 && loss_probability < 1))
      throw ConfigError("phy.loss_probability: must be in [0, 1)");
    if (max_queue_delay < Time::zero())
      throw ConfigError("phy.max_queue_delay_ms: must be >= 0");
  }
};

enum class FrameKind {
  BROADCAST,
  UNICAST,
};

/// per_frame_overhead + size*8/rate, plus ack_overhead for unicast.
inline Time
airtime(std::size_t size_bytes, double rate, const PhyProfile& profile, FrameKind kind)
{
  if (!(rate > 0))
    throw std::invalid_argument("airtime: rate must be > 0");
  double tx_seconds = static_cast<double>(size_bytes) * 8.0 / rate;
  Time t = profile.per_frame_overhead + from_seconds(tx_seconds);
  if (kind == FrameKind::UNICAST)
    t += profile.ack_overhead;
  return t;
}

inline Time
broadcast_airtime(std::size_t size_bytes, const PhyProfile& profile)
{
  return airtime(size_bytes, profile.basic_rate, profile, FrameKind::BROADCAST);
}

/// Duration of a single unicast attempt, ACK included.
inline Time
unicast_attempt_airtime(std::size_t size_bytes, const PhyProfile& profile)
{
  return airtime(size_bytes, profile.unicast_rate, profile, FrameKind::UNICAST);
}

} // namespace vndn::wireless
