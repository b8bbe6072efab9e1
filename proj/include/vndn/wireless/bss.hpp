#pragma once

#include "vndn/ndn/mac.hpp"
#include "vndn/ndn/packet.hpp"
#include "vndn/random.hpp"
#include "vndn/wireless/phy.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <span>
#include <vector>

namespace vndn::wireless {

using ndn::MacAddress;

struct Frame
{
  MacAddress src;
  MacAddress dst;
  ndn::Packet payload;
  std::size_t size = 0;
  Time airtime{0}; ///< one transmission attempt

  bool
  is_broadcast() const noexcept
  {
    return dst.is_broadcast();
  }
};

inline Frame
make_frame(MacAddress src, MacAddress dst, ndn::Packet payload, const PhyProfile& profile)
{
  Frame f{src, dst, std::move(payload), 0, Time{0}};
  f.size = ndn::encoded_size(f.payload) + profile.header_bytes;
  f.airtime = f.is_broadcast() ? broadcast_airtime(f.size, profile)
                               : unicast_attempt_airtime(f.size, profile);
  return f;
}

struct Delivery
{
  NodeId receiver = 0;
  MacAddress receiver_mac;
  Time time{0};
};

enum class TransmitOutcome {
  DELIVERED,     ///< at least one receiver got the frame
  NO_RECEIVER,   ///< broadcast with nobody listening, or every copy lost
  LINK_LOSS,     ///< unicast exhausted its retries
  QUEUE_DROP,    ///< medium backlog exceeded max_queue_delay
  NOT_ASSOCIATED ///< sender is not a member of the BSS
};

struct TransmitResult
{
  TransmitOutcome outcome = TransmitOutcome::NO_RECEIVER;
  Time start{0};
  Time end{0};
  Time airtime_charged{0};
  unsigned attempts = 0;
  std::vector<Delivery> deliveries;
};

/**
 * One AP and its stations sharing a channel.
 *
 * The medium is a FIFO: each frame starts when the previous one ends, so
 * charged airtimes never overlap. APs use orthogonal channels, so BSSs do
 * not contend with each other.
 */
class Bss
{
public:
  Bss(NodeId ap, MacAddress ap_mac, unsigned channel)
    : m_ap(ap)
    , m_ap_mac(ap_mac)
    , m_channel(channel)
  {
    m_members.emplace(ap_mac, ap);
  }

  NodeId ap() const noexcept { return m_ap; }
  MacAddress ap_mac() const noexcept { return m_ap_mac; }
  unsigned channel() const noexcept { return m_channel; }
  Time busy_until() const noexcept { return m_busy_until; }

  const std::map<MacAddress, NodeId>&
  members() const noexcept
  {
    return m_members;
  }

  bool
  is_member(MacAddress mac) const
  {
    return m_members.count(mac) != 0;
  }

  void
  add_member(MacAddress mac, NodeId node)
  {
    m_members.emplace(mac, node);
  }

  void
  remove_member(MacAddress mac)
  {
    if (mac != m_ap_mac)
      m_members.erase(mac);
  }

  /**
   * Puts @p frame on the medium after any frame already queued.
   *
   * @p in_range(a, b) says whether MAC b can hear MAC a. Broadcast is one
   * basic-rate transmission heard by every in-range member, no ACK and no
   * retry. Unicast is retried up to retry_limit times, each attempt charged
   * in full.
   */
  template<typename InRange>
  TransmitResult
  transmit(const Frame& frame, Time now, const PhyProfile& profile, InRange&& in_range, Engine& rng)
  {
    TransmitResult r;
    if (!is_member(frame.src)) {
      r.outcome = TransmitOutcome::NOT_ASSOCIATED;
      r.start = r.end = now;
      return r;
    }
    Time start = std::max(now, m_busy_until);
    if (start - now > profile.max_queue_delay) {
      r.outcome = TransmitOutcome::QUEUE_DROP;
      r.start = r.end = now;
      return r;
    }
    r.start = start;

    if (frame.is_broadcast()) {
      r.attempts = 1;
      r.airtime_charged = frame.airtime;
      r.end = start + frame.airtime;
      for (const auto& [mac, node] : m_members) {
        if (mac == frame.src || !in_range(frame.src, mac))
          continue;
        if (profile.loss_probability > 0 && bernoulli(rng, profile.loss_probability))
          continue;
        r.deliveries.push_back({node, mac, r.end});
      }
      r.outcome = r.deliveries.empty() ? TransmitOutcome::NO_RECEIVER : TransmitOutcome::DELIVERED;
    }
    else {
      auto dst = m_members.find(frame.dst);
      bool reachable = dst != m_members.end() && dst->first != frame.src &&
                       in_range(frame.src, frame.dst);
      Time t = start;
      r.outcome = TransmitOutcome::LINK_LOSS;
      for (unsigned attempt = 0; attempt <= profile.retry_limit; ++attempt) {
        ++r.attempts;
        t += frame.airtime;
        r.airtime_charged += frame.airtime;
        bool ok = reachable &&
                  !(profile.loss_probability > 0 && bernoulli(rng, profile.loss_probability));
        if (ok) {
          r.deliveries.push_back({dst->second, dst->first, t});
          r.outcome = TransmitOutcome::DELIVERED;
          break;
        }
      }
      r.end = t;
    }

    m_busy_until = r.end;
    return r;
  }

private:
  NodeId m_ap;
  MacAddress m_ap_mac;
  unsigned m_channel;
  std::map<MacAddress, NodeId> m_members;
  Time m_busy_until{0};
};

/**
 * Nearest-AP association with hysteresis.
 *
 * Returns the AP index the station should be associated with, or nullopt
 * when no AP is within range. A station stays on its current AP while it is
 * in range unless another AP is closer by at least @p hysteresis.
 */
inline std::optional<std::size_t>
associate(double position, std::optional<std::size_t> current, std::span<const double> ap_positions,
          double range, double hysteresis)
{
  std::optional<std::size_t> best;
  double best_dist = 0;
  for (std::size_t i = 0; i < ap_positions.size(); ++i) {
    double d = std::abs(position - ap_positions[i]);
    if (d > range)
      continue;
    if (!best || d < best_dist) {
      best = i;
      best_dist = d;
    }
  }
  if (!best)
    return std::nullopt;
  if (current && *current < ap_positions.size()) {
    double cur = std::abs(position - ap_positions[*current]);
    if (cur <= range && best_dist + hysteresis > cur)
      return current;
  }
  return best;
}

} // namespace vndn::wireless
