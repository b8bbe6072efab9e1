#pragma once

#include "vndn/ndn/content-store.hpp"
#include "vndn/ndn/deployment-mode.hpp"
#include "vndn/ndn/face.hpp"
#include "vndn/ndn/fib.hpp"
#include "vndn/ndn/pit.hpp"

#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

namespace vndn::ndn {

struct SendInterest
{
  FaceId face = INVALID_FACE;
  Interest interest;
  /// MACs learned on the chosen next hop, oldest first. Empty for non-wireless faces.
  std::vector<MacAddress> candidates;
};

struct SendData
{
  FaceId face = INVALID_FACE;
  Data data;
  /// Senders recorded on the in-record for this face.
  std::vector<MacAddress> candidates;
};

enum class DropReason {
  DUPLICATE_NONCE,
  NO_ROUTE,
  UNSOLICITED,
  PIT_OVERFLOW,
  PROTOCOL_ERROR,
};

constexpr std::string_view
to_string(DropReason r)
{
  switch (r) {
    case DropReason::DUPLICATE_NONCE:
      return "duplicate-nonce";
    case DropReason::NO_ROUTE:
      return "no-route";
    case DropReason::UNSOLICITED:
      return "unsolicited";
    case DropReason::PIT_OVERFLOW:
      return "pit-overflow";
    case DropReason::PROTOCOL_ERROR:
      return "protocol-error";
  }
  return "?";
}

struct Drop
{
  DropReason reason;
};

using ForwardAction = std::variant<SendInterest, SendData, Drop>;

struct ForwarderConfig
{
  std::size_t cs_capacity = 0;
  /// Unbounded when empty.
  std::optional<std::size_t> pit_capacity;
  /// Learned next-hop MACs age out after this long without a fresh observation.
  Time mac_ttl = std::chrono::seconds(2);
};

struct ForwarderCounters
{
  std::uint64_t packets_processed = 0;
  std::uint64_t interests_in = 0;
  std::uint64_t data_in = 0;
  std::uint64_t interests_forwarded = 0;
  std::uint64_t interests_aggregated = 0;
  std::uint64_t data_forwarded = 0;
  std::uint64_t cs_hits = 0;
  std::uint64_t cs_misses = 0;
  std::uint64_t duplicate_nonce = 0;
  std::uint64_t no_route = 0;
  std::uint64_t unsolicited_data = 0;
  std::uint64_t pit_overflow = 0;
  std::uint64_t protocol_errors = 0;
  std::uint64_t satisfied = 0;
  std::uint64_t unsatisfied = 0;
};

/**
 * Chooses link-layer destinations for one outgoing packet on a wireless face.
 *
 * Broadcast is used when the mode does not unicast in @p dir or nothing has
 * been learned. Downstream fans out to every candidate; upstream picks the
 * most recently learned one (the last element).
 */
inline std::vector<MacAddress>
select_frame_destination(Direction dir, DeploymentMode mode, std::span<const MacAddress> candidates)
{
  bool unicast = dir == Direction::UP ? mode.up_unicast : mode.down_unicast;
  if (!unicast || candidates.empty())
    return {BROADCAST_MAC};
  if (dir == Direction::DOWN)
    return {candidates.begin(), candidates.end()};
  return {candidates.back()};
}

/**
 * Forwarding pipeline of one node: PIT, CS and FIB with passive MAC learning.
 *
 * Interests record the frame source in their PIT in-record; returning Data
 * records its frame source on the FIB next hop it came through. Those two
 * collections are what the link layer uses to address unicast frames.
 *
 * Routing is best-route: the cheapest next hop other than the ingress face.
 * Packets are never sent back out the face they arrived on, so a node with a
 * single wireless face (a vehicle) never relays what it overhears.
 */
class Forwarder
{
public:
  explicit Forwarder(NodeId node = 0, ForwarderConfig config = {})
    : m_node(node)
    , m_config(config)
    , m_pit(config.pit_capacity)
    , m_cs(config.cs_capacity)
  {
  }

  NodeId
  node() const noexcept
  {
    return m_node;
  }

  const ForwarderConfig&
  config() const noexcept
  {
    return m_config;
  }

  FaceId
  add_face(FaceKind kind)
  {
    FaceId id = static_cast<FaceId>(m_faces.size() + 1);
    m_faces.emplace(id, Face{id, kind, m_node});
    return id;
  }

  const Face&
  face(FaceId id) const
  {
    return m_faces.at(id);
  }

  const std::map<FaceId, Face>&
  faces() const noexcept
  {
    return m_faces;
  }

  Fib& fib() noexcept { return m_fib; }
  const Fib& fib() const noexcept { return m_fib; }
  Pit& pit() noexcept { return m_pit; }
  const Pit& pit() const noexcept { return m_pit; }
  ContentStore& cs() noexcept { return m_cs; }
  const ContentStore& cs() const noexcept { return m_cs; }
  const ForwarderCounters& counters() const noexcept { return m_counters; }

  std::vector<ForwardAction>
  on_incoming_interest(FaceId in_face, std::optional<MacAddress> src_mac, const Interest& interest,
                       Time now)
  {
    const Face& ingress = m_faces.at(in_face);
    ++m_counters.packets_processed;
    ++m_counters.interests_in;
    expire(now);

    if (!is_valid_packet_name(interest.name) || interest.lifetime <= Time::zero()) {
      ++m_counters.protocol_errors;
      return {Drop{DropReason::PROTOCOL_ERROR}};
    }

    PitEntry* entry = m_pit.find(interest.name);
    if (m_dead_nonces.contains(interest.name, interest.nonce) ||
        (entry != nullptr && entry->has_nonce(interest.nonce))) {
      ++m_counters.duplicate_nonce;
      return {Drop{DropReason::DUPLICATE_NONCE}};
    }

    bool created = false;
    if (entry == nullptr) {
      if (m_pit.full()) {
        ++m_counters.pit_overflow;
        return {Drop{DropReason::PIT_OVERFLOW}};
      }
      std::tie(entry, created) = m_pit.insert(interest.name);
    }

    Time expiry = now + interest.lifetime;
    PitInRecord* in = entry->find_in_record(in_face);
    if (in == nullptr) {
      entry->in_records.push_back({in_face, interest.nonce, expiry, {}});
      in = &entry->in_records.back();
    }
    else {
      in->nonce = interest.nonce;
      in->expiry = expiry;
    }
    if (src_mac && ingress.carries_frames())
      in->add_sender(*src_mac);
    m_pit.schedule_expiry(interest.name, expiry);
    m_dead_nonces.add(interest.name, interest.nonce, expiry);

    if (auto hit = m_cs.lookup(interest.name)) {
      ++m_counters.cs_hits;
      std::vector<MacAddress> dst;
      if (src_mac && ingress.carries_frames())
        dst.push_back(*src_mac);
      if (created)
        m_pit.erase(interest.name);
      return {SendData{in_face, std::move(*hit), std::move(dst)}};
    }
    ++m_counters.cs_misses;

    if (!created && entry->has_live_out_record(now)) {
      ++m_counters.interests_aggregated;
      return {};
    }

    FibEntry* route = m_fib.longest_prefix_match(interest.name);
    NextHop* hop = nullptr;
    if (route != nullptr) {
      for (auto& nh : route->next_hops) {
        if (nh.face != in_face) {
          hop = &nh;
          break;
        }
      }
    }
    if (hop == nullptr) {
      ++m_counters.no_route;
      if (created)
        m_pit.erase(interest.name);
      return {Drop{DropReason::NO_ROUTE}};
    }

    if (auto* out = entry->find_out_record(hop->face)) {
      out->nonce = interest.nonce;
      out->expiry = expiry;
    }
    else {
      entry->out_records.push_back({hop->face, interest.nonce, expiry});
    }
    ++m_counters.interests_forwarded;

    std::vector<MacAddress> candidates;
    if (m_faces.at(hop->face).carries_frames()) {
      hop->evict_stale(now, m_config.mac_ttl);
      candidates = hop->live_macs(now, m_config.mac_ttl);
    }
    return {SendInterest{hop->face, interest, std::move(candidates)}};
  }

  std::vector<ForwardAction>
  on_incoming_data(FaceId in_face, std::optional<MacAddress> src_mac, const Data& data, Time now)
  {
    const Face& ingress = m_faces.at(in_face);
    ++m_counters.packets_processed;
    ++m_counters.data_in;
    expire(now);

    if (!is_valid_packet_name(data.name) || data.payload_size == 0) {
      ++m_counters.protocol_errors;
      return {Drop{DropReason::PROTOCOL_ERROR}};
    }

    PitEntry* entry = m_pit.find(data.name);
    if (entry == nullptr) {
      ++m_counters.unsolicited_data;
      return {Drop{DropReason::UNSOLICITED}};
    }

    m_cs.insert(data);

    if (src_mac && ingress.carries_frames()) {
      if (FibEntry* route = m_fib.longest_prefix_match(data.name)) {
        if (NextHop* nh = route->find_next_hop(in_face))
          nh->learn(*src_mac, now);
      }
    }

    std::vector<ForwardAction> actions;
    for (auto& in : entry->in_records) {
      if (in.face == in_face || in.expiry <= now)
        continue;
      actions.push_back(SendData{in.face, data, std::move(in.sender_macs)});
      ++m_counters.data_forwarded;
    }
    ++m_counters.satisfied;
    m_pit.erase(data.name);
    return actions;
  }

  /// Removes expired PIT records; entries left without in-records count as unsatisfied.
  std::vector<PitEntry>
  pit_expire(Time now)
  {
    auto expired = m_pit.expire(now);
    m_counters.unsatisfied += expired.size();
    return expired;
  }

  /// Diagnostic dump, one record per line.
  void
  dump(std::ostream& os) const
  {
    for (const auto& [id, f] : m_faces)
      os << "face " << id << " kind=" << to_string(f.kind) << " node=" << f.node << '\n';
    m_fib.dump(os);
    m_pit.dump(os);
    m_cs.dump(os);
  }

private:
  void
  expire(Time now)
  {
    pit_expire(now);
    m_dead_nonces.expire(now);
  }

  NodeId m_node;
  ForwarderConfig m_config;
  std::map<FaceId, Face> m_faces;
  Fib m_fib;
  Pit m_pit;
  ContentStore m_cs;
  DeadNonceList m_dead_nonces;
  ForwarderCounters m_counters;
};

} // namespace vndn::ndn
