#pragma once

#include "vndn/mobility/trace.hpp"
#include "vndn/ndn/forwarder.hpp"
#include "vndn/random.hpp"
#include "vndn/sim/apps.hpp"
#include "vndn/sim/event-queue.hpp"
#include "vndn/sim/scenario.hpp"
#include "vndn/stats/metrics.hpp"
#include "vndn/wireless/bss.hpp"

#include <deque>
#include <memory>
#include <optional>
#include <vector>

namespace vndn::sim {

using ndn::MacAddress;

enum class NodeRole {
  AP,
  ROUTER,
  PRODUCER,
  VEHICLE,
};

constexpr std::string_view
to_string(NodeRole r)
{
  switch (r) {
    case NodeRole::AP:
      return "ap";
    case NodeRole::ROUTER:
      return "router";
    case NodeRole::PRODUCER:
      return "producer";
    case NodeRole::VEHICLE:
      return "vehicle";
  }
  return "?";
}

struct WiredPort
{
  NodeId peer = 0;
  FaceId peer_face = INVALID_FACE;
  WiredLink link;
};

struct Node
{
  NodeId id = 0;
  NodeRole role = NodeRole::VEHICLE;
  ndn::Forwarder fw;
  MacAddress mac;
  FaceId wireless_face = INVALID_FACE;
  FaceId app_face = INVALID_FACE;
  std::map<FaceId, WiredPort> ports;

  std::optional<std::size_t> bss; ///< AP: its own BSS; vehicle: current association
  std::uint64_t epoch = 0;        ///< bumped on every association change
  double position = 0;            ///< fixed nodes only

  // vehicles
  const mobility::VehicleTrack* track = nullptr;
  bool active = false;
  ConsumerSpec app;
  ConsumerState app_state;
  std::deque<std::pair<Time, ndn::Name>> app_timeouts;
  std::map<ndn::Name, unsigned> app_retx;
  Time app_interval{0};
  Time app_stop{0};

  stats::NodeMetrics counters;
};

/**
 * One simulation run: APs along the avenue wired to a router and a remote
 * producer, and vehicles driven by a trace. Deterministic for a given
 * (scenario, trace); all randomness comes from named streams of the seed.
 */
class Simulation
{
public:
  Simulation(Scenario scenario, mobility::Trace trace)
    : m_scenario(std::move(scenario))
    , m_trace(std::move(trace))
    , m_loss_rng(make_stream(m_scenario.seed, "losses"))
    , m_nonce_rng(make_stream(m_scenario.seed, "nonces"))
  {
    m_scenario.validate();
    build();
  }

  // scheduled events and vehicle tracks point back into this object
  Simulation(const Simulation&) = delete;
  Simulation& operator=(const Simulation&) = delete;

  /// Generates (or loads) the trace described by the scenario.
  static mobility::Trace
  make_trace(const Scenario& s)
  {
    if (!s.trace_file.empty()) {
      return mobility::load_trace(
        s.trace_file, {s.traffic.avenue_length, s.traffic.max_speed * mobility::KMH_TO_MPS});
    }
    auto params = s.traffic;
    params.seed = s.seed;
    return mobility::generate_trace(params);
  }

  stats::RunMetrics
  run()
  {
    m_queue.run_until(from_seconds(m_scenario.durations.sim + m_scenario.durations.drain));
    return collect();
  }

  const Scenario& scenario() const noexcept { return m_scenario; }
  const std::vector<Node>& nodes() const noexcept { return m_nodes; }
  const std::vector<wireless::Bss>& bsses() const noexcept { return m_bss; }
  const EventQueue& queue() const noexcept { return m_queue; }

  NodeId router_id() const noexcept { return m_router; }
  NodeId producer_id() const noexcept { return m_producer; }

  /// Node id of trace vehicle @p vehicle.
  NodeId
  vehicle_node(std::uint32_t vehicle) const
  {
    return m_first_vehicle + vehicle;
  }

private:
  static MacAddress
  mac_of(NodeId id)
  {
    return MacAddress::from_index(id + 1);
  }

  static NodeId
  node_of(MacAddress mac)
  {
    return static_cast<NodeId>((mac.value() & 0xFFFF'FFFFULL) - 1);
  }

  Node&
  add_node(NodeRole role, std::size_t cs_capacity)
  {
    NodeId id = static_cast<NodeId>(m_nodes.size());
    ndn::ForwarderConfig cfg;
    cfg.cs_capacity = cs_capacity;
    cfg.mac_ttl = m_scenario.topology.mac_ttl;
    if (m_scenario.topology.pit_capacity > 0)
      cfg.pit_capacity = m_scenario.topology.pit_capacity;
    Node n;
    n.id = id;
    n.role = role;
    n.fw = ndn::Forwarder(id, cfg);
    n.mac = mac_of(id);
    n.counters.id = id;
    n.counters.role = std::string(to_string(role));
    m_nodes.push_back(std::move(n));
    return m_nodes.back();
  }

  void
  connect(NodeId a, NodeId b, double rate, Time delay)
  {
    FaceId fa = m_nodes[a].fw.add_face(ndn::FaceKind::WIRED_P2P);
    FaceId fb = m_nodes[b].fw.add_face(ndn::FaceKind::WIRED_P2P);
    m_nodes[a].ports.emplace(fa, WiredPort{b, fb, WiredLink(rate, delay)});
    m_nodes[b].ports.emplace(fb, WiredPort{a, fa, WiredLink(rate, delay)});
  }

  void
  build()
  {
    const auto& topo = m_scenario.topology;
    const auto prefixes = {distinct_prefix(0).prefix(1), shared_prefix()};
    m_producer_prefixes.assign(prefixes.begin(), prefixes.end());

    m_nodes.reserve(topo.ap_positions.size() + 2 + m_trace.vehicles.size());
    for (std::size_t i = 0; i < topo.ap_positions.size(); ++i) {
      Node& ap = add_node(NodeRole::AP, topo.ap_cs_capacity);
      ap.wireless_face = ap.fw.add_face(ndn::FaceKind::WIRELESS);
      ap.position = topo.ap_positions[i] * m_scenario.traffic.avenue_length;
      ap.bss = i;
      ap.active = true;
      m_bss.emplace_back(ap.id, ap.mac, static_cast<unsigned>(i));
      m_ap_positions.push_back(ap.position);
    }
    m_router = add_node(NodeRole::ROUTER, topo.router_cs_capacity).id;
    m_producer = add_node(NodeRole::PRODUCER, topo.producer_cs_capacity).id;
    m_first_vehicle = static_cast<NodeId>(m_nodes.size());

    for (std::size_t i = 0; i < topo.ap_positions.size(); ++i)
      connect(static_cast<NodeId>(i), m_router, topo.ap_router_rate, topo.ap_router_delay);
    connect(m_router, m_producer, topo.router_producer_rate, topo.router_producer_delay);

    Node& producer = m_nodes[m_producer];
    producer.app_face = producer.fw.add_face(ndn::FaceKind::APPLICATION);
    for (const auto& p : m_producer_prefixes) {
      producer.fw.fib().add_next_hop(p, producer.app_face);
      FaceId toward_producer = m_nodes[m_router].ports.rbegin()->first;
      m_nodes[m_router].fw.fib().add_next_hop(p, toward_producer);
      for (std::size_t i = 0; i < topo.ap_positions.size(); ++i)
        m_nodes[i].fw.fib().add_next_hop(p, m_nodes[i].ports.begin()->first);
    }

    auto specs = assign_apps(static_cast<std::uint32_t>(m_trace.vehicles.size()),
                             m_scenario.apps.scenario, m_scenario.seed, m_scenario.apps.rate_min,
                             m_scenario.apps.rate_max);
    const Time sim_end = from_seconds(m_scenario.durations.sim);
    for (std::size_t v = 0; v < m_trace.vehicles.size(); ++v) {
      Node& n = add_node(NodeRole::VEHICLE, topo.vehicle_cs_capacity);
      n.wireless_face = n.fw.add_face(ndn::FaceKind::WIRELESS);
      n.app_face = n.fw.add_face(ndn::FaceKind::APPLICATION);
      n.fw.fib().add_next_hop(ndn::Name(), n.wireless_face);
      n.track = &m_trace.vehicles[v];
      n.app = specs[v];
      n.app_interval = from_seconds(1.0 / n.app.rate);
      n.app_stop = std::min(from_seconds(n.track->exit()), sim_end);
      Time entry = from_seconds(n.track->entry());
      if (entry < sim_end) {
        NodeId id = n.id;
        m_queue.schedule(entry, [this, id] { vehicle_enter(id); });
      }
    }
  }

  std::optional<double>
  position_of(const Node& n) const
  {
    if (n.role != NodeRole::VEHICLE)
      return n.position;
    if (!n.active)
      return std::nullopt;
    return mobility::position_at(*n.track, to_seconds(m_queue.now()));
  }

  bool
  in_range(MacAddress a, MacAddress b) const
  {
    auto pa = position_of(m_nodes[node_of(a)]);
    auto pb = position_of(m_nodes[node_of(b)]);
    return pa && pb && std::abs(*pa - *pb) <= m_scenario.phy.range;
  }

  void
  vehicle_enter(NodeId id)
  {
    Node& n = m_nodes[id];
    n.active = true;
    update_association(n);
    m_queue.schedule_in(m_scenario.topology.association_interval, [this, id] { association_tick(id); });
    m_queue.schedule(m_queue.now(), [this, id] { consumer_tick(id); });
    m_queue.schedule(from_seconds(n.track->exit()), [this, id] { vehicle_exit(id); });
  }

  void
  vehicle_exit(NodeId id)
  {
    Node& n = m_nodes[id];
    if (n.bss)
      m_bss[*n.bss].remove_member(n.mac);
    n.bss.reset();
    ++n.epoch;
    n.active = false;
  }

  void
  association_tick(NodeId id)
  {
    Node& n = m_nodes[id];
    if (!n.active)
      return;
    update_association(n);
    Time next = m_queue.now() + m_scenario.topology.association_interval;
    if (next < from_seconds(n.track->exit()))
      m_queue.schedule(next, [this, id] { association_tick(id); });
  }

  void
  update_association(Node& n)
  {
    auto pos = position_of(n);
    std::optional<std::size_t> target;
    if (pos) {
      target = wireless::associate(*pos, n.bss, m_ap_positions, m_scenario.phy.range,
                                   m_scenario.topology.handover_hysteresis);
    }
    if (target == n.bss)
      return;
    if (n.bss) {
      m_bss[*n.bss].remove_member(n.mac);
      if (target)
        ++n.counters.handovers;
    }
    if (target)
      m_bss[*target].add_member(n.mac, n.id);
    n.bss = target;
    ++n.epoch;
  }

  void
  consumer_tick(NodeId id)
  {
    Node& n = m_nodes[id];
    Time now = m_queue.now();
    if (!n.active || now >= n.app_stop)
      return;
    sweep_app_timeouts(n, now);

    ndn::Name name = consumer_next_name(n.app, n.app_state, now, m_scenario.apps.shared_rate);
    ++n.app_state.interests_sent;
    express(n, std::move(name), now);

    Time next = now + n.app_interval;
    if (next < n.app_stop)
      m_queue.schedule(next, [this, id] { consumer_tick(id); });
  }

  void
  express(Node& n, ndn::Name name, Time now)
  {
    ++n.app_state.outstanding[name];
    n.app_timeouts.emplace_back(now + m_scenario.apps.interest_lifetime, name);
    ndn::Interest interest{std::move(name), static_cast<std::uint32_t>(m_nonce_rng()),
                           m_scenario.apps.interest_lifetime};
    dispatch(n, n.fw.on_incoming_interest(n.app_face, std::nullopt, interest, now));
  }

  void
  sweep_app_timeouts(Node& n, Time now)
  {
    while (!n.app_timeouts.empty() && n.app_timeouts.front().first <= now) {
      ndn::Name name = std::move(n.app_timeouts.front().second);
      n.app_timeouts.pop_front();
      auto it = n.app_state.outstanding.find(name);
      if (it == n.app_state.outstanding.end())
        continue;
      if (m_scenario.apps.retransmit && n.app_retx[name] < m_scenario.apps.max_retransmissions) {
        ++n.app_retx[name];
        ++n.app_state.retransmissions;
        --it->second;
        express(n, name, now);
        continue;
      }
      if (--it->second == 0)
        n.app_state.outstanding.erase(it);
    }
  }

  void
  dispatch(Node& n, const std::vector<ndn::ForwardAction>& actions)
  {
    for (const auto& action : actions) {
      if (const auto* si = std::get_if<ndn::SendInterest>(&action))
        send(n, si->face, ndn::Packet(si->interest), si->candidates);
      else if (const auto* sd = std::get_if<ndn::SendData>(&action))
        send(n, sd->face, ndn::Packet(sd->data), sd->candidates);
    }
  }

  void
  send(Node& n, FaceId face, ndn::Packet packet, std::span<const MacAddress> candidates)
  {
    switch (n.fw.face(face).kind) {
      case ndn::FaceKind::APPLICATION:
        deliver_to_app(n, packet);
        break;
      case ndn::FaceKind::WIRED_P2P: {
        auto& port = n.ports.at(face);
        Time arrival = port.link.send(ndn::encoded_size(packet), m_queue.now());
        NodeId peer = port.peer;
        FaceId peer_face = port.peer_face;
        m_queue.schedule(arrival, [this, peer, peer_face, p = std::move(packet)] {
          receive(m_nodes[peer], peer_face, std::nullopt, p);
        });
        break;
      }
      case ndn::FaceKind::WIRELESS:
        send_wireless(n, std::move(packet), candidates);
        break;
    }
  }

  void
  send_wireless(Node& n, ndn::Packet packet, std::span<const MacAddress> candidates)
  {
    auto dir = std::holds_alternative<ndn::Interest>(packet) ? ndn::Direction::UP
                                                             : ndn::Direction::DOWN;
    auto dsts = ndn::select_frame_destination(dir, m_scenario.mode, candidates);
    if (!n.bss) {
      n.counters.link_losses += dsts.size();
      return;
    }
    std::size_t bss_index = *n.bss;
    auto& bss = m_bss[bss_index];
    auto shared = std::make_shared<const ndn::Packet>(std::move(packet));
    auto range = [this](MacAddress a, MacAddress b) { return in_range(a, b); };

    for (MacAddress dst : dsts) {
      auto frame = wireless::make_frame(n.mac, dst, *shared, m_scenario.phy);
      auto r = bss.transmit(frame, m_queue.now(), m_scenario.phy, range, m_loss_rng);
      switch (r.outcome) {
        case wireless::TransmitOutcome::QUEUE_DROP:
          ++n.counters.queue_drops;
          continue;
        case wireless::TransmitOutcome::NOT_ASSOCIATED:
          ++n.counters.link_losses;
          continue;
        case wireless::TransmitOutcome::LINK_LOSS:
          ++n.counters.link_losses;
          break;
        default:
          break;
      }
      if (frame.is_broadcast())
        ++n.counters.frames_broadcast;
      else
        ++n.counters.frames_unicast;
      n.counters.airtime_used_s += to_seconds(r.airtime_charged);

      if (r.deliveries.empty())
        continue;
      std::vector<std::pair<NodeId, std::uint64_t>> receivers;
      receivers.reserve(r.deliveries.size());
      for (const auto& d : r.deliveries)
        receivers.emplace_back(d.receiver, m_nodes[d.receiver].epoch);
      MacAddress src = n.mac;
      m_queue.schedule(r.deliveries.front().time,
                       [this, receivers = std::move(receivers), bss_index, src, shared] {
                         for (auto [id, epoch] : receivers) {
                           Node& rx = m_nodes[id];
                           if (rx.bss != bss_index || rx.epoch != epoch)
                             continue;
                           receive(rx, rx.wireless_face, src, *shared);
                         }
                       });
    }
  }

  void
  receive(Node& n, FaceId face, std::optional<MacAddress> src, const ndn::Packet& packet)
  {
    Time now = m_queue.now();
    if (const auto* interest = std::get_if<ndn::Interest>(&packet))
      dispatch(n, n.fw.on_incoming_interest(face, src, *interest, now));
    else
      dispatch(n, n.fw.on_incoming_data(face, src, std::get<ndn::Data>(packet), now));
  }

  void
  deliver_to_app(Node& n, const ndn::Packet& packet)
  {
    if (n.role == NodeRole::PRODUCER) {
      const auto* interest = std::get_if<ndn::Interest>(&packet);
      if (interest == nullptr)
        return;
      if (auto data = producer_on_interest(*interest, m_producer_prefixes,
                                           m_scenario.apps.payload_bytes)) {
        dispatch(n, n.fw.on_incoming_data(n.app_face, std::nullopt, *data, m_queue.now()));
      }
      return;
    }
    if (const auto* data = std::get_if<ndn::Data>(&packet))
      n.app_state.on_data(data->name);
  }

  stats::RunMetrics
  collect()
  {
    stats::RunMetrics m;
    m.instance = m_scenario.instance();
    m.seed = m_scenario.seed;
    Time flush = m_queue.now() + std::chrono::hours(1);
    for (auto& n : m_nodes) {
      n.fw.pit_expire(flush);
      auto c = n.counters;
      c.nfd_packets_processed = n.fw.counters().packets_processed;
      c.unsolicited_data = n.fw.counters().unsolicited_data;
      c.unsatisfied = n.fw.counters().unsatisfied;
      m.nodes.push_back(std::move(c));
    }
    for (const auto& n : m_nodes) {
      if (n.role != NodeRole::VEHICLE)
        continue;
      stats::AppMetrics a;
      a.vehicle = n.track->id;
      a.kind = std::string(to_string(n.app.kind));
      a.rate = n.app.rate;
      a.interests_sent = n.app_state.interests_sent;
      a.data_received = n.app_state.data_received;
      m.apps.push_back(std::move(a));
    }
    return m;
  }

  Scenario m_scenario;
  mobility::Trace m_trace;
  EventQueue m_queue;
  Engine m_loss_rng;
  Engine m_nonce_rng;
  std::vector<Node> m_nodes;
  std::vector<wireless::Bss> m_bss;
  std::vector<double> m_ap_positions;
  std::vector<ndn::Name> m_producer_prefixes;
  NodeId m_router = 0;
  NodeId m_producer = 0;
  NodeId m_first_vehicle = 0;
};

/// Builds the trace, runs the scenario and returns its metrics.
inline stats::RunMetrics
run(const Scenario& scenario)
{
  Simulation sim(scenario, Simulation::make_trace(scenario));
  return sim.run();
}

} // namespace vndn::sim
