#pragma once

// Independent reference implementations and randomized property checks,
// shared by the unit tests and the acceptance binary.

#include "vndn/ndn/forwarder.hpp"
#include "vndn/random.hpp"
#include "vndn/stats/mann-whitney.hpp"
#include "vndn/stats/vargha-delaney.hpp"
#include "vndn/wireless/bss.hpp"

#include <deque>
#include <set>
#include <sstream>

namespace vndn::oracle {

struct Report
{
  std::size_t cases = 0;
  std::vector<std::string> failures; ///< first 20 messages
  std::size_t failed = 0;
  double max_error = 0;

  bool ok() const { return failed == 0; }

  void
  fail(std::string msg)
  {
    ++failed;
    if (failures.size() < 20)
      failures.push_back(std::move(msg));
    else if (failures.size() == 20)
      failures.push_back("...");
  }
};

// ---------------------------------------------------------------- statistics

/// Exact two-sided Mann-Whitney p by enumerating every split of the pooled
/// values into groups of the original sizes. Exponential; meant for n <= 16.
inline double
exact_mann_whitney_p(const std::vector<double>& a, const std::vector<double>& b)
{
  std::vector<double> pooled(a);
  pooled.insert(pooled.end(), b.begin(), b.end());
  const std::size_t n1 = a.size(), n = pooled.size();

  // U_a as pairs won by the first group, ties half
  auto u_of = [&](const std::vector<bool>& in_a) {
    double u = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (!in_a[i])
        continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (in_a[j])
          continue;
        u += pooled[i] > pooled[j] ? 1.0 : (pooled[i] == pooled[j] ? 0.5 : 0.0);
      }
    }
    return u;
  };

  const double mu = static_cast<double>(n1) * static_cast<double>(b.size()) / 2.0;
  std::vector<bool> observed(n, false);
  for (std::size_t i = 0; i < n1; ++i)
    observed[i] = true;
  const double dev = std::abs(u_of(observed) - mu);

  std::vector<bool> pick(n, false);
  std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(n1), true);
  std::size_t total = 0, extreme = 0;
  // prev_permutation walks every arrangement of n1 "true" flags exactly once
  do {
    ++total;
    if (std::abs(u_of(pick) - mu) >= dev - 1e-9)
      ++extreme;
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return static_cast<double>(extreme) / static_cast<double>(total);
}

inline double
brute_force_a12(const std::vector<double>& a, const std::vector<double>& b)
{
  double wins = 0;
  for (double x : a)
    for (double y : b)
      wins += x > y ? 1.0 : (x == y ? 0.5 : 0.0);
  return wins / static_cast<double>(a.size() * b.size());
}

/**
 * Approximate vs exact p for every pair of sample sizes up to @p max_n.
 * Tie-free samples cover every achievable U; tied samples are drawn at random.
 */
inline Report
check_mann_whitney_against_exact(std::size_t max_n, std::uint64_t seed, std::size_t tied_per_size,
                                 double tolerance)
{
  Report r;
  auto rng = make_stream(seed, "mw-oracle");
  for (std::size_t n1 = 1; n1 <= max_n; ++n1) {
    for (std::size_t n2 = 1; n2 <= max_n; ++n2) {
      // tie-free: place the first group's ranks so that every U value occurs
      for (std::size_t u = 0; u <= n1 * n2; ++u) {
        // a's values: n2 "losses" distributed greedily gives U = u
        std::vector<double> a, b;
        for (std::size_t j = 0; j < n2; ++j)
          b.push_back(static_cast<double>(j) * 10.0);
        std::size_t left = u;
        for (std::size_t i = 0; i < n1; ++i) {
          std::size_t beats = std::min(left, n2);
          left -= beats;
          a.push_back(static_cast<double>(beats) * 10.0 - 5.0 + static_cast<double>(i) * 0.001);
        }
        if (left != 0)
          continue;
        double approx = stats::mann_whitney_u(a, b).p_value;
        double exact = exact_mann_whitney_p(a, b);
        double err = std::abs(approx - exact);
        ++r.cases;
        r.max_error = std::max(r.max_error, err);
        if (err > tolerance) {
          std::ostringstream os;
          os << "n1=" << n1 << " n2=" << n2 << " U=" << u << " approx=" << approx
             << " exact=" << exact;
          r.fail(os.str());
        }
      }
      for (std::size_t k = 0; k < tied_per_size; ++k) {
        std::vector<double> a(n1), b(n2);
        for (auto& x : a)
          x = static_cast<double>(uniform_below(rng, 4));
        for (auto& x : b)
          x = static_cast<double>(uniform_below(rng, 4));
        double approx = stats::mann_whitney_u(a, b).p_value;
        double exact = exact_mann_whitney_p(a, b);
        double err = std::abs(approx - exact);
        ++r.cases;
        r.max_error = std::max(r.max_error, err);
        if (err > tolerance) {
          std::ostringstream os;
          os << "tied n1=" << n1 << " n2=" << n2 << " approx=" << approx << " exact=" << exact;
          r.fail(os.str());
        }
      }
    }
  }
  return r;
}

inline Report
check_a12_against_brute_force(std::size_t pairs, std::uint64_t seed)
{
  Report r;
  auto rng = make_stream(seed, "a12-oracle");
  for (std::size_t k = 0; k < pairs; ++k) {
    std::size_t n1 = 1 + uniform_below(rng, 40), n2 = 1 + uniform_below(rng, 40);
    std::uint64_t spread = 1 + uniform_below(rng, 50); // small spreads force ties
    std::vector<double> a(n1), b(n2);
    for (auto& x : a)
      x = static_cast<double>(uniform_below(rng, spread));
    for (auto& x : b)
      x = static_cast<double>(uniform_below(rng, spread));
    double got = stats::vargha_delaney_a12(a, b);
    double want = brute_force_a12(a, b);
    ++r.cases;
    r.max_error = std::max(r.max_error, std::abs(got - want));
    if (std::abs(got - want) > 1e-12) {
      std::ostringstream os;
      os << "pair " << k << ": a12=" << got << " brute=" << want;
      r.fail(os.str());
    }
  }
  return r;
}

// ------------------------------------------------------------------ airtime

inline double
closed_form_airtime_s(std::size_t bytes, double rate, const wireless::PhyProfile& p, bool unicast)
{
  double t = to_seconds(p.per_frame_overhead) + static_cast<double>(bytes) * 8.0 / rate;
  if (unicast)
    t += to_seconds(p.ack_overhead);
  return t;
}

/**
 * Random frame schedules through one BSS: charged airtime, medium
 * serialization and retry accounting against the closed form.
 */
inline Report
check_airtime_oracle(std::size_t schedules, std::uint64_t seed)
{
  using namespace std::chrono_literals;
  Report r;
  auto rng = make_stream(seed, "airtime-oracle");
  const double tol = 2e-9; // two rounding steps of integer nanoseconds

  for (std::size_t s = 0; s < schedules; ++s) {
    wireless::PhyProfile p;
    if (s % 2 == 1) {
      p.basic_rate = uniform(rng, 1e6, 24e6);
      p.unicast_rate = p.basic_rate * uniform(rng, 1.5, 40.0);
      p.per_frame_overhead = from_seconds(uniform(rng, 0, 200e-6));
      p.ack_overhead = from_seconds(uniform(rng, 0, 100e-6));
      p.retry_limit = static_cast<unsigned>(uniform_below(rng, 8));
    }
    p.max_queue_delay = std::chrono::hours(1);

    ndn::MacAddress ap = ndn::MacAddress::from_index(1);
    wireless::Bss bss(0, ap, 0);
    std::size_t members = 1 + uniform_below(rng, 6);
    for (std::size_t m = 1; m <= members; ++m)
      bss.add_member(ndn::MacAddress::from_index(static_cast<std::uint32_t>(m + 1)),
                     static_cast<NodeId>(m));
    auto everyone = [](ndn::MacAddress, ndn::MacAddress) { return true; };
    Engine loss_rng = make_stream(seed + s, "unused");

    double busy_until = 0;
    Time now{0};
    for (int f = 0; f < 30; ++f) {
      now += from_seconds(uniform(rng, 0, 3e-3));
      std::size_t payload = uniform_below(rng, 1500);
      ndn::Data d{ndn::Name::parse("/x").append_number(static_cast<std::uint64_t>(f)), payload + 1};
      auto pick = uniform_below(rng, 3);
      ndn::MacAddress src = ap;
      ndn::MacAddress dst = pick == 0   ? ndn::BROADCAST_MAC
                            : pick == 1 ? ndn::MacAddress::from_index(2)
                                        : ndn::MacAddress::from_index(99); // absent
      auto frame = wireless::make_frame(src, dst, ndn::Packet(d), p);
      bool unicast = !dst.is_broadcast();
      double one = closed_form_airtime_s(frame.size, unicast ? p.unicast_rate : p.basic_rate, p,
                                         unicast);
      double want = pick == 2 ? one * (p.retry_limit + 1) : one;

      auto res = bss.transmit(frame, now, p, everyone, loss_rng);
      ++r.cases;
      double got = to_seconds(res.airtime_charged);
      double start_want = std::max(to_seconds(now), busy_until);
      double err = std::abs(got - want);
      r.max_error = std::max(r.max_error, err);
      if (err > tol * (res.attempts + 1)) {
        std::ostringstream os;
        os << "schedule " << s << " frame " << f << ": charged " << got << " s, closed form "
           << want << " s";
        r.fail(os.str());
      }
      if (std::abs(to_seconds(res.start) - start_want) > tol * 40) {
        std::ostringstream os;
        os << "schedule " << s << " frame " << f << ": started " << to_seconds(res.start)
           << " s, medium free at " << start_want << " s";
        r.fail(os.str());
      }
      if (pick == 2 && res.attempts != p.retry_limit + 1)
        r.fail("absent receiver: " + std::to_string(res.attempts) + " attempts");
      // every station hears the AP; the AP itself is the sender
      if (pick == 0 && res.deliveries.size() != members)
        r.fail("broadcast reached " + std::to_string(res.deliveries.size()) + " of " +
               std::to_string(members) + " stations");
      if (pick == 0 && res.attempts != 1)
        r.fail("broadcast was retried");
      busy_until = start_want + want;
    }
  }
  return r;
}

/// Smallest frame the stack can emit: MAC header plus an Interest for a one-component name.
inline std::size_t
smallest_frame_size(const wireless::PhyProfile& p)
{
  return wireless::make_frame(ndn::MacAddress::from_index(1), ndn::BROADCAST_MAC,
                              ndn::Packet(ndn::Interest{ndn::Name::parse("/a"), 0}), p)
    .size;
}

/// Broadcast vs unicast airtime of the same frame at the default profile, for every
/// frame size from the smallest emittable frame up to @p max_size.
inline Report
check_broadcast_costs_more(std::size_t max_size)
{
  Report r;
  wireless::PhyProfile p;
  for (std::size_t size = smallest_frame_size(p); size <= max_size; ++size) {
    ++r.cases;
    if (!(wireless::broadcast_airtime(size, p) > wireless::unicast_attempt_airtime(size, p)))
      r.fail("size " + std::to_string(size) + ": broadcast airtime not larger");
  }
  return r;
}

// --------------------------------------------------------------- forwarding

namespace detail {

struct LruQueue
{
  std::size_t capacity;
  std::deque<ndn::Name> q;

  void
  lookup(const ndn::Name& n)
  {
    if (auto it = std::find(q.begin(), q.end(), n); it != q.end()) {
      q.erase(it);
      q.push_back(n);
    }
  }

  void
  insert(const ndn::Name& n)
  {
    if (capacity == 0)
      return;
    if (auto it = std::find(q.begin(), q.end(), n); it != q.end())
      q.erase(it);
    else if (q.size() >= capacity)
      q.pop_front();
    q.push_back(n);
  }
};

inline bool
is_drop(const std::vector<ndn::ForwardAction>& actions, ndn::DropReason reason)
{
  return actions.size() == 1 && std::holds_alternative<ndn::Drop>(actions[0]) &&
         std::get<ndn::Drop>(actions[0]).reason == reason;
}

} // namespace detail

/**
 * Random Interest/Data sequences through one forwarder. Checked after every
 * packet: loop freedom, PIT consumption, mode soundness of the frames the
 * link layer would emit, learning soundness, and CS contents against a
 * reference LRU queue.
 */
inline Report
check_forwarding_properties(std::size_t cases, std::uint64_t seed)
{
  using namespace std::chrono_literals;
  using ndn::FaceKind;
  using ndn::MacAddress;
  using ndn::Name;
  Report r;
  auto rng = make_stream(seed, "forwarding-properties");

  for (std::size_t c = 0; c < cases; ++c) {
    auto fail = [&](const std::string& what) { r.fail("case " + std::to_string(c) + ": " + what); };
    ndn::ForwarderConfig cfg;
    cfg.cs_capacity = uniform_below(rng, 5);
    if (bernoulli(rng, 0.3))
      cfg.pit_capacity = 1 + uniform_below(rng, 5);
    cfg.mac_ttl = from_seconds(uniform(rng, 0.05, 2.0));
    ndn::Forwarder fw(0, cfg);
    auto mode = ndn::DeploymentMode::all()[uniform_below(rng, 4)];

    std::vector<FaceId> faces;
    std::size_t wireless = 1 + uniform_below(rng, 2);
    for (std::size_t i = 0; i < wireless; ++i)
      faces.push_back(fw.add_face(FaceKind::WIRELESS));
    faces.push_back(fw.add_face(FaceKind::WIRED_P2P));
    faces.push_back(fw.add_face(FaceKind::APPLICATION));
    auto random_face = [&] { return faces[uniform_below(rng, faces.size())]; };

    if (bernoulli(rng, 0.3))
      fw.fib().add_next_hop(Name(), random_face());
    for (int k = 0; k < 3; ++k)
      fw.fib().add_next_hop(Name::parse("/n").append_number(uniform_below(rng, 3)), random_face(),
                            static_cast<std::uint32_t>(uniform_below(rng, 3)));

    const Time lifetime = from_seconds(uniform(rng, 0.2, 4.0));
    detail::LruQueue cs_oracle{cfg.cs_capacity, {}};
    std::map<std::pair<Name, std::uint32_t>, Time> forwarded; // (name, nonce) -> first send
    std::set<std::pair<FaceId, MacAddress>> seen_interest_src, seen_data_src;
    Time now{0};

    for (int op = 0; op < 40; ++op) {
      now += from_seconds(uniform(rng, 0, 0.15));
      FaceId in = random_face();
      bool wireless_in = fw.face(in).carries_frames();
      std::optional<MacAddress> src;
      if (wireless_in)
        src = MacAddress::from_index(static_cast<std::uint32_t>(10 + uniform_below(rng, 4)));
      Name name = Name::parse("/n").append_number(uniform_below(rng, 4)).append_number(
        uniform_below(rng, 3));

      std::vector<ndn::ForwardAction> actions;
      bool is_interest = bernoulli(rng, 0.6);
      if (is_interest) {
        ndn::Interest interest{name, static_cast<std::uint32_t>(uniform_below(rng, 6)), lifetime};
        actions = fw.on_incoming_interest(in, src, interest, now);
        if (src)
          seen_interest_src.insert({in, *src});
        if (!detail::is_drop(actions, ndn::DropReason::DUPLICATE_NONCE) &&
            !detail::is_drop(actions, ndn::DropReason::PIT_OVERFLOW))
          cs_oracle.lookup(name);
        for (const auto& a : actions) {
          if (const auto* si = std::get_if<ndn::SendInterest>(&a)) {
            auto key = std::make_pair(si->interest.name, si->interest.nonce);
            auto it = forwarded.find(key);
            if (it != forwarded.end() && now < it->second + lifetime)
              fail("loop: " + key.first.to_uri() + " nonce " + std::to_string(key.second) +
                   " forwarded twice");
            forwarded[key] = now;
            if (si->face == in)
              fail("interest sent back out its ingress face");
          }
        }
      }
      else {
        ndn::Data data{name, 1 + uniform_below(rng, 2000)};
        actions = fw.on_incoming_data(in, src, data, now);
        if (src)
          seen_data_src.insert({in, *src});
        if (!detail::is_drop(actions, ndn::DropReason::UNSOLICITED)) {
          cs_oracle.insert(name);
          if (fw.pit().entries().count(name) != 0)
            fail("PIT entry " + name.to_uri() + " survived matching data");
        }
        for (const auto& a : actions)
          if (const auto* sd = std::get_if<ndn::SendData>(&a); sd && sd->face == in)
            fail("data sent back out its ingress face");
      }

      // frames the link layer would emit for these actions
      for (const auto& a : actions) {
        FaceId out = INVALID_FACE;
        ndn::Direction dir{};
        const std::vector<MacAddress>* cand = nullptr;
        if (const auto* si = std::get_if<ndn::SendInterest>(&a)) {
          out = si->face;
          dir = ndn::Direction::UP;
          cand = &si->candidates;
        }
        else if (const auto* sd = std::get_if<ndn::SendData>(&a)) {
          out = sd->face;
          dir = ndn::Direction::DOWN;
          cand = &sd->candidates;
        }
        if (cand == nullptr || !fw.face(out).carries_frames())
          continue;
        auto dsts = ndn::select_frame_destination(dir, mode, *cand);
        bool unicast_dir = dir == ndn::Direction::UP ? mode.up_unicast : mode.down_unicast;
        for (auto d : dsts) {
          if (!unicast_dir && !d.is_broadcast())
            fail(std::string(mode.label()) + " emitted a unicast frame");
          if (d.is_broadcast() && unicast_dir && !cand->empty())
            fail(std::string(mode.label()) + " broadcast despite known candidates");
        }
        if (dsts.empty())
          fail("no frame destination");
      }

      // learning soundness
      for (const auto& [n, e] : fw.pit().entries())
        for (const auto& rec : e.in_records)
          for (auto m : rec.sender_macs)
            if (!seen_interest_src.count({rec.face, m}))
              fail("PIT sender " + m.to_string() + " never sent on face " + std::to_string(rec.face));
      for (const auto& [p, e] : fw.fib().entries())
        for (const auto& nh : e.next_hops)
          for (const auto& l : nh.learned_macs)
            if (!seen_data_src.count({nh.face, l.mac}))
              fail("FIB learned " + l.mac.to_string() + " never sent data on face " +
                   std::to_string(nh.face));

      if (fw.cs().size() > cfg.cs_capacity)
        fail("CS above capacity");
      if (fw.cs().lru_order() != std::vector<Name>(cs_oracle.q.begin(), cs_oracle.q.end()))
        fail("CS order differs from reference LRU");
    }
    ++r.cases;
  }
  return r;
}

} // namespace vndn::oracle
