#pragma once

#include "vndn/common.hpp"
#include "vndn/ndn/mac.hpp"
#include "vndn/ndn/name.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <ostream>
#include <vector>

namespace vndn::ndn {

struct LearnedMac
{
  MacAddress mac;
  Time last_seen{0};
};

struct NextHop
{
  FaceId face = INVALID_FACE;
  std::uint32_t cost = 0;
  /// Neighbours that returned Data through this hop, oldest observation first.
  std::vector<LearnedMac> learned_macs;

  /// Records an observation; a known MAC is refreshed and becomes the most recent.
  void
  learn(MacAddress mac, Time now)
  {
    std::erase_if(learned_macs, [mac](const auto& l) { return l.mac == mac; });
    learned_macs.push_back({mac, now});
  }

  void
  evict_stale(Time now, Time ttl)
  {
    std::erase_if(learned_macs, [&](const auto& l) { return now - l.last_seen > ttl; });
  }

  /// Live MACs, oldest first.
  std::vector<MacAddress>
  live_macs(Time now, Time ttl) const
  {
    std::vector<MacAddress> out;
    for (const auto& l : learned_macs) {
      if (now - l.last_seen <= ttl)
        out.push_back(l.mac);
    }
    return out;
  }
};

struct FibEntry
{
  Name prefix;
  std::vector<NextHop> next_hops;

  NextHop*
  find_next_hop(FaceId face)
  {
    auto it = std::find_if(next_hops.begin(), next_hops.end(),
                           [face](const auto& nh) { return nh.face == face; });
    return it == next_hops.end() ? nullptr : &*it;
  }
};

class Fib
{
public:
  /// Adds or updates a route. Next hops stay sorted by (cost, face).
  FibEntry&
  add_next_hop(const Name& prefix, FaceId face, std::uint32_t cost = 0)
  {
    auto& e = m_entries[prefix];
    e.prefix = prefix;
    if (auto* nh = e.find_next_hop(face)) {
      nh->cost = cost;
    }
    else {
      e.next_hops.push_back({face, cost, {}});
    }
    std::sort(e.next_hops.begin(), e.next_hops.end(), [](const auto& a, const auto& b) {
      return a.cost != b.cost ? a.cost < b.cost : a.face < b.face;
    });
    return e;
  }

  /// Entry with the longest prefix of @p name, or nullptr.
  FibEntry*
  longest_prefix_match(const Name& name)
  {
    for (std::size_t len = name.size() + 1; len-- > 0;) {
      auto it = m_entries.find(name.prefix(len));
      if (it != m_entries.end())
        return &it->second;
    }
    return nullptr;
  }

  FibEntry*
  find_exact(const Name& prefix)
  {
    auto it = m_entries.find(prefix);
    return it == m_entries.end() ? nullptr : &it->second;
  }

  std::size_t
  size() const noexcept
  {
    return m_entries.size();
  }

  const std::map<Name, FibEntry>&
  entries() const noexcept
  {
    return m_entries;
  }

  void
  dump(std::ostream& os) const
  {
    for (const auto& [prefix, e] : m_entries) {
      for (const auto& nh : e.next_hops) {
        os << "fib " << prefix << " face=" << nh.face << " cost=" << nh.cost << " macs=";
        for (std::size_t i = 0; i < nh.learned_macs.size(); ++i) {
          os << (i ? "," : "") << nh.learned_macs[i].mac << '@'
             << to_seconds(nh.learned_macs[i].last_seen);
        }
        os << '\n';
      }
    }
  }

private:
  std::map<Name, FibEntry> m_entries;
};

} // namespace vndn::ndn
