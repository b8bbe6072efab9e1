#pragma once

#include "vndn/common.hpp"
#include "vndn/ndn/mac.hpp"
#include "vndn/ndn/packet.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <queue>
#include <set>
#include <vector>

namespace vndn::ndn {

struct PitInRecord
{
  FaceId face = INVALID_FACE;
  std::uint32_t nonce = 0;
  Time expiry{0};
  /// Frame sources seen on this face for this name, in first-seen order (set semantics).
  std::vector<MacAddress> sender_macs;

  void
  add_sender(MacAddress mac)
  {
    if (std::find(sender_macs.begin(), sender_macs.end(), mac) == sender_macs.end())
      sender_macs.push_back(mac);
  }
};

struct PitOutRecord
{
  FaceId face = INVALID_FACE;
  std::uint32_t nonce = 0;
  Time expiry{0};
};

struct PitEntry
{
  Name name;
  std::vector<PitInRecord> in_records;
  std::vector<PitOutRecord> out_records;

  PitInRecord*
  find_in_record(FaceId face)
  {
    auto it = std::find_if(in_records.begin(), in_records.end(),
                           [face](const auto& r) { return r.face == face; });
    return it == in_records.end() ? nullptr : &*it;
  }

  PitOutRecord*
  find_out_record(FaceId face)
  {
    auto it = std::find_if(out_records.begin(), out_records.end(),
                           [face](const auto& r) { return r.face == face; });
    return it == out_records.end() ? nullptr : &*it;
  }

  bool
  has_nonce(std::uint32_t nonce) const
  {
    return std::any_of(in_records.begin(), in_records.end(),
                       [nonce](const auto& r) { return r.nonce == nonce; }) ||
           std::any_of(out_records.begin(), out_records.end(),
                       [nonce](const auto& r) { return r.nonce == nonce; });
  }

  bool
  has_live_out_record(Time now) const
  {
    return std::any_of(out_records.begin(), out_records.end(),
                       [now](const auto& r) { return r.expiry > now; });
  }
};

/**
 * Pending Interest Table.
 *
 * Expiry is tracked with a lazily-validated min-heap so that expire() costs
 * O(log n) per stale record instead of a full sweep.
 */
class Pit
{
public:
  explicit Pit(std::optional<std::size_t> capacity = std::nullopt)
    : m_capacity(capacity)
  {
  }

  std::size_t
  size() const noexcept
  {
    return m_entries.size();
  }

  bool
  full() const noexcept
  {
    return m_capacity && m_entries.size() >= *m_capacity;
  }

  PitEntry*
  find(const Name& name)
  {
    auto it = m_entries.find(name);
    return it == m_entries.end() ? nullptr : &it->second;
  }

  /// Returns the entry and whether it was created. Caller checks full() first.
  std::pair<PitEntry*, bool>
  insert(const Name& name)
  {
    auto [it, created] = m_entries.try_emplace(name);
    if (created)
      it->second.name = name;
    return {&it->second, created};
  }

  void
  erase(const Name& name)
  {
    m_entries.erase(name);
  }

  /// Must be called whenever a record's expiry is set or refreshed.
  void
  schedule_expiry(const Name& name, Time expiry)
  {
    m_expiry_heap.push({expiry, name});
  }

  /**
   * Removes every in/out record with expiry <= now. Entries left with no
   * live in-record are deleted and returned.
   */
  std::vector<PitEntry>
  expire(Time now)
  {
    std::vector<PitEntry> expired;
    while (!m_expiry_heap.empty() && m_expiry_heap.top().first <= now) {
      Name name = m_expiry_heap.top().second;
      m_expiry_heap.pop();
      auto it = m_entries.find(name);
      if (it == m_entries.end())
        continue;
      auto& e = it->second;
      std::erase_if(e.in_records, [now](const auto& r) { return r.expiry <= now; });
      std::erase_if(e.out_records, [now](const auto& r) { return r.expiry <= now; });
      if (e.in_records.empty()) {
        expired.push_back(std::move(e));
        m_entries.erase(it);
      }
    }
    return expired;
  }

  const std::map<Name, PitEntry>&
  entries() const noexcept
  {
    return m_entries;
  }

  void
  dump(std::ostream& os) const
  {
    for (const auto& [name, e] : m_entries) {
      for (const auto& r : e.in_records) {
        os << "pit-in " << name << " face=" << r.face << " nonce=" << r.nonce
           << " expiry=" << to_seconds(r.expiry) << " macs=";
        for (std::size_t i = 0; i < r.sender_macs.size(); ++i)
          os << (i ? "," : "") << r.sender_macs[i];
        os << '\n';
      }
      for (const auto& r : e.out_records) {
        os << "pit-out " << name << " face=" << r.face << " nonce=" << r.nonce
           << " expiry=" << to_seconds(r.expiry) << '\n';
      }
    }
  }

private:
  using HeapItem = std::pair<Time, Name>;

  std::optional<std::size_t> m_capacity;
  std::map<Name, PitEntry> m_entries;
  std::priority_queue<HeapItem, std::vector<HeapItem>, std::greater<>> m_expiry_heap;
};

/// Recently seen (name, nonce) pairs; catches loops after the PIT entry is gone.
class DeadNonceList
{
public:
  void
  add(const Name& name, std::uint32_t nonce, Time expiry)
  {
    if (m_set.emplace(name, nonce).second)
      m_queue.push({expiry, {name, nonce}});
  }

  bool
  contains(const Name& name, std::uint32_t nonce) const
  {
    return m_set.count({name, nonce}) != 0;
  }

  void
  expire(Time now)
  {
    while (!m_queue.empty() && m_queue.top().first <= now) {
      m_set.erase(m_queue.top().second);
      m_queue.pop();
    }
  }

  std::size_t
  size() const noexcept
  {
    return m_set.size();
  }

private:
  using Key = std::pair<Name, std::uint32_t>;
  using Item = std::pair<Time, Key>;

  std::set<Key> m_set;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> m_queue;
};

} // namespace vndn::ndn
