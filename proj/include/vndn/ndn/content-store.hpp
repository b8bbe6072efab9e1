#pragma once

#include "vndn/ndn/packet.hpp"

#include <list>
#include <optional>
#include <ostream>
#include <unordered_map>

namespace vndn::ndn {

/**
 * Packet cache with exact-name lookup and LRU replacement.
 *
 * A lookup hit refreshes recency. Capacity 0 disables caching entirely.
 */
class ContentStore
{
public:
  explicit ContentStore(std::size_t capacity = 0)
    : m_capacity(capacity)
  {
  }

  std::size_t
  capacity() const noexcept
  {
    return m_capacity;
  }

  std::size_t
  size() const noexcept
  {
    return m_index.size();
  }

  std::optional<Data>
  lookup(const Name& name)
  {
    auto it = m_index.find(name);
    if (it == m_index.end())
      return std::nullopt;
    m_lru.splice(m_lru.end(), m_lru, it->second);
    return *it->second;
  }

  /// Returns false when nothing was stored (capacity 0).
  bool
  insert(const Data& data)
  {
    if (m_capacity == 0)
      return false;

    if (auto it = m_index.find(data.name); it != m_index.end()) {
      *it->second = data;
      m_lru.splice(m_lru.end(), m_lru, it->second);
      return true;
    }

    if (m_index.size() >= m_capacity) {
      m_index.erase(m_lru.front().name);
      m_lru.pop_front();
    }
    m_lru.push_back(data);
    m_index.emplace(data.name, std::prev(m_lru.end()));
    return true;
  }

  /// Names from least to most recently used.
  std::vector<Name>
  lru_order() const
  {
    std::vector<Name> out;
    out.reserve(m_lru.size());
    for (const auto& d : m_lru)
      out.push_back(d.name);
    return out;
  }

  void
  dump(std::ostream& os) const
  {
    for (const auto& d : m_lru)
      os << "cs " << d.name << " payload=" << d.payload_size << '\n';
  }

private:
  std::size_t m_capacity;
  std::list<Data> m_lru; // front = least recently used
  std::unordered_map<Name, std::list<Data>::iterator> m_index;
};

} // namespace vndn::ndn
