#pragma once

#include <compare>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <ostream>
#include <string>

namespace vndn::ndn {

/// 48-bit link-layer address.
class MacAddress
{
public:
  static constexpr std::uint64_t MASK = 0xFFFF'FFFF'FFFFULL;

  constexpr MacAddress() = default;

  constexpr explicit MacAddress(std::uint64_t value)
    : m_value(value & MASK)
  {
  }

  /// Locally administered unicast address derived from a node index: 02:00:xx:xx:xx:xx.
  static constexpr MacAddress
  from_index(std::uint32_t index)
  {
    return MacAddress(0x0200'0000'0000ULL | index);
  }

  constexpr std::uint64_t
  value() const noexcept
  {
    return m_value;
  }

  constexpr bool
  is_broadcast() const noexcept
  {
    return m_value == MASK;
  }

  std::string
  to_string() const
  {
    char buf[18];
    std::snprintf(buf, sizeof(buf), "%02x:%02x:%02x:%02x:%02x:%02x",
                  unsigned((m_value >> 40) & 0xFF), unsigned((m_value >> 32) & 0xFF),
                  unsigned((m_value >> 24) & 0xFF), unsigned((m_value >> 16) & 0xFF),
                  unsigned((m_value >> 8) & 0xFF), unsigned(m_value & 0xFF));
    return buf;
  }

  friend constexpr auto operator<=>(const MacAddress&, const MacAddress&) = default;

  friend std::ostream&
  operator<<(std::ostream& os, const MacAddress& m)
  {
    return os << m.to_string();
  }

private:
  std::uint64_t m_value = 0;
};

inline constexpr MacAddress BROADCAST_MAC{MacAddress::MASK};

} // namespace vndn::ndn

template<>
struct std::hash<vndn::ndn::MacAddress>
{
  std::size_t
  operator()(const vndn::ndn::MacAddress& m) const noexcept
  {
    return std::hash<std::uint64_t>{}(m.value());
  }
};
