#pragma once

#include <charconv>
#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace vndn::ndn {

/**
 * Hierarchical content name, e.g. /veh/7/42.
 *
 * Components are opaque byte strings. A zero-component name is the root
 * prefix "/", which is only meaningful as a FIB prefix; packets must carry
 * at least one component (see is_valid_packet_name()).
 */
class Name
{
public:
  /// Upper bound on the TLV-encoded name length.
  static constexpr std::size_t MAX_ENCODED_SIZE = 8192;

  Name() = default;

  explicit Name(std::vector<std::string> components)
    : m_components(std::move(components))
  {
  }

  /// Parses a URI-style name. Empty components ("//") are skipped.
  static Name
  parse(std::string_view uri)
  {
    Name n;
    std::size_t pos = 0;
    while (pos < uri.size()) {
      if (uri[pos] == '/') {
        ++pos;
        continue;
      }
      auto end = uri.find('/', pos);
      if (end == std::string_view::npos)
        end = uri.size();
      n.m_components.emplace_back(uri.substr(pos, end - pos));
      pos = end;
    }
    return n;
  }

  Name&
  append(std::string component)
  {
    m_components.push_back(std::move(component));
    return *this;
  }

  Name&
  append_number(std::uint64_t value)
  {
    return append(std::to_string(value));
  }

  std::size_t
  size() const noexcept
  {
    return m_components.size();
  }

  bool
  empty() const noexcept
  {
    return m_components.empty();
  }

  const std::string&
  at(std::size_t i) const
  {
    return m_components.at(i);
  }

  const std::vector<std::string>&
  components() const noexcept
  {
    return m_components;
  }

  /// First @p n components.
  Name
  prefix(std::size_t n) const
  {
    if (n >= m_components.size())
      return *this;
    return Name(std::vector<std::string>(m_components.begin(),
                                         m_components.begin() + static_cast<std::ptrdiff_t>(n)));
  }

  /// True iff this name's components are a leading sublist of @p other's.
  bool
  is_prefix_of(const Name& other) const noexcept
  {
    if (m_components.size() > other.m_components.size())
      return false;
    for (std::size_t i = 0; i < m_components.size(); ++i) {
      if (m_components[i] != other.m_components[i])
        return false;
    }
    return true;
  }

  /// Final component read as a sequence number; accepts "42" and "seq=42".
  std::optional<std::uint64_t>
  sequence_number() const
  {
    if (m_components.empty())
      return std::nullopt;
    std::string_view c = m_components.back();
    if (c.starts_with("seq="))
      c.remove_prefix(4);
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(c.data(), c.data() + c.size(), v);
    if (ec != std::errc{} || ptr != c.data() + c.size() || c.empty())
      return std::nullopt;
    return v;
  }

  /// Size of the TLV encoding: per-component type+length header plus the outer Name TLV header.
  std::size_t
  encoded_size() const noexcept
  {
    std::size_t inner = 0;
    for (const auto& c : m_components)
      inner += tlv_header_size(c.size()) + c.size();
    return tlv_header_size(inner) + inner;
  }

  std::string
  to_uri() const
  {
    if (m_components.empty())
      return "/";
    std::string out;
    for (const auto& c : m_components) {
      out += '/';
      out += c;
    }
    return out;
  }

  friend bool operator==(const Name&, const Name&) = default;
  friend std::strong_ordering operator<=>(const Name&, const Name&) = default;

  friend std::ostream&
  operator<<(std::ostream& os, const Name& n)
  {
    return os << n.to_uri();
  }

private:
  static constexpr std::size_t
  tlv_header_size(std::size_t length) noexcept
  {
    // 1-byte type, variable-length length field
    return 1 + (length < 253 ? 1 : (length <= 0xFFFF ? 3 : 5));
  }

  std::vector<std::string> m_components;
};

/// Packets must name at least one component and fit the encoding limit.
inline bool
is_valid_packet_name(const Name& n) noexcept
{
  return !n.empty() && n.encoded_size() <= Name::MAX_ENCODED_SIZE;
}

} // namespace vndn::ndn

template<>
struct std::hash<vndn::ndn::Name>
{
  std::size_t
  operator()(const vndn::ndn::Name& n) const noexcept
  {
    std::size_t h = n.size();
    for (const auto& c : n.components())
      h ^= std::hash<std::string>{}(c) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }
};
