#pragma once

#include "vndn/common.hpp"
#include "vndn/ndn/name.hpp"

#include <cstdint>
#include <variant>

namespace vndn::ndn {

/// Conventional NDN default; the Interest dies in every PIT after this long.
inline constexpr Time DEFAULT_INTEREST_LIFETIME = std::chrono::seconds(4);
inline constexpr std::size_t DEFAULT_PAYLOAD_SIZE = 1024;

struct Interest
{
  Name name;
  std::uint32_t nonce = 0;
  Time lifetime = DEFAULT_INTEREST_LIFETIME;

  /// Name + Nonce(6) + InterestLifetime(6) + outer TLV header(4).
  std::size_t
  encoded_size() const noexcept
  {
    return name.encoded_size() + 6 + 6 + 4;
  }
};

struct Data
{
  Name name;
  std::size_t payload_size = DEFAULT_PAYLOAD_SIZE;
  Time freshness{0};

  /// Name + MetaInfo(8) + Content(TLV header 4) + DigestSha256 SignatureInfo(5) and Value(34)
  /// + outer TLV header(4).
  std::size_t
  encoded_size() const noexcept
  {
    return name.encoded_size() + 8 + (payload_size + 4) + 5 + 34 + 4;
  }
};

using Packet = std::variant<Interest, Data>;

inline std::size_t
encoded_size(const Packet& p)
{
  return std::visit([](const auto& x) { return x.encoded_size(); }, p);
}

inline const Name&
packet_name(const Packet& p)
{
  return std::visit([](const auto& x) -> const Name& { return x.name; }, p);
}

} // namespace vndn::ndn
