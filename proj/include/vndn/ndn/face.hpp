#pragma once

#include "vndn/common.hpp"

#include <string_view>

namespace vndn::ndn {

enum class FaceKind {
  WIRELESS,
  WIRED_P2P,
  APPLICATION,
};

constexpr std::string_view
to_string(FaceKind k)
{
  switch (k) {
    case FaceKind::WIRELESS:
      return "wireless";
    case FaceKind::WIRED_P2P:
      return "wired-p2p";
    case FaceKind::APPLICATION:
      return "application";
  }
  return "?";
}

struct Face
{
  FaceId id = INVALID_FACE;
  FaceKind kind = FaceKind::APPLICATION;
  NodeId node = 0;

  /// Only wireless faces carry link-layer frames and therefore MAC addresses.
  bool
  carries_frames() const noexcept
  {
    return kind == FaceKind::WIRELESS;
  }
};

} // namespace vndn::ndn
