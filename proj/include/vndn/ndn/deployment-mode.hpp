#pragma once

#include "vndn/common.hpp"

#include <array>
#include <optional>
#include <string>
#include <string_view>

namespace vndn::ndn {

/**
 * Which traffic directions use link-layer unicast.
 *
 *   Standard  broadcast both ways
 *   Up        unicast Interests only
 *   Down      unicast Data only
 *   Proposal  unicast both ways
 */
struct DeploymentMode
{
  bool up_unicast = false;
  bool down_unicast = false;

  static constexpr DeploymentMode standard() { return {false, false}; }
  static constexpr DeploymentMode up() { return {true, false}; }
  static constexpr DeploymentMode down() { return {false, true}; }
  static constexpr DeploymentMode proposal() { return {true, true}; }

  friend constexpr bool operator==(const DeploymentMode&, const DeploymentMode&) = default;

  /// "Standard", "Up", "Down" or "Proposal".
  std::string_view
  label() const noexcept
  {
    if (up_unicast)
      return down_unicast ? "Proposal" : "Up";
    return down_unicast ? "Down" : "Standard";
  }

  /// Lower-case token as used on the command line and in config files.
  std::string
  token() const
  {
    std::string s(label());
    for (auto& c : s)
      c = static_cast<char>(c >= 'A' && c <= 'Z' ? c - 'A' + 'a' : c);
    return s;
  }

  static std::optional<DeploymentMode>
  parse(std::string_view s)
  {
    for (auto m : all()) {
      if (s == m.token() || s == m.label())
        return m;
    }
    return std::nullopt;
  }

  /// Evaluation order: Standard, Up, Down, Proposal.
  static constexpr std::array<DeploymentMode, 4>
  all()
  {
    return {standard(), up(), down(), proposal()};
  }
};

enum class Direction {
  UP,   ///< Interests, toward producers
  DOWN, ///< Data, toward consumers
};

} // namespace vndn::ndn
