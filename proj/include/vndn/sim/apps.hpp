#pragma once

#include "vndn/ndn/packet.hpp"
#include "vndn/random.hpp"

#include <cmath>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace vndn::sim {

enum class AppKind {
  DISTINCT_PREFIX, ///< ConsumerCbr on a per-vehicle prefix
  SHARED_PREFIX,   ///< sequence number derived from simulation time, shared by all such vehicles
};

constexpr std::string_view
to_string(AppKind k)
{
  return k == AppKind::DISTINCT_PREFIX ? "distinct" : "shared";
}

struct ConsumerSpec
{
  AppKind kind = AppKind::DISTINCT_PREFIX;
  double rate = 75.0; ///< Interests per second, fixed for the whole run
  ndn::Name prefix;
};

/// Per-application counters and outstanding requests.
struct ConsumerState
{
  std::uint64_t next_seq = 0;
  std::uint64_t interests_sent = 0;
  std::uint64_t data_received = 0;
  std::uint64_t retransmissions = 0;
  /// Outstanding names and how many unsatisfied expressions each has.
  std::map<ndn::Name, std::uint32_t> outstanding;

  /// Counts @p name as received if it was requested. Returns whether it was.
  bool
  on_data(const ndn::Name& name)
  {
    auto it = outstanding.find(name);
    if (it == outstanding.end())
      return false;
    outstanding.erase(it);
    ++data_received;
    return true;
  }
};

/// floor(now * rate) computed without double rounding at integer boundaries.
inline std::uint64_t
time_sequence(Time now, double rate)
{
  if (rate == std::floor(rate) && rate >= 0 && rate < 1e6) {
    auto r = static_cast<std::int64_t>(rate);
    return static_cast<std::uint64_t>(now.count() * r / 1'000'000'000);
  }
  return static_cast<std::uint64_t>(
    std::floor(static_cast<long double>(now.count()) * rate / 1e9L));
}

/**
 * Name of the next Interest an application expresses.
 *
 * Distinct-prefix apps count 0, 1, 2, ... under their own prefix.
 * Shared-prefix apps use floor(now * shared_rate), so every synchronised
 * vehicle asks for the same name at the same instant.
 */
inline ndn::Name
consumer_next_name(const ConsumerSpec& spec, ConsumerState& state, Time now, double shared_rate)
{
  ndn::Name n = spec.prefix;
  if (spec.kind == AppKind::DISTINCT_PREFIX)
    n.append_number(state.next_seq++);
  else
    n.append_number(time_sequence(now, shared_rate));
  return n;
}

/// Answers an Interest under one of @p prefixes with a Data of @p payload_size bytes.
inline std::optional<ndn::Data>
producer_on_interest(const ndn::Interest& interest, std::span<const ndn::Name> prefixes,
                     std::size_t payload_size = ndn::DEFAULT_PAYLOAD_SIZE)
{
  for (const auto& p : prefixes) {
    if (p.is_prefix_of(interest.name))
      return ndn::Data{interest.name, payload_size, Time{0}};
  }
  return std::nullopt;
}

inline ndn::Name
distinct_prefix(std::uint32_t vehicle)
{
  return ndn::Name::parse("/veh").append_number(vehicle);
}

inline const ndn::Name&
shared_prefix()
{
  static const ndn::Name n = ndn::Name::parse("/shared");
  return n;
}

/**
 * Application for each vehicle (index = vehicle id).
 *
 * Rates are drawn uniformly in [rate_min, rate_max] from the "app-rates"
 * stream. In scenario 2, ceil(n/2) vehicles picked by a seeded partial
 * Fisher-Yates shuffle run the shared-prefix app.
 */
inline std::vector<ConsumerSpec>
assign_apps(std::uint32_t vehicles, int scenario_id, std::uint64_t seed, double rate_min = 50.0,
            double rate_max = 100.0)
{
  if (scenario_id != 1 && scenario_id != 2)
    throw std::invalid_argument("assign_apps: scenario must be 1 or 2");

  Engine rates = make_stream(seed, "app-rates");
  std::vector<ConsumerSpec> specs(vehicles);
  for (std::uint32_t v = 0; v < vehicles; ++v) {
    specs[v].kind = AppKind::DISTINCT_PREFIX;
    specs[v].rate = uniform(rates, rate_min, rate_max);
    specs[v].prefix = distinct_prefix(v);
  }

  if (scenario_id == 2) {
    Engine pick = make_stream(seed, "app-assignment");
    std::vector<std::uint32_t> idx(vehicles);
    std::iota(idx.begin(), idx.end(), 0u);
    std::uint32_t shared = (vehicles + 1) / 2;
    for (std::uint32_t i = 0; i < shared; ++i) {
      auto j = i + static_cast<std::uint32_t>(uniform_below(pick, vehicles - i));
      std::swap(idx[i], idx[j]);
      specs[idx[i]].kind = AppKind::SHARED_PREFIX;
      specs[idx[i]].prefix = shared_prefix();
    }
  }
  return specs;
}

} // namespace vndn::sim
