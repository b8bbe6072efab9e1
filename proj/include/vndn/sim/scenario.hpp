#pragma once

#include "vndn/mobility/trace.hpp"
#include "vndn/ndn/deployment-mode.hpp"
#include "vndn/ndn/packet.hpp"
#include "vndn/random.hpp"
#include "vndn/wireless/phy.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <functional>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace vndn::sim {

struct TopologyConfig
{
  /// AP positions as fractions of the avenue length.
  std::vector<double> ap_positions{1.0 / 6, 3.0 / 6, 5.0 / 6};
  double handover_hysteresis = 5.0; ///< meters
  Time association_interval = std::chrono::milliseconds(100);
  std::size_t ap_cs_capacity = 10'000;
  std::size_t router_cs_capacity = 10'000;
  std::size_t vehicle_cs_capacity = 0;
  std::size_t producer_cs_capacity = 0;
  double ap_router_rate = 1e9;
  Time ap_router_delay = std::chrono::microseconds(500);
  double router_producer_rate = 1e9;
  Time router_producer_delay = std::chrono::milliseconds(30);
  Time mac_ttl = std::chrono::seconds(2);
  std::size_t pit_capacity = 0; ///< 0 = unbounded
};

struct AppsConfig
{
  int scenario = 1;
  double rate_min = 50.0;
  double rate_max = 100.0;
  double shared_rate = 100.0;
  Time interest_lifetime = ndn::DEFAULT_INTEREST_LIFETIME;
  std::size_t payload_bytes = ndn::DEFAULT_PAYLOAD_SIZE;
  bool retransmit = false;
  unsigned max_retransmissions = 1;
};

struct Durations
{
  double sim = 300.0;  ///< applications stop at this time (s)
  double drain = 10.0; ///< extra time for in-flight packets before bookkeeping stops (s)
};

/// Everything that defines one run.
struct Scenario
{
  wireless::PhyProfile phy;
  TopologyConfig topology;
  mobility::TrafficParams traffic;
  std::string trace_file; ///< when set, replaces the synthetic generator
  AppsConfig apps;
  ndn::DeploymentMode mode = ndn::DeploymentMode::proposal();
  std::uint64_t seed = 1;
  Durations durations;

  /// Instance label as used in results: "Proposal-1", "Standard-2", ...
  std::string
  instance() const
  {
    return std::string(mode.label()) + "-" + std::to_string(apps.scenario);
  }

  void
  validate() const
  {
    phy.validate();
    traffic.validate();
    if (topology.ap_positions.empty())
      throw ConfigError("topology.ap_positions: at least one AP is required");
    for (double f : topology.ap_positions) {
      if (f < 0 || f > 1)
        throw ConfigError("topology.ap_positions: fractions must lie in [0, 1]");
    }
    if (topology.handover_hysteresis < 0)
      throw ConfigError("topology.handover_hysteresis_m: must be >= 0");
    if (topology.association_interval <= Time::zero())
      throw ConfigError("topology.association_interval_ms: must be > 0");
    if (!(topology.ap_router_rate > 0) || !(topology.router_producer_rate > 0))
      throw ConfigError("topology: link rates must be > 0");
    if (apps.scenario != 1 && apps.scenario != 2)
      throw ConfigError("apps.scenario: must be 1 or 2");
    if (!(apps.rate_min > 0) || apps.rate_max < apps.rate_min)
      throw ConfigError("apps.rate_min/rate_max: need 0 < rate_min <= rate_max");
    if (!(apps.shared_rate > 0))
      throw ConfigError("apps.shared_rate: must be > 0");
    if (apps.interest_lifetime <= Time::zero())
      throw ConfigError("apps.interest_lifetime_s: must be > 0");
    if (apps.payload_bytes == 0)
      throw ConfigError("apps.payload_bytes: must be > 0");
    if (!(durations.sim > 0))
      throw ConfigError("durations.sim_s: must be > 0");
    if (durations.drain < 0)
      throw ConfigError("durations.drain_s: must be >= 0");
  }
};

namespace detail {

inline std::string
fmt_double(double x)
{
  char buf[32];
  auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, p);
}

inline std::string
trim(std::string s)
{
  auto b = s.find_first_not_of(" \t\r\n");
  auto e = s.find_last_not_of(" \t\r\n");
  return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

inline double
parse_double(const std::string& field, const std::string& text)
{
  std::string t = trim(text);
  double v = 0;
  auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc{} || p != t.data() + t.size() || t.empty())
    throw ConfigError(field + ": expected a number, got '" + text + "'");
  return v;
}

inline std::uint64_t
parse_uint(const std::string& field, const std::string& text)
{
  std::string t = trim(text);
  std::uint64_t v = 0;
  auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc{} || p != t.data() + t.size() || t.empty())
    throw ConfigError(field + ": expected a non-negative integer, got '" + text + "'");
  return v;
}

inline bool
parse_bool(const std::string& field, const std::string& text)
{
  std::string t = trim(text);
  if (t == "true" || t == "1" || t == "yes" || t == "on")
    return true;
  if (t == "false" || t == "0" || t == "no" || t == "off")
    return false;
  throw ConfigError(field + ": expected true/false, got '" + text + "'");
}

inline std::vector<double>
parse_list(const std::string& field, const std::string& text)
{
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!trim(item).empty())
      out.push_back(parse_double(field, item));
  }
  return out;
}

inline std::string
fmt_list(const std::vector<double>& v)
{
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i)
      s += ',';
    s += fmt_double(v[i]);
  }
  return s;
}

struct Field
{
  const char* section;
  const char* key;
  std::function<void(Scenario&, const std::string& field, const std::string& value)> set;
  std::function<std::string(const Scenario&)> get;
};

/// Exact division keeps round values round (30 ms prints as 30, not 30.000000000000004).
inline double
time_in(Time t, double ns_per_unit)
{
  return static_cast<double>(t.count()) / ns_per_unit;
}

inline Time
seconds_field(const std::string& f, const std::string& v, double scale)
{
  double x = parse_double(f, v);
  return from_seconds(x * scale);
}

// clang-format off
inline const std::vector<Field>&
schema()
{
  using S = Scenario;
  using Str = const std::string&;
  static const std::vector<Field> fields = {
    {"phy", "unicast_rate_mbps",
     [](S& s, Str f, Str v) { s.phy.unicast_rate = parse_double(f, v) * 1e6; },
     [](const S& s) { return fmt_double(s.phy.unicast_rate / 1e6); }},
    {"phy", "basic_rate_mbps",
     [](S& s, Str f, Str v) { s.phy.basic_rate = parse_double(f, v) * 1e6; },
     [](const S& s) { return fmt_double(s.phy.basic_rate / 1e6); }},
    {"phy", "per_frame_overhead_us",
     [](S& s, Str f, Str v) { s.phy.per_frame_overhead = seconds_field(f, v, 1e-6); },
     [](const S& s) { return fmt_double(time_in(s.phy.per_frame_overhead, 1e3)); }},
    {"phy", "ack_overhead_us",
     [](S& s, Str f, Str v) { s.phy.ack_overhead = seconds_field(f, v, 1e-6); },
     [](const S& s) { return fmt_double(time_in(s.phy.ack_overhead, 1e3)); }},
    {"phy", "retry_limit",
     [](S& s, Str f, Str v) { s.phy.retry_limit = static_cast<unsigned>(parse_uint(f, v)); },
     [](const S& s) { return std::to_string(s.phy.retry_limit); }},
    {"phy", "range_m",
     [](S& s, Str f, Str v) { s.phy.range = parse_double(f, v); },
     [](const S& s) { return fmt_double(s.phy.range); }},
    {"phy", "header_bytes",
     [](S& s, Str f, Str v) { s.phy.header_bytes = parse_uint(f, v); },
     [](const S& s) { return std::to_string(s.phy.header_bytes); }},
    {"phy", "loss_probability",
     [](S& s, Str f, Str v) { s.phy.loss_probability = parse_double(f, v); },
     [](const S& s) { return fmt_double(s.phy.loss_probability); }},
    {"phy", "max_queue_delay_ms",
     [](S& s, Str f, Str v) { s.phy.max_queue_delay = seconds_field(f, v, 1e-3); },
     [](const S& s) { return fmt_double(time_in(s.phy.max_queue_delay, 1e6)); }},

    {"topology", "ap_positions",
     [](S& s, Str f, Str v) { s.topology.ap_positions = parse_list(f, v); },
     [](const S& s) { return fmt_list(s.topology.ap_positions); }},
    {"topology", "handover_hysteresis_m",
     [](S& s, Str f, Str v) { s.topology.handover_hysteresis = parse_double(f, v); },
     [](const S& s) { return fmt_double(s.topology.handover_hysteresis); }},
    {"topology", "association_interval_ms",
     [](S& s, Str f, Str v) { s.topology.association_interval = seconds_field(f, v, 1e-3); },
     [](const S& s) { return fmt_double(time_in(s.topology.association_interval, 1e6)); }},
    {"topology", "ap_cs_capacity",
     [](S& s, Str f, Str v) { s.topology.ap_cs_capacity = parse_uint(f, v); },
     [](const S& s) { return std::to_string(s.topology.ap_cs_capacity); }},
    {"topology", "router_cs_capacity",
     [](S& s, Str f, Str v) { s.topology.router_cs_capacity = parse_uint(f, v); },
     [](const S& s) { return std::to_string(s.topology.router_cs_capacity); }},
    {"topology", "vehicle_cs_capacity",
     [](S& s, Str f, Str v) { s.topology.vehicle_cs_capacity = parse_uint(f, v); },
     [](const S& s) { return std::to_string(s.topology.vehicle_cs_capacity); }},
    {"topology", "producer_cs_capacity",
     [](S& s, Str f, Str v) { s.topology.producer_cs_capacity = parse_uint(f, v); },
     [](const S& s) { return std::to_string(s.topology.producer_cs_capacity); }},
    {"topology", "ap_router_rate_gbps",
     [](S& s, Str f, Str v) { s.topology.ap_router_rate = parse_double(f, v) * 1e9; },
     [](const S& s) { return fmt_double(s.topology.ap_router_rate / 1e9); }},
    {"topology", "ap_router_delay_ms",
     [](S& s, Str f, Str v) { s.topology.ap_router_delay = seconds_field(f, v, 1e-3); },
     [](const S& s) { return fmt_double(time_in(s.topology.ap_router_delay, 1e6)); }},
    {"topology", "router_producer_rate_gbps",
     [](S& s, Str f, Str v) { s.topology.router_producer_rate = parse_double(f, v) * 1e9; },
     [](const S& s) { return fmt_double(s.topology.router_producer_rate / 1e9); }},
    {"topology", "router_producer_delay_ms",
     [](S& s, Str f, Str v) { s.topology.router_producer_delay = seconds_field(f, v, 1e-3); },
     [](const S& s) { return fmt_double(time_in(s.topology.router_producer_delay, 1e6)); }},
    {"topology", "mac_ttl_s",
     [](S& s, Str f, Str v) { s.topology.mac_ttl = seconds_field(f, v, 1.0); },
     [](const S& s) { return fmt_double(time_in(s.topology.mac_ttl, 1e9)); }},
    {"topology", "pit_capacity",
     [](S& s, Str f, Str v) { s.topology.pit_capacity = parse_uint(f, v); },
     [](const S& s) { return std::to_string(s.topology.pit_capacity); }},

    {"traffic", "avenue_length_m",
     [](S& s, Str f, Str v) { s.traffic.avenue_length = parse_double(f, v); },
     [](const S& s) { return fmt_double(s.traffic.avenue_length); }},
    {"traffic", "vehicle_count",
     [](S& s, Str f, Str v) { s.traffic.vehicle_count = static_cast<std::uint32_t>(parse_uint(f, v)); },
     [](const S& s) { return std::to_string(s.traffic.vehicle_count); }},
    {"traffic", "duration_s",
     [](S& s, Str f, Str v) { s.traffic.duration = parse_double(f, v); },
     [](const S& s) { return fmt_double(s.traffic.duration); }},
    {"traffic", "mean_speed_kmh",
     [](S& s, Str f, Str v) { s.traffic.mean_speed = parse_double(f, v); },
     [](const S& s) { return fmt_double(s.traffic.mean_speed); }},
    {"traffic", "max_speed_kmh",
     [](S& s, Str f, Str v) { s.traffic.max_speed = parse_double(f, v); },
     [](const S& s) { return fmt_double(s.traffic.max_speed); }},
    {"traffic", "bus_stops_m",
     [](S& s, Str f, Str v) { s.traffic.bus_stops = parse_list(f, v); },
     [](const S& s) { return fmt_list(s.traffic.bus_stops); }},
    {"traffic", "stop_dwell_s",
     [](S& s, Str f, Str v) { s.traffic.stop_dwell = parse_double(f, v); },
     [](const S& s) { return fmt_double(s.traffic.stop_dwell); }},
    {"traffic", "bus_fraction",
     [](S& s, Str f, Str v) { s.traffic.bus_fraction = parse_double(f, v); },
     [](const S& s) { return fmt_double(s.traffic.bus_fraction); }},
    {"traffic", "trace_file",
     [](S& s, Str, Str v) { s.trace_file = trim(v); },
     [](const S& s) { return s.trace_file; }},

    {"apps", "scenario",
     [](S& s, Str f, Str v) { s.apps.scenario = static_cast<int>(parse_uint(f, v)); },
     [](const S& s) { return std::to_string(s.apps.scenario); }},
    {"apps", "rate_min",
     [](S& s, Str f, Str v) { s.apps.rate_min = parse_double(f, v); },
     [](const S& s) { return fmt_double(s.apps.rate_min); }},
    {"apps", "rate_max",
     [](S& s, Str f, Str v) { s.apps.rate_max = parse_double(f, v); },
     [](const S& s) { return fmt_double(s.apps.rate_max); }},
    {"apps", "shared_rate",
     [](S& s, Str f, Str v) { s.apps.shared_rate = parse_double(f, v); },
     [](const S& s) { return fmt_double(s.apps.shared_rate); }},
    {"apps", "interest_lifetime_s",
     [](S& s, Str f, Str v) { s.apps.interest_lifetime = seconds_field(f, v, 1.0); },
     [](const S& s) { return fmt_double(time_in(s.apps.interest_lifetime, 1e9)); }},
    {"apps", "payload_bytes",
     [](S& s, Str f, Str v) { s.apps.payload_bytes = parse_uint(f, v); },
     [](const S& s) { return std::to_string(s.apps.payload_bytes); }},
    {"apps", "retransmit",
     [](S& s, Str f, Str v) { s.apps.retransmit = parse_bool(f, v); },
     [](const S& s) { return std::string(s.apps.retransmit ? "true" : "false"); }},
    {"apps", "max_retransmissions",
     [](S& s, Str f, Str v) { s.apps.max_retransmissions = static_cast<unsigned>(parse_uint(f, v)); },
     [](const S& s) { return std::to_string(s.apps.max_retransmissions); }},

    {"mode", "deployment",
     [](S& s, Str f, Str v) {
       auto m = ndn::DeploymentMode::parse(trim(v));
       if (!m)
         throw ConfigError(f + ": expected standard|up|down|proposal, got '" + v + "'");
       s.mode = *m;
     },
     [](const S& s) { return s.mode.token(); }},

    {"seed", "base",
     [](S& s, Str f, Str v) { s.seed = parse_uint(f, v); },
     [](const S& s) { return std::to_string(s.seed); }},

    {"durations", "sim_s",
     [](S& s, Str f, Str v) { s.durations.sim = parse_double(f, v); },
     [](const S& s) { return fmt_double(s.durations.sim); }},
    {"durations", "drain_s",
     [](S& s, Str f, Str v) { s.durations.drain = parse_double(f, v); },
     [](const S& s) { return fmt_double(s.durations.drain); }},
  };
  return fields;
}
// clang-format on

} // namespace detail

/**
 * Reads an INI scenario file. Every key must belong to the schema; the
 * first unknown or malformed entry raises ConfigError naming "section.key".
 */
inline Scenario
parse_scenario(std::istream& in)
{
  namespace pt = boost::property_tree;
  pt::ptree tree;
  try {
    pt::read_ini(in, tree);
  }
  catch (const pt::ini_parser_error& e) {
    throw ConfigError("line " + std::to_string(e.line()) + ": " + e.message());
  }

  Scenario s;
  const auto& fields = detail::schema();
  for (const auto& [section, body] : tree) {
    if (body.empty()) {
      throw ConfigError(section + ": key outside of any section");
    }
    for (const auto& [key, value] : body) {
      std::string name = section + "." + key;
      auto it = std::find_if(fields.begin(), fields.end(), [&](const detail::Field& f) {
        return section == f.section && key == f.key;
      });
      if (it == fields.end())
        throw ConfigError(name + ": unknown key");
      it->set(s, name, value.get_value<std::string>());
    }
  }
  s.validate();
  return s;
}

inline Scenario
load_scenario(const std::string& path)
{
  std::ifstream in(path);
  if (!in)
    throw ConfigError("cannot open config file '" + path + "'");
  return parse_scenario(in);
}

inline Scenario
parse_scenario_string(const std::string& text)
{
  std::istringstream in(text);
  return parse_scenario(in);
}

/// Fully expanded INI text; parse_scenario(to_ini(s)) reproduces s.
/// Without run selectors the deployment and apps.scenario keys are left out.
inline std::string
to_ini(const Scenario& s, bool include_run_selectors = true)
{
  std::string out;
  std::string current;
  for (const auto& f : detail::schema()) {
    std::string section = f.section;
    if (!include_run_selectors &&
        (section == "mode" || (section == "apps" && std::string(f.key) == "scenario")))
      continue;
    if (section != current) {
      if (!current.empty())
        out += '\n';
      out += "[" + section + "]\n";
      current = section;
    }
    out += std::string(f.key) + " = " + f.get(s) + "\n";
  }
  return out;
}

/// Hash of the configuration shared by every instance of a matrix (base seed included).
inline std::string
config_hash(const Scenario& s)
{
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(fnv1a(to_ini(s, false))));
  return buf;
}

} // namespace vndn::sim
