#pragma once

#include "vndn/common.hpp"

#include <charconv>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace vndn::stats {

struct NodeMetrics
{
  NodeId id = 0;
  std::string role; ///< vehicle | ap | router | producer
  std::uint64_t nfd_packets_processed = 0;
  std::uint64_t frames_broadcast = 0;
  std::uint64_t frames_unicast = 0;
  double airtime_used_s = 0;
  std::uint64_t handovers = 0;
  std::uint64_t link_losses = 0;
  std::uint64_t queue_drops = 0;
  std::uint64_t unsolicited_data = 0;
  std::uint64_t unsatisfied = 0;

  friend bool operator==(const NodeMetrics&, const NodeMetrics&) = default;
};

struct AppMetrics
{
  NodeId vehicle = 0;
  std::string kind; ///< distinct | shared
  double rate = 0;
  std::uint64_t interests_sent = 0;
  std::uint64_t data_received = 0;

  friend bool operator==(const AppMetrics&, const AppMetrics&) = default;
};

/// Counters of one simulation run.
struct RunMetrics
{
  std::string instance; ///< e.g. "Proposal-1"
  std::uint64_t seed = 0;
  std::vector<NodeMetrics> nodes;
  std::vector<AppMetrics> apps;

  std::uint64_t
  interests_sent() const
  {
    std::uint64_t n = 0;
    for (const auto& a : apps)
      n += a.interests_sent;
    return n;
  }

  std::uint64_t
  data_received() const
  {
    std::uint64_t n = 0;
    for (const auto& a : apps)
      n += a.data_received;
    return n;
  }

  /// Interests and data of one application kind.
  std::pair<std::uint64_t, std::uint64_t>
  app_totals(const std::string& kind) const
  {
    std::uint64_t i = 0, d = 0;
    for (const auto& a : apps) {
      if (a.kind == kind) {
        i += a.interests_sent;
        d += a.data_received;
      }
    }
    return {i, d};
  }

  double
  satisfaction_ratio() const
  {
    auto sent = interests_sent();
    return sent ? static_cast<double>(data_received()) / static_cast<double>(sent) : 0.0;
  }

  friend bool operator==(const RunMetrics&, const RunMetrics&) = default;
};

inline constexpr std::string_view RUN_CSV_HEADER =
  "record,id,role,app_kind,rate,interests_sent,data_received,nfd_packets_processed,"
  "frames_broadcast,frames_unicast,airtime_used_s,handovers,link_losses,queue_drops,"
  "unsolicited_data,unsatisfied";

namespace detail {

inline std::string
fixed(double x, int digits = 9)
{
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, x);
  return buf;
}

inline std::vector<std::string>
split_csv(const std::string& line)
{
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    }
    else if (c != '\r') {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

template<typename T>
T
parse_num(const std::string& s, std::size_t line_no)
{
  T v{};
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size())
    throw std::runtime_error("metrics CSV line " + std::to_string(line_no) + ": bad number '" + s + "'");
  return v;
}

} // namespace detail

/**
 * Per-run CSV. One "node" row per node, one "app" row per consumer and a
 * final "total" row. Instance and seed go in a leading comment line.
 */
inline void
write_run_csv(std::ostream& os, const RunMetrics& m)
{
  using detail::fixed;
  os << "# instance=" << m.instance << " seed=" << m.seed << '\n';
  os << RUN_CSV_HEADER << '\n';
  std::uint64_t processed = 0, bcast = 0, ucast = 0, handovers = 0, losses = 0, drops = 0,
                unsolicited = 0, unsatisfied = 0;
  double airtime = 0;
  for (const auto& n : m.nodes) {
    os << "node," << n.id << ',' << n.role << ",,," << ",," << n.nfd_packets_processed << ','
       << n.frames_broadcast << ',' << n.frames_unicast << ',' << fixed(n.airtime_used_s) << ','
       << n.handovers << ',' << n.link_losses << ',' << n.queue_drops << ',' << n.unsolicited_data
       << ',' << n.unsatisfied << '\n';
    processed += n.nfd_packets_processed;
    bcast += n.frames_broadcast;
    ucast += n.frames_unicast;
    airtime += n.airtime_used_s;
    handovers += n.handovers;
    losses += n.link_losses;
    drops += n.queue_drops;
    unsolicited += n.unsolicited_data;
    unsatisfied += n.unsatisfied;
  }
  for (const auto& a : m.apps) {
    os << "app," << a.vehicle << ",vehicle," << a.kind << ',' << fixed(a.rate, 6) << ','
       << a.interests_sent << ',' << a.data_received << ",,,,,,,,,\n";
  }
  os << "total,,,,," << m.interests_sent() << ',' << m.data_received() << ',' << processed << ','
     << bcast << ',' << ucast << ',' << fixed(airtime) << ',' << handovers << ',' << losses << ','
     << drops << ',' << unsolicited << ',' << unsatisfied << '\n';
}

inline RunMetrics
read_run_csv(std::istream& is)
{
  RunMetrics m;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty())
      continue;
    if (line.front() == '#') {
      std::istringstream ss(line.substr(1));
      std::string tok;
      while (ss >> tok) {
        if (tok.starts_with("instance="))
          m.instance = tok.substr(9);
        else if (tok.starts_with("seed="))
          m.seed = detail::parse_num<std::uint64_t>(tok.substr(5), line_no);
      }
      continue;
    }
    auto f = detail::split_csv(line);
    if (f[0] == "record")
      continue;
    if (f.size() != 16)
      throw std::runtime_error("metrics CSV line " + std::to_string(line_no) + ": expected 16 fields");
    using detail::parse_num;
    if (f[0] == "node") {
      NodeMetrics n;
      n.id = parse_num<NodeId>(f[1], line_no);
      n.role = f[2];
      n.nfd_packets_processed = parse_num<std::uint64_t>(f[7], line_no);
      n.frames_broadcast = parse_num<std::uint64_t>(f[8], line_no);
      n.frames_unicast = parse_num<std::uint64_t>(f[9], line_no);
      n.airtime_used_s = parse_num<double>(f[10], line_no);
      n.handovers = parse_num<std::uint64_t>(f[11], line_no);
      n.link_losses = parse_num<std::uint64_t>(f[12], line_no);
      n.queue_drops = parse_num<std::uint64_t>(f[13], line_no);
      n.unsolicited_data = parse_num<std::uint64_t>(f[14], line_no);
      n.unsatisfied = parse_num<std::uint64_t>(f[15], line_no);
      m.nodes.push_back(std::move(n));
    }
    else if (f[0] == "app") {
      AppMetrics a;
      a.vehicle = parse_num<NodeId>(f[1], line_no);
      a.kind = f[3];
      a.rate = parse_num<double>(f[4], line_no);
      a.interests_sent = parse_num<std::uint64_t>(f[5], line_no);
      a.data_received = parse_num<std::uint64_t>(f[6], line_no);
      m.apps.push_back(std::move(a));
    }
  }
  return m;
}

inline RunMetrics
read_run_csv(const std::string& path)
{
  std::ifstream in(path);
  if (!in)
    throw std::runtime_error("cannot open metrics file '" + path + "'");
  return read_run_csv(in);
}

} // namespace vndn::stats
