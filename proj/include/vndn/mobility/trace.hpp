#pragma once

#include "vndn/common.hpp"
#include "vndn/random.hpp"

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace vndn::mobility {

inline constexpr double KMH_TO_MPS = 1.0 / 3.6;

/// One-way avenue traffic. Speeds are in km/h as traffic counts are usually reported.
struct TrafficParams
{
  double avenue_length = 172.0; ///< meters
  std::uint32_t vehicle_count = 125;
  double duration = 300.0;    ///< seconds over which vehicles enter
  double mean_speed = 31.0;   ///< km/h
  double max_speed = 60.0;    ///< km/h
  std::vector<double> bus_stops{43.0, 86.0, 129.0}; ///< meters from the avenue start
  double stop_dwell = 15.0;   ///< seconds per stop
  double bus_fraction = 0.10;
  std::uint64_t seed = 1;

  void
  validate() const
  {
    if (!(avenue_length > 0))
      throw ConfigError("traffic.avenue_length_m: must be > 0");
    if (!(duration > 0))
      throw ConfigError("traffic.duration_s: must be > 0");
    if (!(mean_speed > 0))
      throw ConfigError("traffic.mean_speed_kmh: must be > 0");
    if (mean_speed > max_speed)
      throw ConfigError("traffic.mean_speed_kmh: must not exceed traffic.max_speed_kmh");
    for (double s : bus_stops) {
      if (s < 0 || s > avenue_length)
        throw ConfigError("traffic.bus_stops_m: stop at " + std::to_string(s) +
                          " m lies outside the avenue");
    }
    if (stop_dwell < 0)
      throw ConfigError("traffic.stop_dwell_s: must be >= 0");
    if (bus_fraction < 0 || bus_fraction > 1)
      throw ConfigError("traffic.bus_fraction: must be in [0, 1]");
  }
};

struct TraceSample
{
  double time = 0;     ///< s
  double position = 0; ///< m
  double speed = 0;    ///< m/s

  friend bool operator==(const TraceSample&, const TraceSample&) = default;
};

/// Piecewise-linear trajectory; the first and last samples are entry and exit.
struct VehicleTrack
{
  std::uint32_t id = 0;
  std::vector<TraceSample> samples;

  double entry() const { return samples.front().time; }
  double exit() const { return samples.back().time; }

  friend bool operator==(const VehicleTrack&, const VehicleTrack&) = default;
};

struct Trace
{
  std::vector<VehicleTrack> vehicles; ///< sorted by id

  friend bool operator==(const Trace&, const Trace&) = default;
};

struct TraceLimits
{
  double avenue_length = 172.0;
  double max_speed = 60.0 * KMH_TO_MPS; ///< m/s
};

class TraceError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline void
check_sample(std::uint32_t id, const TraceSample* prev, const TraceSample& s, const TraceLimits& limits)
{
  auto where = [&] { return "vehicle " + std::to_string(id) + ": "; };
  if (!(s.position >= 0 && s.position <= limits.avenue_length))
    throw TraceError(where() + "position " + std::to_string(s.position) + " m outside [0, " +
                     std::to_string(limits.avenue_length) + "]");
  if (!(s.speed >= 0 && s.speed <= limits.max_speed + 1e-9))
    throw TraceError(where() + "speed " + std::to_string(s.speed) + " m/s outside [0, " +
                     std::to_string(limits.max_speed) + "]");
  if (prev != nullptr && !(s.time > prev->time))
    throw TraceError(where() + "time not strictly increasing at " + std::to_string(s.time) + " s");
  if (prev != nullptr && s.position < prev->position)
    throw TraceError(where() + "moves backwards at " + std::to_string(s.time) + " s");
}

} // namespace detail

/// Checks positions, speeds and time ordering; throws TraceError with the reason.
inline void
validate_trace(const Trace& trace, const TraceLimits& limits)
{
  for (const auto& v : trace.vehicles) {
    if (v.samples.empty())
      throw TraceError("vehicle " + std::to_string(v.id) + ": no samples");
    for (std::size_t i = 0; i < v.samples.size(); ++i)
      detail::check_sample(v.id, i ? &v.samples[i - 1] : nullptr, v.samples[i], limits);
  }
}

/// Lower bound and mode of the cruise-speed distribution (km/h) for the given parameters.
/// The mode is placed so that the triangular mean equals mean_speed.
inline std::pair<double, double>
cruise_speed_shape(const TrafficParams& p)
{
  double lo = 0.5 * p.mean_speed;
  double mode = std::clamp(3.0 * p.mean_speed - lo - p.max_speed, lo, p.max_speed);
  return {lo, mode};
}

/**
 * Synthetic single-lane traffic: entry times uniform over the duration,
 * triangular cruise speeds on [mean/2, max], and a fraction of buses that
 * stop at every bus stop.
 */
inline Trace
generate_trace(const TrafficParams& p)
{
  p.validate();
  Engine rng = make_stream(p.seed, "traffic");

  std::vector<double> entries(p.vehicle_count);
  for (auto& e : entries)
    e = uniform(rng, 0.0, p.duration);
  std::sort(entries.begin(), entries.end());

  auto [lo, mode] = cruise_speed_shape(p);
  std::vector<double> stops = p.bus_stops;
  std::sort(stops.begin(), stops.end());

  Trace trace;
  trace.vehicles.reserve(p.vehicle_count);
  for (std::uint32_t id = 0; id < p.vehicle_count; ++id) {
    double v = triangular(rng, lo, mode, p.max_speed) * KMH_TO_MPS;
    bool bus = bernoulli(rng, p.bus_fraction);

    VehicleTrack track{id, {}};
    double t = entries[id];
    double x = 0;
    track.samples.push_back({t, 0.0, v});
    if (bus && p.stop_dwell > 0) {
      for (double s : stops) {
        if (s <= x || s >= p.avenue_length)
          continue;
        t += (s - x) / v;
        x = s;
        track.samples.push_back({t, s, 0.0});
        t += p.stop_dwell;
        track.samples.push_back({t, s, v});
      }
    }
    t += (p.avenue_length - x) / v;
    track.samples.push_back({t, p.avenue_length, v});
    trace.vehicles.push_back(std::move(track));
  }
  return trace;
}

/// Linear interpolation between samples; nullopt outside [entry, exit].
inline std::optional<double>
position_at(const VehicleTrack& v, double t)
{
  const auto& s = v.samples;
  if (s.empty() || t < s.front().time || t > s.back().time)
    return std::nullopt;
  auto it = std::upper_bound(s.begin(), s.end(), t,
                             [](double x, const TraceSample& smp) { return x < smp.time; });
  if (it == s.end())
    return s.back().position;
  if (it == s.begin())
    return it->position;
  const auto& a = *(it - 1);
  const auto& b = *it;
  double f = (t - a.time) / (b.time - a.time);
  return a.position + f * (b.position - a.position);
}

inline std::optional<double>
position_at(const Trace& trace, std::uint32_t vehicle, double t)
{
  auto it = std::lower_bound(trace.vehicles.begin(), trace.vehicles.end(), vehicle,
                             [](const VehicleTrack& v, std::uint32_t id) { return v.id < id; });
  if (it == trace.vehicles.end() || it->id != vehicle)
    return std::nullopt;
  return position_at(*it, t);
}

/// Mean over vehicles of distance covered per unit of moving time, in km/h (roadside spot speed).
inline double
mean_cruise_speed_kmh(const Trace& trace)
{
  double sum = 0;
  std::size_t n = 0;
  for (const auto& v : trace.vehicles) {
    double dist = 0, moving = 0;
    for (std::size_t i = 1; i < v.samples.size(); ++i) {
      double dx = v.samples[i].position - v.samples[i - 1].position;
      if (dx > 0) {
        dist += dx;
        moving += v.samples[i].time - v.samples[i - 1].time;
      }
    }
    if (moving > 0) {
      sum += dist / moving / KMH_TO_MPS;
      ++n;
    }
  }
  return n ? sum / static_cast<double>(n) : 0.0;
}

namespace detail {

inline void
append_double(std::string& out, double x)
{
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  out.append(buf, ptr);
}

inline bool
parse_double(std::string_view s, double& out)
{
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t'))
    s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && ptr == s.data() + s.size() && !s.empty();
}

} // namespace detail

inline constexpr std::string_view TRACE_CSV_HEADER = "time_s,vehicle_id,position_m,speed_mps";

/// CSV rows ordered by vehicle then time; doubles use shortest round-trip formatting.
inline void
save_trace(std::ostream& os, const Trace& trace)
{
  os << TRACE_CSV_HEADER << '\n';
  std::string line;
  for (const auto& v : trace.vehicles) {
    for (const auto& s : v.samples) {
      line.clear();
      detail::append_double(line, s.time);
      line += ',';
      line += std::to_string(v.id);
      line += ',';
      detail::append_double(line, s.position);
      line += ',';
      detail::append_double(line, s.speed);
      line += '\n';
      os << line;
    }
  }
}

inline Trace
load_trace(std::istream& is, const TraceLimits& limits)
{
  std::map<std::uint32_t, VehicleTrack> tracks;
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (std::getline(is, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r')
      line.pop_back();
    if (line.empty() || line.front() == '#')
      continue;
    if (!header_seen) {
      header_seen = true;
      if (line == TRACE_CSV_HEADER)
        continue;
    }
    std::vector<std::string_view> fields;
    std::string_view rest = line;
    while (true) {
      auto comma = rest.find(',');
      fields.push_back(rest.substr(0, comma));
      if (comma == std::string_view::npos)
        break;
      rest.remove_prefix(comma + 1);
    }
    auto fail = [&](const std::string& why) {
      return TraceError("line " + std::to_string(line_no) + ": " + why);
    };
    if (fields.size() != 4)
      throw fail("expected 4 fields, got " + std::to_string(fields.size()));
    double t, id_d, x, v;
    if (!detail::parse_double(fields[0], t))
      throw fail("bad time_s '" + std::string(fields[0]) + "'");
    if (!detail::parse_double(fields[1], id_d) || id_d < 0 || id_d != static_cast<std::uint32_t>(id_d))
      throw fail("bad vehicle_id '" + std::string(fields[1]) + "'");
    if (!detail::parse_double(fields[2], x))
      throw fail("bad position_m '" + std::string(fields[2]) + "'");
    if (!detail::parse_double(fields[3], v))
      throw fail("bad speed_mps '" + std::string(fields[3]) + "'");
    auto id = static_cast<std::uint32_t>(id_d);
    auto& track = tracks[id];
    track.id = id;
    TraceSample sample{t, x, v};
    try {
      detail::check_sample(id, track.samples.empty() ? nullptr : &track.samples.back(), sample,
                           limits);
    }
    catch (const TraceError& e) {
      throw fail(e.what());
    }
    track.samples.push_back(sample);
  }
  Trace trace;
  for (auto& [id, track] : tracks)
    trace.vehicles.push_back(std::move(track));
  return trace;
}

inline Trace
load_trace(const std::string& path, const TraceLimits& limits)
{
  std::ifstream in(path);
  if (!in)
    throw TraceError("cannot open trace file '" + path + "'");
  return load_trace(in, limits);
}

} // namespace vndn::mobility
