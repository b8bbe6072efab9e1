#pragma once

#include "vndn/stats/mann-whitney.hpp"
#include "vndn/stats/metrics.hpp"
#include "vndn/stats/vargha-delaney.hpp"

#include <limits>

namespace vndn::stats {

struct KindTotals
{
  std::uint64_t interests_sent = 0;
  std::uint64_t data_received = 0;

  double
  ratio() const
  {
    return interests_sent ? static_cast<double>(data_received) / static_cast<double>(interests_sent)
                          : 0.0;
  }
};

/// Aggregate of all runs of one instance.
struct Summary
{
  std::string instance;
  std::size_t runs = 0;
  double mean_satisfaction = 0;
  double min_satisfaction = 0;
  double max_satisfaction = 0;
  std::uint64_t interests_sent = 0;
  std::uint64_t data_received = 0;
  KindTotals distinct;
  KindTotals shared;
  std::uint64_t nfd_packets_processed = 0;
  std::uint64_t frames_broadcast = 0;
  std::uint64_t frames_unicast = 0;
  double airtime_used_s = 0;
  std::uint64_t handovers = 0;
};

inline Summary
summarize(std::span<const RunMetrics> runs)
{
  if (runs.empty())
    throw std::invalid_argument("summarize: no runs");
  Summary s;
  s.instance = runs.front().instance;
  s.runs = runs.size();
  s.min_satisfaction = std::numeric_limits<double>::infinity();
  s.max_satisfaction = -std::numeric_limits<double>::infinity();
  double sum = 0;
  for (const auto& r : runs) {
    double ratio = r.satisfaction_ratio();
    sum += ratio;
    s.min_satisfaction = std::min(s.min_satisfaction, ratio);
    s.max_satisfaction = std::max(s.max_satisfaction, ratio);
    for (const auto& a : r.apps) {
      s.interests_sent += a.interests_sent;
      s.data_received += a.data_received;
      auto& k = a.kind == "shared" ? s.shared : s.distinct;
      k.interests_sent += a.interests_sent;
      k.data_received += a.data_received;
    }
    for (const auto& n : r.nodes) {
      s.nfd_packets_processed += n.nfd_packets_processed;
      s.frames_broadcast += n.frames_broadcast;
      s.frames_unicast += n.frames_unicast;
      s.airtime_used_s += n.airtime_used_s;
      s.handovers += n.handovers;
    }
  }
  s.mean_satisfaction = sum / static_cast<double>(runs.size());
  return s;
}

inline Summary
summarize(const std::vector<RunMetrics>& runs)
{
  return summarize(std::span<const RunMetrics>(runs));
}

inline constexpr std::string_view SUMMARY_CSV_HEADER =
  "instance,runs,mean_satisfaction,min_satisfaction,max_satisfaction,interests_sent,"
  "data_received,distinct_interests_sent,distinct_data_received,distinct_satisfaction,"
  "shared_interests_sent,shared_data_received,shared_satisfaction,nfd_packets_processed,"
  "frames_broadcast,frames_unicast,airtime_used_s,handovers";

inline void
write_summary_row(std::ostream& os, const Summary& s)
{
  using detail::fixed;
  os << s.instance << ',' << s.runs << ',' << fixed(s.mean_satisfaction, 6) << ','
     << fixed(s.min_satisfaction, 6) << ',' << fixed(s.max_satisfaction, 6) << ','
     << s.interests_sent << ',' << s.data_received << ',' << s.distinct.interests_sent << ','
     << s.distinct.data_received << ',' << fixed(s.distinct.ratio(), 6) << ','
     << s.shared.interests_sent << ',' << s.shared.data_received << ','
     << fixed(s.shared.ratio(), 6) << ',' << s.nfd_packets_processed << ',' << s.frames_broadcast
     << ',' << s.frames_unicast << ',' << fixed(s.airtime_used_s, 6) << ',' << s.handovers << '\n';
}

/// Pairwise test of two instances on one per-run metric.
struct ComparisonResult
{
  std::string a;
  std::string b;
  std::string metric;
  std::size_t n1 = 0;
  std::size_t n2 = 0;
  double u_statistic = 0;
  double p_value = 1;
  double a12 = 0.5;
};

template<typename T>
ComparisonResult
compare_samples(std::string a, std::string b, std::string metric, const std::vector<T>& xa,
                const std::vector<T>& xb)
{
  ComparisonResult c;
  auto mw = mann_whitney_u(xa, xb);
  c.a = std::move(a);
  c.b = std::move(b);
  c.metric = std::move(metric);
  c.n1 = xa.size();
  c.n2 = xb.size();
  c.u_statistic = mw.u;
  c.p_value = mw.p_value;
  c.a12 = vargha_delaney_a12(xa, xb);
  return c;
}

/// Data received in vehicles, one value per run.
inline std::vector<double>
data_received_sample(std::span<const RunMetrics> runs)
{
  std::vector<double> out;
  out.reserve(runs.size());
  for (const auto& r : runs)
    out.push_back(static_cast<double>(r.data_received()));
  return out;
}

inline constexpr std::string_view COMPARISON_CSV_HEADER =
  "instance_a,instance_b,metric,n1,n2,u_statistic,p_value,a12";

inline void
write_comparison_row(std::ostream& os, const ComparisonResult& c)
{
  using detail::fixed;
  os << c.a << ',' << c.b << ',' << c.metric << ',' << c.n1 << ',' << c.n2 << ','
     << fixed(c.u_statistic, 1) << ',' << fixed(c.p_value, 9) << ',' << fixed(c.a12, 6) << '\n';
}

} // namespace vndn::stats
