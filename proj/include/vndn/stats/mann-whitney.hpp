#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <span>
#include <stdexcept>
#include <vector>

namespace vndn::stats {

struct MannWhitneyResult
{
  double u = 0;       ///< min(U_a, U_b)
  double u_a = 0;     ///< U of the first sample: pairs where a wins, ties counted half
  double p_value = 1; ///< two-sided
};

/// Mid-ranks (1-based) of @p values; ties get the average of the ranks they span.
template<typename T>
std::vector<double>
midranks(std::span<const T> values)
{
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return values[i] < values[j]; });
  std::vector<double> ranks(values.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j + 1 < order.size() && !(values[order[i]] < values[order[j + 1]]))
      ++j;
    double r = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (std::size_t k = i; k <= j; ++k)
      ranks[order[k]] = r;
    i = j + 1;
  }
  return ranks;
}

/**
 * Two-sided Mann-Whitney U test using the normal approximation with tie
 * and continuity corrections. When every value is identical p is 1.
 */
template<typename T>
MannWhitneyResult
mann_whitney_u(std::span<const T> a, std::span<const T> b)
{
  if (a.empty() || b.empty())
    throw std::invalid_argument("mann_whitney_u: both samples must be non-empty");

  std::vector<T> all(a.begin(), a.end());
  all.insert(all.end(), b.begin(), b.end());
  auto ranks = midranks(std::span<const T>(all));

  const double n1 = static_cast<double>(a.size());
  const double n2 = static_cast<double>(b.size());
  const double n = n1 + n2;
  double r1 = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    r1 += ranks[i];

  MannWhitneyResult res;
  res.u_a = r1 - n1 * (n1 + 1) / 2;
  res.u = std::min(res.u_a, n1 * n2 - res.u_a);

  std::vector<T> sorted = all;
  std::sort(sorted.begin(), sorted.end());
  double tie_term = 0;
  for (std::size_t i = 0; i < sorted.size();) {
    std::size_t j = i;
    while (j < sorted.size() && !(sorted[i] < sorted[j]))
      ++j;
    double t = static_cast<double>(j - i);
    tie_term += t * t * t - t;
    i = j;
  }
  double var = n1 * n2 / 12.0 * ((n + 1) - tie_term / (n * (n - 1)));
  if (!(var > 0)) {
    res.p_value = 1.0;
    return res;
  }
  double mu = n1 * n2 / 2.0;
  double z = std::max(0.0, std::abs(res.u_a - mu) - 0.5) / std::sqrt(var);
  res.p_value = std::min(1.0, std::erfc(z / std::sqrt(2.0)));
  return res;
}

template<typename T>
MannWhitneyResult
mann_whitney_u(const std::vector<T>& a, const std::vector<T>& b)
{
  return mann_whitney_u(std::span<const T>(a), std::span<const T>(b));
}

} // namespace vndn::stats
