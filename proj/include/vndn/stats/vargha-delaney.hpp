#pragma once

#include "vndn/stats/mann-whitney.hpp"

namespace vndn::stats {

/// Probability that a draw from @p a exceeds one from @p b, ties counted half.
/// Computed from rank sums, so it costs O(n log n).
template<typename T>
double
vargha_delaney_a12(std::span<const T> a, std::span<const T> b)
{
  if (a.empty() || b.empty())
    throw std::invalid_argument("vargha_delaney_a12: both samples must be non-empty");
  std::vector<T> all(a.begin(), a.end());
  all.insert(all.end(), b.begin(), b.end());
  auto ranks = midranks(std::span<const T>(all));
  double r1 = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    r1 += ranks[i];
  const double n1 = static_cast<double>(a.size());
  const double n2 = static_cast<double>(b.size());
  return (r1 - n1 * (n1 + 1) / 2) / (n1 * n2);
}

template<typename T>
double
vargha_delaney_a12(const std::vector<T>& a, const std::vector<T>& b)
{
  return vargha_delaney_a12(std::span<const T>(a), std::span<const T>(b));
}

} // namespace vndn::stats
