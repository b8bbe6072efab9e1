#include "vndn/ndn/fib.hpp"
#include "vndn/random.hpp"

#include <gtest/gtest.h>

using namespace vndn::ndn;
using namespace std::chrono_literals;

TEST(Fib, LongestPrefixWins)
{
  Fib fib;
  fib.add_next_hop(Name::parse("/p"), 1);
  fib.add_next_hop(Name::parse("/p/v7"), 2);
  auto* e = fib.longest_prefix_match(Name::parse("/p/v7/seq=1"));
  ASSERT_NE(e, nullptr);
  EXPECT_EQ(e->prefix, Name::parse("/p/v7"));
}

TEST(Fib, MissWithoutMatchingPrefix)
{
  Fib fib;
  fib.add_next_hop(Name::parse("/q"), 1);
  EXPECT_EQ(fib.longest_prefix_match(Name::parse("/p/x")), nullptr);
}

TEST(Fib, DefaultRouteMatchesEverything)
{
  Fib fib;
  fib.add_next_hop(Name(), 1);
  auto* e = fib.longest_prefix_match(Name::parse("/any/name/at/all"));
  ASSERT_NE(e, nullptr);
  EXPECT_EQ(e->prefix, Name());
}

TEST(Fib, NextHopsOrderedByCost)
{
  Fib fib;
  fib.add_next_hop(Name::parse("/p"), 3, 10);
  fib.add_next_hop(Name::parse("/p"), 2, 5);
  fib.add_next_hop(Name::parse("/p"), 3, 1);
  auto* e = fib.find_exact(Name::parse("/p"));
  ASSERT_NE(e, nullptr);
  ASSERT_EQ(e->next_hops.size(), 2u);
  EXPECT_EQ(e->next_hops[0].face, 3u);
  EXPECT_EQ(e->next_hops[0].cost, 1u);
}

TEST(Fib, MatchesLinearScanOracle)
{
  auto rng = vndn::make_stream(3, "fib-oracle");
  auto random_name = [&](std::size_t max_len) {
    Name n;
    auto len = vndn::uniform_below(rng, max_len + 1);
    for (std::uint64_t i = 0; i < len; ++i)
      n.append_number(vndn::uniform_below(rng, 3));
    return n;
  };
  for (int trial = 0; trial < 300; ++trial) {
    Fib fib;
    std::vector<Name> prefixes;
    for (int i = 0; i < 6; ++i) {
      auto p = random_name(3);
      fib.add_next_hop(p, 1);
      prefixes.push_back(p);
    }
    for (int q = 0; q < 20; ++q) {
      auto name = random_name(5);
      const Name* best = nullptr;
      for (const auto& p : prefixes)
        if (p.is_prefix_of(name) && (best == nullptr || p.size() > best->size()))
          best = &p;
      auto* got = fib.longest_prefix_match(name);
      if (best == nullptr) {
        ASSERT_EQ(got, nullptr);
      }
      else {
        ASSERT_NE(got, nullptr);
        ASSERT_EQ(got->prefix, *best);
      }
    }
  }
}

TEST(NextHop, LearningRefreshesAndAgesOut)
{
  NextHop nh{1, 0, {}};
  auto a = MacAddress::from_index(1);
  auto b = MacAddress::from_index(2);
  nh.learn(a, 0s);
  nh.learn(b, 1s);
  EXPECT_EQ(nh.live_macs(1s, 2s), (std::vector<MacAddress>{a, b}));
  nh.learn(a, 1500ms);
  EXPECT_EQ(nh.live_macs(1500ms, 2s), (std::vector<MacAddress>{b, a}));
  EXPECT_EQ(nh.live_macs(3200ms, 2s), (std::vector<MacAddress>{a}));
  nh.evict_stale(4s, 2s);
  EXPECT_TRUE(nh.learned_macs.empty());
}
