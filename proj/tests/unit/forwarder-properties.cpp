#include "../support/oracles.hpp"

#include <gtest/gtest.h>

TEST(ForwardingProperties, RandomSequences)
{
  auto r = vndn::oracle::check_forwarding_properties(10'000, 1);
  EXPECT_EQ(r.cases, 10'000u);
  for (const auto& f : r.failures)
    ADD_FAILURE() << f;
  EXPECT_EQ(r.failed, 0u);
}

TEST(ForwardingProperties, OtherSeed)
{
  auto r = vndn::oracle::check_forwarding_properties(2'000, 99);
  for (const auto& f : r.failures)
    ADD_FAILURE() << f;
  EXPECT_EQ(r.failed, 0u);
}
