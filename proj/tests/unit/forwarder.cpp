#include "vndn/ndn/forwarder.hpp"

#include <gtest/gtest.h>

using namespace vndn::ndn;
using namespace std::chrono_literals;
using vndn::FaceId;
using vndn::Time;

namespace {

const MacAddress M1 = MacAddress::from_index(1);
const MacAddress M2 = MacAddress::from_index(2);
const MacAddress MR = MacAddress::from_index(50);

/// AP-shaped node: face 1 wireless, face 2 wired toward the producer.
struct ApFixture : ::testing::Test
{
  Forwarder fw{0, ForwarderConfig{10, std::nullopt, 2s}};
  FaceId wifi = fw.add_face(FaceKind::WIRELESS);
  FaceId wired = fw.add_face(FaceKind::WIRED_P2P);

  ApFixture() { fw.fib().add_next_hop(Name::parse("/p"), wired); }

  static Interest
  interest(const std::string& uri, std::uint32_t nonce)
  {
    return Interest{Name::parse(uri), nonce};
  }
};

template<typename T>
const T&
only(const std::vector<ForwardAction>& actions)
{
  EXPECT_EQ(actions.size(), 1u);
  return std::get<T>(actions.at(0));
}

} // namespace

TEST_F(ApFixture, InterestCreatesPitEntryAndGoesUpstream)
{
  auto actions = fw.on_incoming_interest(wifi, M1, interest("/p/v7/seq=3", 1), 0s);
  const auto& send = only<SendInterest>(actions);
  EXPECT_EQ(send.face, wired);
  EXPECT_TRUE(send.candidates.empty()); // wired faces carry no MACs
  auto* e = fw.pit().find(Name::parse("/p/v7/seq=3"));
  ASSERT_NE(e, nullptr);
  ASSERT_EQ(e->in_records.size(), 1u);
  EXPECT_EQ(e->in_records[0].face, wifi);
  EXPECT_EQ(e->in_records[0].sender_macs, std::vector<MacAddress>{M1});
  ASSERT_EQ(e->out_records.size(), 1u);
  EXPECT_EQ(e->out_records[0].face, wired);
}

TEST_F(ApFixture, DuplicateNonceIsDropped)
{
  fw.on_incoming_interest(wifi, M1, interest("/p/a", 7), 0s);
  auto before = fw.pit().entries();
  auto actions = fw.on_incoming_interest(wifi, M1, interest("/p/a", 7), 10ms);
  EXPECT_EQ(only<Drop>(actions).reason, DropReason::DUPLICATE_NONCE);
  EXPECT_EQ(fw.counters().duplicate_nonce, 1u);
  const auto& e = fw.pit().entries().at(Name::parse("/p/a"));
  EXPECT_EQ(e.in_records.size(), before.at(Name::parse("/p/a")).in_records.size());
  EXPECT_EQ(e.in_records[0].expiry, before.at(Name::parse("/p/a")).in_records[0].expiry);
}

TEST_F(ApFixture, SecondInterestIsAggregated)
{
  FaceId other = fw.add_face(FaceKind::WIRELESS);
  int upstream = 0;
  for (auto& a : fw.on_incoming_interest(wifi, M1, interest("/p/a", 1), 0s))
    upstream += std::holds_alternative<SendInterest>(a);
  for (auto& a : fw.on_incoming_interest(other, M2, interest("/p/a", 2), 5ms))
    upstream += std::holds_alternative<SendInterest>(a);
  EXPECT_EQ(upstream, 1);
  const auto& e = fw.pit().entries().at(Name::parse("/p/a"));
  EXPECT_EQ(e.in_records.size(), 2u);
  EXPECT_EQ(e.out_records.size(), 1u);
  EXPECT_EQ(fw.counters().interests_aggregated, 1u);
}

TEST_F(ApFixture, SameFaceSendersAccumulate)
{
  fw.on_incoming_interest(wifi, M1, interest("/p/a", 1), 0s);
  fw.on_incoming_interest(wifi, M2, interest("/p/a", 2), 1ms);
  const auto& e = fw.pit().entries().at(Name::parse("/p/a"));
  ASSERT_EQ(e.in_records.size(), 1u);
  EXPECT_EQ(e.in_records[0].sender_macs, (std::vector<MacAddress>{M1, M2}));
}

TEST_F(ApFixture, DataFollowsPitAndLearnsSender)
{
  // Data arrives over the wireless face here to exercise FIB learning
  Forwarder v{1, ForwarderConfig{0, std::nullopt, 2s}};
  FaceId vw = v.add_face(FaceKind::WIRELESS);
  FaceId app = v.add_face(FaceKind::APPLICATION);
  v.fib().add_next_hop(Name(), vw);
  v.on_incoming_interest(app, std::nullopt, interest("/p/v7/seq=3", 1), 0s);
  auto actions = v.on_incoming_data(vw, MR, Data{Name::parse("/p/v7/seq=3")}, 40ms);
  EXPECT_EQ(only<SendData>(actions).face, app);
  auto* route = v.fib().find_exact(Name());
  ASSERT_EQ(route->next_hops[0].learned_macs.size(), 1u);
  EXPECT_EQ(route->next_hops[0].learned_macs[0].mac, MR);

  // AP side: CS insert and downstream candidates from the in-record
  fw.on_incoming_interest(wifi, M1, interest("/p/v7/seq=3", 1), 0s);
  auto down = fw.on_incoming_data(wired, std::nullopt, Data{Name::parse("/p/v7/seq=3")}, 61ms);
  const auto& send = only<SendData>(down);
  EXPECT_EQ(send.face, wifi);
  EXPECT_EQ(send.candidates, std::vector<MacAddress>{M1});
  EXPECT_TRUE(fw.cs().lookup(Name::parse("/p/v7/seq=3")));
  EXPECT_EQ(fw.pit().find(Name::parse("/p/v7/seq=3")), nullptr);
}

TEST_F(ApFixture, UnsolicitedDataIsDropped)
{
  auto actions = fw.on_incoming_data(wired, std::nullopt, Data{Name::parse("/p/x")}, 0s);
  EXPECT_EQ(only<Drop>(actions).reason, DropReason::UNSOLICITED);
  EXPECT_EQ(fw.counters().unsolicited_data, 1u);
  EXPECT_EQ(fw.cs().size(), 0u);
}

TEST_F(ApFixture, DataFansOutToEveryInFace)
{
  FaceId other = fw.add_face(FaceKind::WIRELESS);
  fw.on_incoming_interest(wifi, M1, interest("/p/a", 1), 0s);
  fw.on_incoming_interest(other, M2, interest("/p/a", 2), 0s);
  auto actions = fw.on_incoming_data(wired, std::nullopt, Data{Name::parse("/p/a")}, 1ms);
  ASSERT_EQ(actions.size(), 2u);
  std::set<FaceId> faces;
  for (auto& a : actions)
    faces.insert(std::get<SendData>(a).face);
  EXPECT_EQ(faces, (std::set<FaceId>{wifi, other}));
}

TEST_F(ApFixture, CsHitAnswersOnIngressFace)
{
  fw.cs().insert(Data{Name::parse("/p/c")});
  auto actions = fw.on_incoming_interest(wifi, M2, interest("/p/c", 3), 0s);
  const auto& send = only<SendData>(actions);
  EXPECT_EQ(send.face, wifi);
  EXPECT_EQ(send.candidates, std::vector<MacAddress>{M2});
  EXPECT_EQ(fw.pit().size(), 0u);
  EXPECT_EQ(fw.counters().cs_hits, 1u);
}

TEST_F(ApFixture, NoRouteAndNeverBackOutIngress)
{
  auto a = fw.on_incoming_interest(wifi, M1, interest("/q/x", 1), 0s);
  EXPECT_EQ(only<Drop>(a).reason, DropReason::NO_ROUTE);
  EXPECT_EQ(fw.pit().size(), 0u);
  // the only route for /p points back at the wired face
  auto b = fw.on_incoming_interest(wired, std::nullopt, interest("/p/x", 1), 0s);
  EXPECT_EQ(only<Drop>(b).reason, DropReason::NO_ROUTE);
}

TEST_F(ApFixture, ExpiryCountsUnsatisfied)
{
  fw.on_incoming_interest(wifi, M1, interest("/p/a", 1), 0s);
  EXPECT_EQ(fw.pit_expire(4s).size(), 1u);
  EXPECT_EQ(fw.counters().unsatisfied, 1u);
  // a retransmission with a fresh nonce goes upstream again
  auto a = fw.on_incoming_interest(wifi, M1, interest("/p/a", 2), 4s);
  EXPECT_TRUE(std::holds_alternative<SendInterest>(a.at(0)));
}

TEST_F(ApFixture, PitOverflowDrops)
{
  Forwarder small{0, ForwarderConfig{0, 1, 2s}};
  FaceId w = small.add_face(FaceKind::WIRELESS);
  FaceId up = small.add_face(FaceKind::WIRED_P2P);
  small.fib().add_next_hop(Name::parse("/p"), up);
  small.on_incoming_interest(w, M1, interest("/p/a", 1), 0s);
  auto a = small.on_incoming_interest(w, M1, interest("/p/b", 2), 0s);
  EXPECT_EQ(only<Drop>(a).reason, DropReason::PIT_OVERFLOW);
}

TEST_F(ApFixture, MalformedPacketsRejected)
{
  auto a = fw.on_incoming_interest(wifi, M1, Interest{Name(), 1}, 0s);
  EXPECT_EQ(only<Drop>(a).reason, DropReason::PROTOCOL_ERROR);
  auto b = fw.on_incoming_interest(wifi, M1, Interest{Name::parse("/p/a"), 1, 0s}, 0s);
  EXPECT_EQ(only<Drop>(b).reason, DropReason::PROTOCOL_ERROR);
}

TEST_F(ApFixture, UpstreamCandidatesAreLiveLearnedMacs)
{
  Forwarder v{1, ForwarderConfig{0, std::nullopt, 2s}};
  FaceId vw = v.add_face(FaceKind::WIRELESS);
  FaceId app = v.add_face(FaceKind::APPLICATION);
  v.fib().add_next_hop(Name(), vw);
  v.on_incoming_interest(app, std::nullopt, interest("/p/1", 1), 0s);
  v.on_incoming_data(vw, M1, Data{Name::parse("/p/1")}, 10ms);
  v.on_incoming_interest(app, std::nullopt, interest("/p/2", 2), 20ms);
  v.on_incoming_data(vw, M2, Data{Name::parse("/p/2")}, 30ms);
  auto a = v.on_incoming_interest(app, std::nullopt, interest("/p/3", 3), 1s);
  EXPECT_EQ(only<SendInterest>(a).candidates, (std::vector<MacAddress>{M1, M2}));
  auto b = v.on_incoming_interest(app, std::nullopt, interest("/p/4", 4), 3s);
  EXPECT_TRUE(only<SendInterest>(b).candidates.empty());
}

TEST(SelectFrameDestination, TableCases)
{
  std::vector<MacAddress> m9{MacAddress::from_index(9)};
  EXPECT_EQ(select_frame_destination(Direction::UP, DeploymentMode::standard(), m9),
            std::vector<MacAddress>{BROADCAST_MAC});
  EXPECT_EQ(select_frame_destination(Direction::DOWN, DeploymentMode::proposal(), {}),
            std::vector<MacAddress>{BROADCAST_MAC});
  std::vector<MacAddress> two{M1, M2};
  EXPECT_EQ(select_frame_destination(Direction::DOWN, DeploymentMode::down(), two), two);
  EXPECT_EQ(select_frame_destination(Direction::UP, DeploymentMode::down(), two),
            std::vector<MacAddress>{BROADCAST_MAC});
  EXPECT_EQ(select_frame_destination(Direction::UP, DeploymentMode::up(), two),
            std::vector<MacAddress>{M2});
  EXPECT_EQ(select_frame_destination(Direction::DOWN, DeploymentMode::up(), two),
            std::vector<MacAddress>{BROADCAST_MAC});
}

TEST(DeploymentMode, LabelsAndParsing)
{
  EXPECT_EQ(DeploymentMode::standard().label(), "Standard");
  EXPECT_EQ(DeploymentMode::proposal().token(), "proposal");
  EXPECT_EQ(DeploymentMode::parse("down"), DeploymentMode::down());
  EXPECT_EQ(DeploymentMode::parse("Up"), DeploymentMode::up());
  EXPECT_FALSE(DeploymentMode::parse("sideways"));
  EXPECT_EQ(DeploymentMode::all().size(), 4u);
}
