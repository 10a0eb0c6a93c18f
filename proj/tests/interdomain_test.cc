// Copyright 2026 The PbSA Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "pbsa/interdomain/exchange.h"
#include "support/tamper.h"

namespace pbsa {
namespace {

AsDescriptor As(int n, int label) {
  return {"AS" + std::to_string(n),
          *Cidr::Parse("10." + std::to_string(n) + ".0.0/16"), "EDU",
          SecurityLabel(label), "c" + std::to_string(n)};
}

AsGraph ChainWorld() {
  AsGraph g;
  g.AddAs(As(1, 2));
  g.AddAs(As(2, 3));
  g.AddAs(As(3, 2));
  g.AddAs(As(4, 4));
  g.AddLink("AS1", "AS2");
  g.AddLink("AS2", "AS3");
  g.AddLink("AS3", "AS4");
  return g;
}

Keyring Keys() {
  return {{"AS1", "k-one"}, {"AS2", "k-two"}, {"AS3", "k-three"},
          {"AS4", "k-four"}, {"AS5", "k-five"}};
}

Packet SamplePacket() {
  Packet p;
  p.src_ip = *Ipv4Address::Parse("10.0.0.2");
  p.dst_ip = *Ipv4Address::Parse("192.168.52.72");
  p.src_mac = *MacAddress::Parse("00:00:00:00:00:02");
  p.dst_mac = *MacAddress::Parse("00:00:00:00:00:48");
  p.src_port = 40000;
  p.dst_port = 80;
  p.packet_type = "HTTP";
  return p;
}

Handle Signed(std::vector<std::string> visited, std::string flow = "f1",
              std::string origin = "AS1") {
  Handle h{std::move(flow), std::move(origin), std::move(visited), ""};
  SignHandle(h, Keys().at(h.visited.back()));
  return h;
}

class HandleTest : public ::testing::Test {
 protected:
  TopologyRepository at2_ = ProbeTopology(ChainWorld(), "AS2", 4);
  TopologyRepository at4_ = ProbeTopology(ChainWorld(), "AS4", 4);
};

TEST_F(HandleTest, GenuineHandlesValidate) {
  EXPECT_TRUE(ValidateHandle(Signed({"AS1"}), "AS2", Keys(), at2_));
  EXPECT_TRUE(ValidateHandle(Signed({"AS1", "AS2", "AS3"}), "AS4", Keys(), at4_));
}

TEST_F(HandleTest, StructuralRejections) {
  // Last hop not adjacent, self already visited, duplicates, empty.
  EXPECT_FALSE(ValidateHandle(Signed({"AS1", "AS2"}), "AS4", Keys(), at4_));
  EXPECT_FALSE(ValidateHandle(Signed({"AS4", "AS3"}), "AS4", Keys(), at4_));
  EXPECT_FALSE(ValidateHandle(Signed({"AS1", "AS3", "AS1", "AS3"}), "AS4",
                              Keys(), at4_));
  Handle empty{"f1", "AS1", {}, ""};
  EXPECT_FALSE(ValidateHandle(empty, "AS2", Keys(), at2_));
}

TEST_F(HandleTest, UnknownSignerRejected) {
  Handle h = Signed({"AS1", "AS2", "AS3"});
  Keyring partial = Keys();
  partial.erase("AS3");
  EXPECT_FALSE(ValidateHandle(h, "AS4", partial, at4_));
}

// Every single-field mutation of a genuine handle must be rejected.
TEST_F(HandleTest, TamperSuite) {
  const Handle good = Signed({"AS1", "AS2", "AS3"});
  ASSERT_TRUE(ValidateHandle(good, "AS4", Keys(), at4_));
  std::vector<Handle> mutants = testing::HandleMutants(good);
  ASSERT_GT(mutants.size(), 256u + 20u);
  for (const Handle& m : mutants) {
    EXPECT_FALSE(ValidateHandle(m, "AS4", Keys(), at4_))
        << m.SigningText() << " tag=" << m.tag;
  }
}

TEST(TokenTest, TamperedTokensFailVerification) {
  PolicyTransferToken t{"f1", "AS1", "AS2",
                        {Constraint::LabelPath(LabelConstraint::AtLeast(2))},
                        ""};
  SignToken(t, Keys().at("AS2"));
  ASSERT_TRUE(VerifyTokenTag(t, Keys()));
  std::vector<PolicyTransferToken> mutants;
  auto mutate = [&](auto fn) {
    PolicyTransferToken m = t;
    fn(m);
    mutants.push_back(m);
  };
  mutate([](auto& m) { m.flow_id = "f2"; });
  mutate([](auto& m) { m.origin_as = "AS5"; });
  mutate([](auto& m) { m.issuer_as = "AS1"; });
  mutate([](auto& m) { m.constraints.clear(); });
  mutate([](auto& m) {
    m.constraints[0] = Constraint::LabelPath(LabelConstraint::AtLeast(1));
  });
  mutate([](auto& m) { m.constraints.push_back(Constraint::RateThreshold(5)); });
  for (size_t bit = 0; bit < t.tag.size() * 4; ++bit) {
    mutate([&](auto& m) { m.tag = testing::FlipBit(t.tag, bit); });
  }
  for (const auto& m : mutants) EXPECT_FALSE(VerifyTokenTag(m, Keys()));
}

TEST(MergeTest, StrongerGeqWins) {
  MergedConstraints m =
      MergeConstraints({Constraint::LabelPath(LabelConstraint::AtLeast(1))},
                       {Constraint::LabelPath(LabelConstraint::AtLeast(2))});
  EXPECT_TRUE(m.satisfiable);
  ASSERT_EQ(m.constraints.size(), 1u);
  EXPECT_EQ(m.constraints[0].ToString(), "SL2+=");
}

TEST(MergeTest, ContradictionIsUnsatisfiable) {
  MergedConstraints m =
      MergeConstraints({Constraint::LabelPath(LabelConstraint::Exactly(1))},
                       {Constraint::LabelPath(LabelConstraint::AtLeast(3))});
  EXPECT_FALSE(m.satisfiable);
}

TEST(MergeTest, UnionOfOtherKinds) {
  MergedConstraints m = MergeConstraints(
      {Constraint::RateThreshold(100), Constraint::PacketAttr("type", "HTTP")},
      {Constraint::RateThreshold(40), Constraint::PacketAttr("type", "HTTP"),
       Constraint::PacketAttr("port", "80")});
  EXPECT_TRUE(m.satisfiable);
  EXPECT_EQ(FormatConstraintList(m.constraints),
            "rate<=40;pkt:type=HTTP;pkt:port=80");
  EXPECT_FALSE(MergeConstraints({Constraint::PacketAttr("type", "HTTP")},
                                {Constraint::PacketAttr("type", "FTP")})
                   .satisfiable);
}

std::vector<LabelConstraint> AllLabelConstraints() {
  std::vector<LabelConstraint> out{LabelConstraint::Any()};
  for (int r = 1; r <= 5; ++r) {
    out.push_back(LabelConstraint::Exactly(r));
    out.push_back(LabelConstraint::AtLeast(r));
    out.push_back(LabelConstraint::AtMost(r));
  }
  return out;
}

// Exhaustive over pairs of lists of up to two constraints on SL1..SL5:
// satisfiability and the satisfying label set agree with direct
// evaluation of the conjunction.
TEST(MergeProperty, LabelConjunctionMatchesPointwiseOracle) {
  auto all = AllLabelConstraints();
  std::vector<std::vector<Constraint>> lists{{}};
  for (const auto& a : all) {
    if (a.is_any()) continue;
    lists.push_back({Constraint::LabelPath(a)});
    for (const auto& b : all) {
      if (!b.is_any()) {
        lists.push_back({Constraint::LabelPath(a), Constraint::LabelPath(b)});
      }
    }
  }
  auto holds = [](const std::vector<Constraint>& cs, int rank) {
    return std::all_of(cs.begin(), cs.end(), [rank](const Constraint& c) {
      return c.label.SatisfiedBy(SecurityLabel(rank));
    });
  };
  for (const auto& local : lists) {
    for (const auto& remote : lists) {
      MergedConstraints m = MergeConstraints(local, remote);
      bool any = false;
      for (int rank = 1; rank <= 7; ++rank) {
        bool want = holds(local, rank) && holds(remote, rank);
        any |= want;
        if (m.satisfiable) {
          ASSERT_EQ(holds(m.constraints, rank), want)
              << FormatConstraintList(local) << " & "
              << FormatConstraintList(remote) << " at SL" << rank;
        }
      }
      ASSERT_EQ(m.satisfiable, any)
          << FormatConstraintList(local) << " & " << FormatConstraintList(remote);
      ASSERT_LE(m.constraints.size(), 2u);
    }
  }
}

AugmentedPacket SampleAugmented(bool with_ptt) {
  AugmentedPacket aug;
  aug.packet = SamplePacket();
  aug.handle = Signed({"AS1", "AS2"}, FlowKey(aug.packet));
  if (with_ptt) {
    PolicyTransferToken t{FlowKey(aug.packet), "AS1", "AS2",
                          {Constraint::LabelPath(LabelConstraint::AtLeast(2)),
                           Constraint::PacketAttr("type", "HTTP")},
                          ""};
    SignToken(t, Keys().at("AS2"));
    aug.ptt = t;
  }
  return aug;
}

TEST(AugmentedTest, CanonicalText) {
  EXPECT_EQ(SerializeAugmented(SampleAugmented(false)),
            "PBSA-AUG/1\n"
            "packet.src 10.0.0.2\n"
            "packet.dst 192.168.52.72\n"
            "packet.src_mac 00:00:00:00:00:02\n"
            "packet.dst_mac 00:00:00:00:00:48\n"
            "packet.proto TCP\n"
            "packet.sport 40000\n"
            "packet.dport 80\n"
            "packet.type HTTP\n"
            "packet.size 64\n"
            "packet.ts 0\n"
            "handle.flow TCP 10.0.0.2:40000>192.168.52.72:80\n"
            "handle.origin AS1\n"
            "handle.visited AS1,AS2\n"
            "handle.tag " + SampleAugmented(false).handle.tag + "\n"
            "end\n");
}

TEST(AugmentedTest, RoundTripProperty) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<uint32_t> u32;
  std::uniform_int_distribution<int> coin(0, 1);
  for (int i = 0; i < 500; ++i) {
    AugmentedPacket aug = SampleAugmented(coin(rng));
    Packet& p = aug.packet;
    p.src_ip = Ipv4Address(u32(rng));
    p.dst_ip = Ipv4Address(u32(rng));
    p.src_port = static_cast<uint16_t>(u32(rng));
    p.dst_port = static_cast<uint16_t>(u32(rng));
    p.timestamp = u32(rng);
    p.packet_type = coin(rng) ? "FTP" : "";
    if (coin(rng)) p.signature = "SYN_FLOOD";
    aug.handle.flow_id = FlowKey(p);
    if (aug.ptt) aug.ptt->flow_id = aug.handle.flow_id;
    std::string text = SerializeAugmented(aug);
    AugmentedPacket back = DeserializeAugmented(text);
    ASSERT_EQ(back, aug) << text;
    ASSERT_EQ(SerializeAugmented(back), text);
  }
}

TEST(AugmentedTest, MalformedInputsRejected) {
  std::string good = SerializeAugmented(SampleAugmented(true));
  auto replace = [&](const std::string& from, const std::string& to) {
    std::string s = good;
    s.replace(s.find(from), from.size(), to);
    return s;
  };
  for (const std::string& bad :
       {std::string(), good.substr(0, good.size() - 1), good + "x\n",
        replace("PBSA-AUG/1", "PBSA-AUG/2"), replace("packet.sport 40000", "packet.sport 70000"),
        replace("packet.src 10.0.0.2", "packet.src 10.0.0.02"),
        replace("handle.flow TCP", "handle.flow UDP"),
        replace("handle.visited AS1,AS2", "handle.visited AS1,,AS2"),
        replace("ptt.constraints SL2+=", "ptt.constraints sig:X;SL2+="),
        replace("handle.origin AS1\n", "")}) {
    EXPECT_THROW(DeserializeAugmented(bad), WireFormatError) << bad;
  }
}

}  // namespace
}  // namespace pbsa
