// Copyright 2026 The EFCE Solver Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <random>
#include <set>

#include "efce/efce.hpp"
#include "efce/oracle.hpp"
#include "random_games.hpp"

namespace efce {
namespace {

TEST(Decompose, Fig2Structure) {
  const RelevanceStructure rel(Fig2Game());
  const DecompositionChain chain = Decompose(rel);
  EXPECT_EQ(chain.dimension(), 15);
  EXPECT_EQ(chain.num_fills(), 5);
  EXPECT_EQ(chain.num_sums(), 4);
  EXPECT_EQ(chain.FillWidths(), (std::vector<int>(5, 2)));
  EXPECT_TRUE(CheckChainInvariants(chain).empty());
  std::set<int> fill_sources;
  std::set<int> sum_targets;
  for (const ChainStep& s : chain.steps()) {
    if (s.kind == StepKind::kFill) {
      fill_sources.insert(s.anchor);
    } else {
      sum_targets.insert(s.anchor);
      EXPECT_EQ(s.width(), 2);
    }
  }
  EXPECT_EQ(fill_sources, (std::set<int>{rel.Index(0, 0), rel.Index(1, 0), rel.Index(2, 0)}));
  EXPECT_EQ(sum_targets,
            (std::set<int>{rel.Index(0, 1), rel.Index(0, 2), rel.Index(0, 3), rel.Index(0, 4)}));
}

TEST(Decompose, SingleLeaf) {
  const DecompositionChain chain = Decompose(RelevanceStructure(SingleLeafGame()));
  EXPECT_EQ(chain.dimension(), 1);
  EXPECT_EQ(chain.num_steps(), 0);
  EXPECT_EQ(ChainSample(chain, 3), std::vector<double>{1.0});
}

TEST(Decompose, Fig1Treeplex) {
  const SequenceSpace s = BuildSequenceSpace(Fig1Game(), Player::kOne);
  const TreeplexChain t = BuildTreeplexChain(s, kEmptySequence);
  EXPECT_EQ(t.chain.FillWidths(), (std::vector<int>{2, 2, 2, 3}));
  EXPECT_EQ(t.chain.num_sums(), 0);
  EXPECT_EQ(BuildTreeplexChain(s, 2).chain.FillWidths(), std::vector<int>{3});
  EXPECT_EQ(BuildTreeplexChain(s, 3).chain.num_steps(), 0);

  const auto x = UniformChainPoint(t.chain);
  const std::vector<double> want = {1, .5, .5, .25, .25, .25, .25, 1. / 6, 1. / 6, 1. / 6};
  ASSERT_EQ(x.size(), want.size());
  for (std::size_t k = 0; k < x.size(); ++k) {
    EXPECT_EQ(t.sequences[k], static_cast<int>(k));
    EXPECT_NEAR(x[k], want[k], 1e-15);
  }
}

TEST(Decompose, Fig1FullGame) {
  const RelevanceStructure rel(Fig1Game());
  const DecompositionChain chain = Decompose(rel);
  EXPECT_TRUE(CheckChainInvariants(chain).empty());
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    EXPECT_TRUE(CheckPlanConstraints(rel, ChainSample(chain, seed), 1e-9).empty());
  }
}

TEST(Plan, Fig2UniformSplit) {
  const RelevanceStructure rel(Fig2Game());
  CorrelationPlan plan(15, 0.0);
  plan[0] = 1;
  plan[rel.Index(1, 0)] = plan[rel.Index(2, 0)] = 0.5;
  for (int a : {1, 2}) {
    for (int b : {1, 2, 3, 4}) plan[rel.Index(a, b)] = 0.25;
  }
  for (int b : {1, 2, 3, 4}) plan[rel.Index(0, b)] = 0.5;
  EXPECT_TRUE(CheckPlanConstraints(rel, plan, 1e-12).empty());
  EXPECT_EQ(plan, UniformChainPoint(Decompose(rel)));
}

TEST(Plan, AllZerosFailsRoot) {
  const RelevanceStructure rel(Fig2Game());
  const auto v = CheckPlanConstraints(rel, CorrelationPlan(15, 0.0), 1e-9);
  ASSERT_FALSE(v.empty());
  EXPECT_EQ(v.front().constraint, "xi[(0,0)] = 1");
  EXPECT_THROW(CheckPlanConstraints(rel, CorrelationPlan(3, 0.0), 1e-9), ContractError);
}

TEST(Plan, Fig2PureProfile) {
  const RelevanceStructure rel(Fig2Game());
  const CorrelationPlan plan = PureProfilePlan(rel, {PureStrategy{0}, PureStrategy{0, 0}});
  const std::set<std::pair<int, int>> ones = {{0, 0}, {1, 0}, {0, 1}, {0, 3}, {1, 1}, {1, 3}};
  for (int k = 0; k < rel.num_pairs(); ++k) {
    EXPECT_EQ(plan[k], ones.count(rel.Pair(k)) ? 1.0 : 0.0) << k;
  }
}

TEST(Plan, Fig2VerticesAreMembers) {
  const RelevanceStructure rel(Fig2Game());
  const DecompositionChain chain = Decompose(rel);
  const auto p1 = oracle::PureStrategies(rel.space1());
  const auto p2 = oracle::PureStrategies(rel.space2());
  EXPECT_EQ(p1.size() * p2.size(), 8u);
  for (const auto& a : p1) {
    for (const auto& b : p2) {
      const auto plan = PureProfilePlan(rel, {a, b});
      EXPECT_TRUE(ChainMembership(chain, plan));
      EXPECT_TRUE(CheckPlanConstraints(rel, plan, 0.0).empty());
    }
  }
  auto bad = PureProfilePlan(rel, {p1[0], p2[0]});
  bad[rel.Index(2, 3)] = -0.25;
  EXPECT_FALSE(ChainMembership(chain, bad));
  EXPECT_TRUE(ExplainChainMembership(chain, bad, 1e-9).has_value());
}

TEST(Plan, PureSequenceFormRejectsMissingAction) {
  const SequenceSpace s = BuildSequenceSpace(Fig1Game(), Player::kOne);
  EXPECT_THROW(PureSequenceForm(s, {0, -1, 0, -1}), ContractError);
  EXPECT_EQ(PureSequenceForm(s, {1, -1, -1, 2}),
            (std::vector<double>{1, 0, 1, 0, 0, 0, 0, 0, 0, 1}));
}

TEST(Chain, SerializeRoundTrip) {
  const RelevanceStructure rel(Fig2Game());
  const DecompositionChain chain = Decompose(rel);
  const std::string text = SerializeChain(chain, &rel);
  EXPECT_EQ(ParseChain(text), chain);
  EXPECT_EQ(SerializeChain(ParseChain(text)), SerializeChain(chain));
  EXPECT_THROW(ParseChain("chain 3 0\nfill 0 1\n"), Error);
}

TEST(Chain, MinimizeLinearBeatsSamples) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1, 1);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const RelevanceStructure rel(testing::RandomGame(seed));
    const DecompositionChain chain = Decompose(rel);
    std::vector<double> loss(chain.dimension());
    for (double& v : loss) v = u(rng);
    const LinearMinimum m = MinimizeLinear(chain, loss);
    EXPECT_TRUE(ChainMembership(chain, m.point));
    double at = 0;
    for (std::size_t j = 0; j < loss.size(); ++j) at += loss[j] * m.point[j];
    EXPECT_NEAR(at, m.value, 1e-9);
    for (std::uint64_t s = 0; s < 20; ++s) {
      const auto x = ChainSample(chain, s);
      double v = 0;
      for (std::size_t j = 0; j < loss.size(); ++j) v += loss[j] * x[j];
      EXPECT_GE(v, m.value - 1e-9);
    }
  }
}

TEST(Decompose, RandomGamesProperties) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    SCOPED_TRACE(seed);
    const GameTree g = testing::RandomGame(seed);
    const RelevanceStructure rel(g);
    const DecompositionChain chain = Decompose(rel);
    EXPECT_TRUE(CheckChainInvariants(chain).empty());
    int targets = 0;
    for (const ChainStep& s : chain.steps()) targets += s.kind == StepKind::kFill ? s.width() : 1;
    EXPECT_EQ(targets, rel.num_pairs() - 1);
    EXPECT_EQ(CountSiblingConnectionViolations(rel), 0);
    for (std::uint64_t s = 0; s < 20; ++s) {
      const auto x = ChainSample(chain, s);
      EXPECT_TRUE(CheckPlanConstraints(rel, x, 1e-9).empty());
      EXPECT_TRUE(ChainMembership(chain, x));
    }
  }
}

}  // namespace
}  // namespace efce
