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

#include <set>
#include <string>
#include <utility>

#include "efce/efce.hpp"
#include "efce/oracle.hpp"
#include "random_games.hpp"

namespace efce {
namespace {

// Relevance from the connected-infoset oracle, for every sequence pair.
void ExpectMatchesOracle(const GameTree& g) {
  const RelevanceStructure rel(g);
  const auto connected = oracle::ConnectedInfosets(g);
  const SequenceSpace& s1 = rel.space1();
  const SequenceSpace& s2 = rel.space2();
  int count = 0;
  for (int a = 0; a < s1.size(); ++a) {
    for (int b = 0; b < s2.size(); ++b) {
      bool want = a == kEmptySequence || b == kEmptySequence;
      if (!want) {
        want = connected.count({s1.infoset_ids[s1.sequence_infoset[a]],
                                s2.infoset_ids[s2.sequence_infoset[b]]}) > 0;
      }
      EXPECT_EQ(rel.IsRelevant(a, b), want) << a << "," << b;
      EXPECT_EQ(rel.Index(a, b) >= 0, want) << a << "," << b;
      if (want) {
        ++count;
        EXPECT_EQ(rel.Pair(rel.Index(a, b)), std::make_pair(a, b));
      }
    }
  }
  EXPECT_EQ(rel.num_pairs(), count);
  EXPECT_EQ(rel.Index(0, 0), 0);
}

TEST(Relevance, Fig2AllPairsRelevant) {
  const RelevanceStructure rel(Fig2Game());
  EXPECT_EQ(rel.num_pairs(), 15);
  ExpectMatchesOracle(Fig2Game());
}

TEST(Relevance, SingleLeaf) {
  const RelevanceStructure rel(SingleLeafGame());
  EXPECT_EQ(rel.num_pairs(), 1);
  EXPECT_EQ(rel.Pair(0), std::make_pair(0, 0));
}

TEST(Relevance, Fig1BelowOpponentDecision) {
  // Two copies of the fig1 fixture below a Player-2 decision.
  GameBuilder b;
  const int top = b.AddDecision(2, "T", {"t1", "t2"});
  const GameTree f1 = Fig1Game();
  std::vector<int> ids(f1.num_nodes(), -1);
  for (int copy = 0; copy < 2; ++copy) {
    for (int v = 0; v < f1.num_nodes(); ++v) {
      const Node& n = f1.node(v);
      if (n.is_leaf()) {
        ids[v] = b.AddLeaf(n.payoffs[0], n.payoffs[1]);
        continue;
      }
      // Player 2 remembers the glued decision, Player 1 does not observe it.
      std::string name = f1.infoset(n.infoset).name;
      if (n.player == 2) name += std::to_string(copy);
      ids[v] = b.AddDecision(n.player, name, n.actions);
    }
    for (int v = 0; v < f1.num_nodes(); ++v) {
      const Node& n = f1.node(v);
      for (std::size_t a = 0; a < n.children.size(); ++a) {
        b.SetChild(ids[v], static_cast<int>(a), ids[n.children[a]]);
      }
    }
    b.SetChild(top, copy, ids[f1.root()]);
  }
  b.SetRoot(top);
  const GameTree g = std::move(b).Build();
  ASSERT_TRUE(IsAdmissible(g));
  ExpectMatchesOracle(g);
  ExpectMatchesOracle(Fig1Game());
}

TEST(Relevance, RandomGamesMatchOracle) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    SCOPED_TRACE(seed);
    ExpectMatchesOracle(testing::RandomGame(seed));
  }
}

TEST(Relevance, InfosetRelevanceConvention) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const RelevanceStructure rel(testing::RandomGame(seed));
    const SequenceSpace& s2 = rel.space2();
    for (int a = 0; a < rel.space1().size(); ++a) {
      for (int j = 0; j < s2.num_infosets(); ++j) {
        bool all = true;
        for (int x = 0; x < s2.num_actions[j]; ++x) {
          all = all && rel.IsRelevant(a, s2.Sequence(j, x));
        }
        EXPECT_EQ(rel.IsRelevantToInfoset(Player::kOne, a, j), all);
      }
    }
  }
}

TEST(Critical, Fig2Root) {
  const RelevanceStructure rel(Fig2Game());
  EXPECT_EQ(CriticalInfosets(rel, 0, 0, Player::kTwo), (std::vector<int>{0, 1}));
  EXPECT_EQ(CriticalInfosets(rel, 0, 0, Player::kOne), (std::vector<int>{0}));
  EXPECT_EQ(CriticalPlayer(rel, 0, 0), Player::kOne);
  // (1, 1): no child infosets for either player.
  EXPECT_TRUE(CriticalInfosets(rel, 1, 1, Player::kOne).empty());
  EXPECT_TRUE(CriticalInfosets(rel, 1, 1, Player::kTwo).empty());
}

TEST(Critical, TrivialOpponent) {
  // Player 2 never moves: both players have at most one critical infoset at
  // the root, so the tie goes to Player 1.
  const RelevanceStructure rel(Fig1Game());
  const GameTree solo = [] {
    GameBuilder b;
    const int a = b.AddDecision(1, "A", {"1", "2"});
    b.SetChild(a, 0, b.AddLeaf(0, 0));
    b.SetChild(a, 1, b.AddLeaf(0, 0));
    b.SetRoot(a);
    return std::move(b).Build();
  }();
  const RelevanceStructure r2(solo);
  EXPECT_TRUE(CriticalInfosets(r2, 0, 0, Player::kTwo).empty());
  EXPECT_EQ(CriticalPlayer(r2, 0, 0), Player::kOne);
  EXPECT_LE(CriticalInfosets(rel, 0, 0, CriticalPlayer(rel, 0, 0)).size(), 1u);
}

TEST(Critical, RandomGamesHaveCriticalPlayer) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const RelevanceStructure rel(testing::RandomGame(seed));
    for (int k = 0; k < rel.num_pairs(); ++k) {
      const auto [a, b] = rel.Pair(k);
      const Player p = CriticalPlayer(rel, a, b);
      EXPECT_LE(CriticalInfosets(rel, a, b, p).size(), 1u);
    }
  }
}

TEST(Critical, StructuralErrorWithoutCriticalPlayer) {
  // Chance root over two mirrored subgames where each player moves first in
  // one of them.
  GameBuilder b;
  const int c = b.AddChance({"l", "r"});
  const int p1 = b.AddDecision(1, "A", {"a", "b"});
  const int p2 = b.AddDecision(2, "X", {"x", "y"});
  b.SetChild(c, 0, p1);
  b.SetChild(c, 1, p2);
  for (int x = 0; x < 2; ++x) {
    const int n = b.AddDecision(2, "Y", {"x", "y"});
    b.SetChild(p1, x, n);
    b.SetChild(n, 0, b.AddLeaf(0, 0));
    b.SetChild(n, 1, b.AddLeaf(0, 0));
    const int m = b.AddDecision(1, "B", {"a", "b"});
    b.SetChild(p2, x, m);
    b.SetChild(m, 0, b.AddLeaf(0, 0));
    b.SetChild(m, 1, b.AddLeaf(0, 0));
  }
  b.SetRoot(c);
  const GameTree g = std::move(b).Build();
  const RelevanceStructure rel(g);
  EXPECT_EQ(CriticalInfosets(rel, 0, 0, Player::kOne).size(), 2u);
  EXPECT_EQ(CriticalInfosets(rel, 0, 0, Player::kTwo).size(), 2u);
  EXPECT_THROW(CriticalPlayer(rel, 0, 0), StructuralError);
  EXPECT_THROW(Decompose(rel), StructuralError);
}

}  // namespace
}  // namespace efce
