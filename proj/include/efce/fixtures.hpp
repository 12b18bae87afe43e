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

// Small hand-built games used by tests, examples and the CLI.

#ifndef EFCE_FIXTURES_HPP
#define EFCE_FIXTURES_HPP

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "efce/game.hpp"

namespace efce {

using PayoffList = std::vector<std::array<double, 2>>;

// Player 1 acts at A; action 1 leads to a Player-2 node X whose two actions
// lead to Player-1 infosets B and C; action 2 leads to a Player-2 node Y whose
// two actions both reach infoset D (Player 1 cannot tell them apart).
// Player 1's sequences are 1,2 at A, 3,4 at B, 5,6 at C and 7,8,9 at D.
//
// The ten leaves are numbered left to right; `payoffs` is either empty (all
// zero) or has one pair per leaf.
inline GameTree Fig1Game(const PayoffList& payoffs = {}) {
  if (!payoffs.empty() && payoffs.size() != 10) {
    throw GameError("fig1 needs 10 payoff pairs, got " +
                    std::to_string(payoffs.size()));
  }
  GameBuilder b;
  int leaf_count = 0;
  auto leaf = [&]() {
    const auto u = payoffs.empty() ? std::array<double, 2>{0, 0}
                                   : payoffs[leaf_count];
    ++leaf_count;
    return b.AddLeaf(u[0], u[1], "z" + std::to_string(leaf_count));
  };
  const int a = b.AddDecision(1, "A", {"1", "2"}, "a");
  const int x = b.AddDecision(2, "X", {"x1", "x2"}, "x");
  b.SetChild(a, 0, x);
  const int nb = b.AddDecision(1, "B", {"3", "4"}, "b");
  b.SetChild(x, 0, nb);
  b.SetChild(nb, 0, leaf());
  b.SetChild(nb, 1, leaf());
  const int nc = b.AddDecision(1, "C", {"5", "6"}, "c");
  b.SetChild(x, 1, nc);
  b.SetChild(nc, 0, leaf());
  b.SetChild(nc, 1, leaf());
  const int y = b.AddDecision(2, "Y", {"y1", "y2"}, "y");
  b.SetChild(a, 1, y);
  for (int k = 0; k < 2; ++k) {
    const int d = b.AddDecision(1, "D", {"7", "8", "9"}, "d" + std::to_string(k + 1));
    b.SetChild(y, k, d);
    for (int j = 0; j < 3; ++j) b.SetChild(d, j, leaf());
  }
  b.SetRoot(a);
  return std::move(b).Build();
}

// Player 1 acts at A; action 1 leads to Player-2 infoset B (actions 1, 2),
// action 2 to Player-2 infoset C (actions 3, 4). Four leaves, left to right;
// `payoffs` is either empty (all zero) or has four pairs.
inline GameTree Fig2Game(const PayoffList& payoffs = {}) {
  if (!payoffs.empty() && payoffs.size() != 4) {
    throw GameError("fig2 needs 4 payoff pairs, got " +
                    std::to_string(payoffs.size()));
  }
  GameBuilder b;
  const int a = b.AddDecision(1, "A", {"1", "2"}, "a");
  const int nb = b.AddDecision(2, "B", {"1", "2"}, "b");
  const int nc = b.AddDecision(2, "C", {"3", "4"}, "c");
  b.SetChild(a, 0, nb);
  b.SetChild(a, 1, nc);
  for (int k = 0; k < 4; ++k) {
    const auto u = payoffs.empty() ? std::array<double, 2>{0, 0} : payoffs[k];
    const int z = b.AddLeaf(u[0], u[1], "z" + std::to_string(k + 1));
    b.SetChild(k < 2 ? nb : nc, k % 2, z);
  }
  b.SetRoot(a);
  return std::move(b).Build();
}

// A game whose root is a leaf.
inline GameTree SingleLeafGame(double u1 = 0, double u2 = 0) {
  GameBuilder b;
  b.SetRoot(b.AddLeaf(u1, u2, "z"));
  return std::move(b).Build();
}

inline GameTree BuildFixture(std::string_view name, const PayoffList& payoffs = {}) {
  if (name == "fig1") return Fig1Game(payoffs);
  if (name == "fig2") return Fig2Game(payoffs);
  if (name == "leaf") {
    if (payoffs.size() > 1) throw GameError("leaf fixture takes one payoff pair");
    return payoffs.empty() ? SingleLeafGame() : SingleLeafGame(payoffs[0][0], payoffs[0][1]);
  }
  throw GameError("unknown fixture '" + std::string(name) +
                  "' (expected fig1, fig2 or leaf)");
}

}  // namespace efce

#endif  // EFCE_FIXTURES_HPP
