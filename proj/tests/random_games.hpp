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

// Random two-player perfect-recall games for property tests.

#ifndef EFCE_TESTS_RANDOM_GAMES_HPP
#define EFCE_TESTS_RANDOM_GAMES_HPP

#include <array>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "efce/game.hpp"

namespace efce::testing {

struct RandomGameOptions {
  int max_nodes = 200;
  int max_depth = 6;
  int max_actions = 3;
  // Nodes with the same acting player and own history share an infoset when
  // they also draw the same signal.
  int signals = 2;
  double leaf_probability = 0.2;
  int payoff_range = 5;
};

// Infosets are keyed by (player, own action history, signal), which gives
// perfect recall by construction.
inline GameTree RandomGame(std::uint64_t seed, const RandomGameOptions& opt = {}) {
  std::mt19937_64 rng(seed);
  GameBuilder b;
  std::map<std::string, int> width;
  int created = 0;
  int pending = 1;
  auto chance = [&](double p) { return std::uniform_real_distribution<double>(0, 1)(rng) < p; };
  auto uniform = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };

  auto build = [&](auto&& self, const std::array<std::string, 2>& history, int depth) -> int {
    ++created;
    --pending;
    const int player = uniform(1, 2);
    const int signal = uniform(0, opt.signals - 1);
    const std::string key = std::to_string(player) + "|" + history[player - 1] + "|" +
                            std::to_string(signal);
    auto it = width.find(key);
    const int k = it != width.end() ? it->second : uniform(2, opt.max_actions);
    const bool room = created + pending + k <= opt.max_nodes;
    const bool leaf =
        depth >= opt.max_depth || !room || (depth > 0 && chance(opt.leaf_probability));
    if (leaf) {
      return b.AddLeaf(uniform(-opt.payoff_range, opt.payoff_range),
                       uniform(-opt.payoff_range, opt.payoff_range));
    }
    width.emplace(key, k);
    std::vector<std::string> actions;
    for (int a = 0; a < k; ++a) actions.push_back("a" + std::to_string(a));
    const int id = b.AddDecision(player, "I" + key, actions, "n" + std::to_string(created));
    pending += k;
    for (int a = 0; a < k; ++a) {
      std::array<std::string, 2> next = history;
      next[player - 1] += "/" + key + ":" + std::to_string(a);
      b.SetChild(id, a, self(self, next, depth + 1));
    }
    return id;
  };
  b.SetRoot(build(build, {"", ""}, 0));
  return std::move(b).Build();
}

// A random game with at most `max_leaves` leaves.
inline GameTree RandomSmallGame(std::uint64_t seed, int max_leaves) {
  RandomGameOptions opt;
  opt.max_nodes = 2 * max_leaves;
  opt.max_depth = 5;
  for (std::uint64_t attempt = 0;; ++attempt) {
    GameTree g = RandomGame(seed * 7919 + attempt, opt);
    if (g.num_leaves() <= max_leaves) return g;
  }
}

}  // namespace efce::testing

#endif  // EFCE_TESTS_RANDOM_GAMES_HPP
