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

// Parametric two-player Battleship.
//
// Each player secretly places one ship of the given length on their own
// w x h board (Player 1 first, then Player 2, neither seeing the other's
// placement). Players then alternate shots at the opponent's board, Player 1
// first, each firing at most `num_turns` shots and never at a cell they have
// already fired at. A player observes their own placement and the hit/miss
// result of their own shots, nothing about the opponent's shots. The player
// who hits every cell of the opponent's ship wins +1 and the opponent gets -1;
// if nobody does within the shot budget both get 0.

#ifndef EFCE_BATTLESHIP_HPP
#define EFCE_BATTLESHIP_HPP

#include <algorithm>
#include <array>
#include <string>
#include <vector>

#include "efce/game.hpp"

namespace efce {

struct BattleshipParams {
  int width = 2;
  int height = 1;
  int num_turns = 1;
  int ship_length = 1;
};

namespace internal {

class BattleshipBuilder {
 public:
  explicit BattleshipBuilder(const BattleshipParams& p) : p_(p) {
    for (int r = 0; r < p.height; ++r) {
      for (int c = 0; c + p.ship_length <= p.width; ++c) {
        AddPlacement('h', r, c, 0, 1);
      }
    }
    if (p.ship_length > 1) {
      for (int r = 0; r + p.ship_length <= p.height; ++r) {
        for (int c = 0; c < p.width; ++c) AddPlacement('v', r, c, 1, 0);
      }
    }
  }

  GameTree Build() && {
    std::vector<std::string> labels;
    for (const auto& pl : placements_) labels.push_back(pl.label);
    const int root = b_.AddDecision(1, "p1/place", labels);
    for (int i = 0; i < static_cast<int>(placements_.size()); ++i) {
      const int p2 = b_.AddDecision(2, "p2/place", labels);
      b_.SetChild(root, i, p2);
      for (int j = 0; j < static_cast<int>(placements_.size()); ++j) {
        State s;
        s.ship = {i, j};
        s.history = {"p1/" + labels[i], "p2/" + labels[j]};
        b_.SetChild(p2, j, Shoot(s));
      }
    }
    b_.SetRoot(root);
    return std::move(b_).Build();
  }

 private:
  struct Placement {
    std::string label;
    std::vector<int> cells;
  };

  struct State {
    std::array<int, 2> ship{};
    std::array<std::vector<int>, 2> fired;
    std::array<std::string, 2> history;
    int to_move = 0;
  };

  void AddPlacement(char dir, int r, int c, int dr, int dc) {
    Placement pl;
    pl.label = std::string(1, dir) + std::to_string(r) + "_" + std::to_string(c);
    for (int k = 0; k < p_.ship_length; ++k) {
      pl.cells.push_back((r + k * dr) * p_.width + (c + k * dc));
    }
    placements_.push_back(std::move(pl));
  }

  static std::string CellName(int cell, int width) {
    return "s" + std::to_string(cell / width) + "_" + std::to_string(cell % width);
  }

  bool Sunk(const std::vector<int>& fired, int placement) const {
    for (int cell : placements_[placement].cells) {
      if (std::find(fired.begin(), fired.end(), cell) == fired.end()) return false;
    }
    return true;
  }

  int Shoot(const State& s) {
    const int me = s.to_move;
    if (static_cast<int>(s.fired[me].size()) >= p_.num_turns) {
      return b_.AddLeaf(0, 0);
    }
    const int cells = p_.width * p_.height;
    std::vector<int> targets;
    std::vector<std::string> labels;
    for (int cell = 0; cell < cells; ++cell) {
      if (std::find(s.fired[me].begin(), s.fired[me].end(), cell) == s.fired[me].end()) {
        targets.push_back(cell);
        labels.push_back(CellName(cell, p_.width));
      }
    }
    const int node = b_.AddDecision(me + 1, s.history[me], labels);
    const auto& enemy = placements_[s.ship[1 - me]].cells;
    for (int k = 0; k < static_cast<int>(targets.size()); ++k) {
      State next = s;
      next.fired[me].push_back(targets[k]);
      const bool hit =
          std::find(enemy.begin(), enemy.end(), targets[k]) != enemy.end();
      next.history[me] += "/" + labels[k] + (hit ? "+" : "-");
      int child = 0;
      if (hit && Sunk(next.fired[me], s.ship[1 - me])) {
        child = me == 0 ? b_.AddLeaf(1, -1) : b_.AddLeaf(-1, 1);
      } else {
        next.to_move = 1 - me;
        child = Shoot(next);
      }
      b_.SetChild(node, k, child);
    }
    return node;
  }

  BattleshipParams p_;
  std::vector<Placement> placements_;
  GameBuilder b_;
};

}  // namespace internal

// Throws GameError when the parameters are out of range or the ship does not
// fit on the board.
inline GameTree GenerateBattleship(const BattleshipParams& params) {
  if (params.width < 1 || params.height < 1) {
    throw GameError("battleship board dimensions must be positive");
  }
  if (params.num_turns < 1) throw GameError("battleship needs at least one turn");
  if (params.ship_length < 1) throw GameError("battleship ship length must be positive");
  if (params.ship_length > std::max(params.width, params.height)) {
    throw GameError("a ship of length " + std::to_string(params.ship_length) +
                    " does not fit on a " + std::to_string(params.width) + "x" +
                    std::to_string(params.height) + " board");
  }
  return internal::BattleshipBuilder(params).Build();
}

inline GameTree GenerateBattleship(int width, int height, int num_turns,
                                   int ship_length) {
  return GenerateBattleship(BattleshipParams{width, height, num_turns, ship_length});
}

}  // namespace efce

#endif  // EFCE_BATTLESHIP_HPP
