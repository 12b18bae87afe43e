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

// Exhaustive reference computations for small games. They work directly on
// the game tree, walk every node pair or every pure strategy, and are meant
// for cross-checking the fast paths on games with a few dozen leaves.

#ifndef EFCE_ORACLE_HPP
#define EFCE_ORACLE_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <set>
#include <span>
#include <utility>
#include <vector>

#include "efce/game.hpp"
#include "efce/plan.hpp"
#include "efce/relevance.hpp"

namespace efce::oracle {

// Pairs (Player-1 infoset id, Player-2 infoset id) of game infosets with a
// node of one on the root path of a node of the other, by checking every node
// pair.
inline std::set<std::pair<int, int>> ConnectedInfosets(const GameTree& game) {
  std::set<std::pair<int, int>> out;
  for (int u = 0; u < game.num_nodes(); ++u) {
    const Node& a = game.node(u);
    if (!a.is_decision() || a.player != 1) continue;
    for (int v = 0; v < game.num_nodes(); ++v) {
      const Node& b = game.node(v);
      if (!b.is_decision() || b.player != 2) continue;
      if (game.IsAncestor(u, v) || game.IsAncestor(v, u)) out.insert({a.infoset, b.infoset});
    }
  }
  return out;
}

// Every reduced pure strategy of one player: actions only at infosets the
// strategy itself reaches. Throws Error when there are more than `cap`.
inline std::vector<PureStrategy> PureStrategies(const SequenceSpace& space,
                                                std::size_t cap = 100000) {
  std::vector<PureStrategy> out;
  PureStrategy current(space.num_infosets(), -1);
  std::vector<char> active(space.size(), 0);
  active[kEmptySequence] = 1;
  auto rec = [&](auto&& self, int i) -> void {
    if (i == space.num_infosets()) {
      if (out.size() >= cap) throw Error("too many pure strategies to enumerate");
      out.push_back(current);
      return;
    }
    if (!active[space.parent_sequence[i]]) {
      current[i] = -1;
      self(self, i + 1);
      return;
    }
    for (int a = 0; a < space.num_actions[i]; ++a) {
      current[i] = a;
      active[space.Sequence(i, a)] = 1;
      self(self, i + 1);
      active[space.Sequence(i, a)] = 0;
    }
    current[i] = -1;
  };
  rec(rec, 0);
  return out;
}

namespace internal {

struct PathStep {
  int node;
  int action;
};

inline std::vector<PathStep> RootPath(const GameTree& game, int leaf) {
  std::vector<PathStep> path;
  for (int v = leaf; game.node(v).parent != -1; v = game.node(v).parent) {
    path.push_back({game.node(v).parent, game.node(v).parent_action});
  }
  std::reverse(path.begin(), path.end());
  return path;
}

// Sequence index of the last decision of `player` on the path.
inline int LastSequence(const GameTree& game, const SequenceSpace& space,
                        const std::vector<PathStep>& path) {
  int seq = kEmptySequence;
  for (const auto& s : path) {
    const Node& n = game.node(s.node);
    if (n.player == Number(space.player)) {
      seq = space.Sequence(space.local_infoset[n.infoset], s.action);
    }
  }
  return seq;
}

}  // namespace internal

// Deviation gap by enumerating, for every trigger, every reduced pure
// continuation strategy of the deviating player from the trigger infoset on
// and evaluating it leaf by leaf. Returns max(0, best advantage).
inline double BruteForceDeviationGap(const GameTree& game, const RelevanceStructure& rel,
                                     std::span<const double> plan,
                                     std::size_t cap = 1000000) {
  const int num_leaves = game.num_leaves();
  std::vector<int> leaves = game.Leaves();
  std::vector<std::vector<internal::PathStep>> paths;
  std::vector<std::array<int, 2>> seqs;
  for (int z : leaves) {
    paths.push_back(internal::RootPath(game, z));
    seqs.push_back({internal::LastSequence(game, rel.space1(), paths.back()),
                    internal::LastSequence(game, rel.space2(), paths.back())});
  }
  auto xi = [&](int s1, int s2) {
    const int idx = rel.Index(s1, s2);
    if (idx < 0) throw StructuralError("oracle reached an irrelevant pair");
    return plan[idx];
  };

  double best = 0.0;
  for (Player p : kPlayers) {
    const int pi = Index(p);
    const int number = Number(p);
    for (int target = 0; target < game.num_infosets(); ++target) {
      if (game.infoset(target).player != number) continue;
      // Leaves below the infoset, with the position of its node on the path.
      std::vector<std::pair<int, int>> below;
      std::set<int> infosets;
      for (int l = 0; l < num_leaves; ++l) {
        const auto& path = paths[l];
        for (int d = 0; d < static_cast<int>(path.size()); ++d) {
          if (game.node(path[d].node).infoset == target &&
              game.node(path[d].node).is_decision()) {
            below.push_back({l, d});
            for (int e = d; e < static_cast<int>(path.size()); ++e) {
              const Node& n = game.node(path[e].node);
              if (n.player == number) infosets.insert(n.infoset);
            }
            break;
          }
        }
      }
      // Reduced continuations: an action is chosen exactly at the infosets
      // the continuation itself reaches. Local ids put parents first.
      const SequenceSpace& space = rel.space(p);
      std::vector<int> order;
      for (int i : infosets) order.push_back(space.local_infoset[i]);
      std::sort(order.begin(), order.end());
      std::vector<int> choice(space.num_infosets(), -1);
      std::vector<std::vector<int>> continuations;
      const int root_local = space.local_infoset[target];
      auto enumerate = [&](auto&& self, std::size_t k) -> void {
        if (k == order.size()) {
          if (continuations.size() >= cap) throw Error("too many deviations to enumerate");
          continuations.push_back(choice);
          return;
        }
        const int j = order[k];
        const int parent = space.parent_sequence[j];
        const bool reached =
            j == root_local || (parent != kEmptySequence &&
                                choice[space.sequence_infoset[parent]] ==
                                    space.sequence_action[parent]);
        if (!reached) {
          self(self, k + 1);
          return;
        }
        for (int a = 0; a < space.num_actions[j]; ++a) {
          choice[j] = a;
          self(self, k + 1);
        }
        choice[j] = -1;
      };
      enumerate(enumerate, 0);
      const int width = static_cast<int>(game.infoset(target).actions.size());
      for (int a_star = 0; a_star < width; ++a_star) {
        const int s_star = space.Sequence(root_local, a_star);
        double follow = 0.0;
        for (const auto& [l, d] : below) {
          if (paths[l][d].action != a_star) continue;
          follow += game.node(leaves[l]).payoffs[pi] * xi(seqs[l][0], seqs[l][1]);
        }
        for (const auto& cont : continuations) {
          double deviate = 0.0;
          for (const auto& [l, d] : below) {
            const auto& path = paths[l];
            bool consistent = true;
            for (int e = d; e < static_cast<int>(path.size()) && consistent; ++e) {
              const Node& n = game.node(path[e].node);
              if (n.player == number && cont[space.local_infoset[n.infoset]] != path[e].action) {
                consistent = false;
              }
            }
            if (!consistent) continue;
            const int other = seqs[l][1 - pi];
            const double mass = p == Player::kOne ? xi(s_star, other) : xi(other, s_star);
            deviate += game.node(leaves[l]).payoffs[pi] * mass;
          }
          best = std::max(best, deviate - follow);
        }
      }
    }
  }
  return best;
}

}  // namespace efce::oracle

#endif  // EFCE_ORACLE_HPP
