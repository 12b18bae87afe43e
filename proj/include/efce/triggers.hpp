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

// Incentive constraints of an extensive-form correlated equilibrium.
//
// A trigger is a player i with one of their sequences s* = (I*, a*). When the
// mediator recommends a* at I*, player i may instead deviate and play any
// strategy y from I* onwards. With xi the correlation plan, the deviation is
// worth
//
//   sum_{z in Z(I*)} u_i(z) xi[s*, s_-i(z)] y[s_i(z)]
//
// and following the recommendations is worth
//
//   sum_{z in Z(s*)} u_i(z) xi[s_1(z), s_2(z)].
//
// A plan is an equilibrium when no trigger has a profitable deviation.

#ifndef EFCE_TRIGGERS_HPP
#define EFCE_TRIGGERS_HPP

#include <algorithm>
#include <array>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "efce/game.hpp"
#include "efce/plan.hpp"
#include "efce/relevance.hpp"

namespace efce {

struct Trigger {
  Player player = Player::kOne;
  int sequence = 0;       // s* in the player's sequence space
  int infoset = 0;        // local id of I*
  int root_sequence = 0;  // parent sequence of I*

  struct DeviationTerm {
    int xi;        // plan index of (s*, s_-i(z)), oriented
    int sequence;  // s_i(z)
    double payoff;
  };
  struct FollowTerm {
    int xi;  // plan index of (s_1(z), s_2(z))
    double payoff;
  };
  std::vector<DeviationTerm> deviation;
  std::vector<FollowTerm> follow;
};

class TriggerIndex {
 public:
  TriggerIndex() = default;

  TriggerIndex(const GameTree& game, const RelevanceStructure& rel) {
    for (Player p : kPlayers) {
      const SequenceSpace& own = rel.space(p);
      const SequenceSpace& other = rel.space(Opponent(p));
      auto& subtree = subtree_[Index(p)];
      subtree.assign(own.num_infosets(), {});
      for (int i = 0; i < own.num_infosets(); ++i) {
        subtree[i].push_back(i);
        for (int a = 0; a < own.num_actions[i]; ++a) {
          const auto below = own.InfosetsBelow(own.Sequence(i, a));
          subtree[i].insert(subtree[i].end(), below.begin(), below.end());
        }
        std::sort(subtree[i].begin(), subtree[i].end());
        for (int a = 0; a < own.num_actions[i]; ++a) {
          Trigger t;
          t.player = p;
          t.sequence = own.Sequence(i, a);
          t.infoset = i;
          t.root_sequence = own.parent_sequence[i];
          for (int z : own.infoset_leaves[i]) {
            const double u = game.node(z).payoffs[Index(p)];
            if (u == 0.0) continue;
            const int xi = Oriented(rel, p, t.sequence, other.node_sequence[z]);
            t.deviation.push_back({xi, own.node_sequence[z], u});
          }
          for (int z : own.sequence_leaves[t.sequence]) {
            const double u = game.node(z).payoffs[Index(p)];
            if (u == 0.0) continue;
            const int xi = Oriented(rel, p, own.node_sequence[z], other.node_sequence[z]);
            t.follow.push_back({xi, u});
          }
          triggers_.push_back(std::move(t));
        }
      }
    }
  }

  int size() const { return static_cast<int>(triggers_.size()); }
  const std::vector<Trigger>& triggers() const { return triggers_; }
  const Trigger& operator[](int k) const { return triggers_[k]; }

  // I and every infoset of the same player below it, ascending.
  const std::vector<int>& Subtree(Player p, int infoset) const {
    return subtree_[Index(p)][infoset];
  }

 private:
  static int Oriented(const RelevanceStructure& rel, Player p, int own, int other) {
    const int idx = p == Player::kOne ? rel.Index(own, other) : rel.Index(other, own);
    if (idx < 0) throw StructuralError("trigger references an irrelevant sequence pair");
    return idx;
  }

  std::vector<Trigger> triggers_;
  std::array<std::vector<std::vector<int>>, 2> subtree_;
};

struct GapResult {
  double gap = 0.0;      // max(0, best advantage)
  double advantage = 0;  // best (deviation - follow) over triggers, unfloored
  int trigger = -1;      // index of the maximizing trigger, -1 without triggers
};

// Largest utility increase any trigger can obtain by deviating, computed
// exactly with a best-response pass over the deviating player's subtree.
// Throws ContractError when `plan` is not a correlation plan within `tol`.
inline GapResult DeviationGap(const RelevanceStructure& rel, const TriggerIndex& triggers,
                              std::span<const double> plan,
                              double tol = kDefaultTolerance) {
  const auto violations = CheckPlanConstraints(rel, plan, tol);
  if (!violations.empty()) {
    throw ContractError("deviation gap of an infeasible plan: " +
                        violations.front().constraint);
  }
  GapResult out;
  out.advantage = -std::numeric_limits<double>::infinity();
  std::array<std::vector<double>, 2> coeff;
  std::array<std::vector<double>, 2> value;
  for (Player p : kPlayers) {
    coeff[Index(p)].assign(rel.space(p).size(), 0.0);
    value[Index(p)].assign(rel.space(p).num_infosets(), 0.0);
  }
  for (int k = 0; k < triggers.size(); ++k) {
    const Trigger& t = triggers[k];
    const SequenceSpace& space = rel.space(t.player);
    auto& c = coeff[Index(t.player)];
    auto& v = value[Index(t.player)];
    for (const auto& term : t.deviation) c[term.sequence] += term.payoff * plan[term.xi];
    const auto& sub = triggers.Subtree(t.player, t.infoset);
    for (auto it = sub.rbegin(); it != sub.rend(); ++it) {
      const int j = *it;
      double best = -std::numeric_limits<double>::infinity();
      for (int a = 0; a < space.num_actions[j]; ++a) {
        const int seq = space.Sequence(j, a);
        double q = c[seq];
        for (int child : space.child_infosets[seq]) q += v[child];
        best = std::max(best, q);
      }
      v[j] = best;
    }
    const double deviate = v[t.infoset];
    for (const auto& term : t.deviation) c[term.sequence] = 0.0;
    double follow = 0.0;
    for (const auto& term : t.follow) follow += term.payoff * plan[term.xi];
    const double adv = deviate - follow;
    if (adv > out.advantage) {
      out.advantage = adv;
      out.trigger = k;
    }
  }
  if (triggers.size() == 0) out.advantage = 0.0;
  out.gap = std::max(0.0, out.advantage);
  return out;
}

}  // namespace efce

#endif  // EFCE_TRIGGERS_HPP
