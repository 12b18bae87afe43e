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

// Correlation plans: vectors indexed by relevant sequence pairs.

#ifndef EFCE_PLAN_HPP
#define EFCE_PLAN_HPP

#include <array>
#include <cmath>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "efce/relevance.hpp"

namespace efce {

using CorrelationPlan = std::vector<double>;

struct PlanViolation {
  std::string constraint;
  double residual = 0.0;
};

// Every defining constraint of the correlation-plan polytope violated by more
// than `tol`: the unit root, mass conservation for each (infoset, sequence)
// relevant pair of either player, and nonnegativity.
inline std::vector<PlanViolation> CheckPlanConstraints(const RelevanceStructure& rel,
                                                       std::span<const double> plan,
                                                       double tol = kDefaultTolerance) {
  if (static_cast<int>(plan.size()) != rel.num_pairs()) {
    throw ContractError("plan has dimension " + std::to_string(plan.size()) +
                        ", expected " + std::to_string(rel.num_pairs()));
  }
  std::vector<PlanViolation> out;
  auto report = [&](std::string what, double residual) {
    if (!(std::abs(residual) <= tol)) out.push_back({std::move(what), residual});
  };
  report("xi[(0,0)] = 1", plan[0] - 1.0);

  for (Player p : kPlayers) {
    const SequenceSpace& own = rel.space(p);
    const SequenceSpace& other = rel.space(Opponent(p));
    auto at = [&](int own_seq, int other_seq) -> int {
      return p == Player::kOne ? rel.Index(own_seq, other_seq) : rel.Index(other_seq, own_seq);
    };
    for (int i = 0; i < own.num_infosets(); ++i) {
      // Opponent sequences relevant to infoset i: the empty sequence and the
      // sequences of every connected opponent infoset.
      std::vector<int> others = {kEmptySequence};
      for (int j : rel.Connected(p, i)) {
        for (int a = 0; a < other.num_actions[j]; ++a) others.push_back(other.Sequence(j, a));
      }
      for (int t : others) {
        const int parent = at(own.parent_sequence[i], t);
        double sum = 0.0;
        bool complete = parent >= 0;
        for (int a = 0; a < own.num_actions[i] && complete; ++a) {
          const int idx = at(own.Sequence(i, a), t);
          if (idx < 0) {
            complete = false;
          } else {
            sum += plan[idx];
          }
        }
        const std::string name = "player " + std::to_string(Number(p)) + " infoset " +
                                 std::to_string(i) + " vs sequence " + std::to_string(t);
        if (!complete) {
          out.push_back({name + ": constraint references an irrelevant pair",
                         std::numeric_limits<double>::quiet_NaN()});
          continue;
        }
        report(name, sum - plan[parent]);
      }
    }
  }
  for (int k = 0; k < rel.num_pairs(); ++k) {
    if (!(plan[k] >= -tol)) {
      const auto [a, b] = rel.Pair(k);
      out.push_back({"xi[(" + std::to_string(a) + "," + std::to_string(b) + ")] >= 0",
                     plan[k]});
    }
  }
  return out;
}

// Pure reduced strategy of one player: the chosen action for each local
// infoset, or -1 for infosets the strategy never reaches.
using PureStrategy = std::vector<int>;

// 0/1 sequence-form vector of a pure strategy. Throws ContractError when a
// reachable infoset has no valid action.
inline std::vector<double> PureSequenceForm(const SequenceSpace& space,
                                            const PureStrategy& strategy) {
  if (static_cast<int>(strategy.size()) != space.num_infosets()) {
    throw ContractError("pure strategy has " + std::to_string(strategy.size()) +
                        " entries, expected " + std::to_string(space.num_infosets()));
  }
  std::vector<double> x(space.size(), 0.0);
  x[kEmptySequence] = 1.0;
  for (int i = 0; i < space.num_infosets(); ++i) {
    if (x[space.parent_sequence[i]] == 0.0) continue;
    const int a = strategy[i];
    if (a < 0 || a >= space.num_actions[i]) {
      throw ContractError("pure strategy of player " + std::to_string(Number(space.player)) +
                          " has no action at reachable infoset " + std::to_string(i));
    }
    x[space.Sequence(i, a)] = 1.0;
  }
  return x;
}

// The plan xi[s1, s2] = x1[s1] * x2[s2] of a pure strategy profile.
inline CorrelationPlan PureProfilePlan(const RelevanceStructure& rel,
                                       const std::array<PureStrategy, 2>& profile) {
  const auto x1 = PureSequenceForm(rel.space1(), profile[0]);
  const auto x2 = PureSequenceForm(rel.space2(), profile[1]);
  CorrelationPlan plan(rel.num_pairs());
  for (int k = 0; k < rel.num_pairs(); ++k) {
    const auto [a, b] = rel.Pair(k);
    plan[k] = x1[a] * x2[b];
  }
  return plan;
}

// Counts relevant pairs (s1, s2) with distinct child infosets I1, I1' of s1
// and I2, I2' of s2 such that I1 is connected to I2 and I1' to I2'. Zero on
// every two-player game without chance moves.
inline long long CountSiblingConnectionViolations(const RelevanceStructure& rel) {
  long long count = 0;
  const SequenceSpace& p1 = rel.space1();
  const SequenceSpace& p2 = rel.space2();
  for (int k = 0; k < rel.num_pairs(); ++k) {
    const auto [s1, s2] = rel.Pair(k);
    const auto& c1 = p1.child_infosets[s1];
    const auto& c2 = p2.child_infosets[s2];
    if (c1.size() < 2 || c2.size() < 2) continue;
    for (int i : c1) {
      for (int ip : c1) {
        if (ip == i) continue;
        for (int j : c2) {
          if (!rel.AreConnected(i, j)) continue;
          for (int jp : c2) {
            if (jp != j && rel.AreConnected(ip, jp)) ++count;
          }
        }
      }
    }
  }
  return count;
}

}  // namespace efce

#endif  // EFCE_PLAN_HPP
