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

#ifndef EFCE_DECOMPOSE_HPP
#define EFCE_DECOMPOSE_HPP

#include <vector>

#include "efce/chain.hpp"
#include "efce/relevance.hpp"
#include "efce/sequence_space.hpp"

namespace efce {

namespace internal {

class Decomposer {
 public:
  explicit Decomposer(const RelevanceStructure& rel)
      : rel_(rel), chain_(rel.num_pairs(), 0) {}

  DecompositionChain Run() && {
    Visit(kEmptySequence, kEmptySequence);
    return std::move(chain_);
  }

 private:
  // Index of the pair whose player-`p` component is `own` and whose opponent
  // component is `opp`.
  int Oriented(Player p, int own, int opp) const {
    const int idx = p == Player::kOne ? rel_.Index(own, opp) : rel_.Index(opp, own);
    if (idx < 0) throw StructuralError("decomposition reached an irrelevant pair");
    return idx;
  }

  void Visit(int s1, int s2) {
    const Player ip = CriticalPlayer(rel_, s1, s2);
    const Player op = Opponent(ip);
    const auto critical = CriticalInfosets(rel_, s1, s2, ip);
    const SequenceSpace& own = rel_.space(ip);
    const SequenceSpace& opp = rel_.space(op);
    const int own_seq = ip == Player::kOne ? s1 : s2;
    const int opp_seq = ip == Player::kOne ? s2 : s1;
    const int here = rel_.Index(s1, s2);

    std::vector<int> ops;
    for (int infoset : own.child_infosets[own_seq]) {
      if (!rel_.IsRelevantToInfoset(op, opp_seq, infoset)) continue;
      ops.clear();
      for (int a = 0; a < own.num_actions[infoset]; ++a) {
        ops.push_back(Oriented(ip, own.Sequence(infoset, a), opp_seq));
      }
      chain_.AddFill(here, ops, Number(ip), infoset);
      for (int a = 0; a < own.num_actions[infoset]; ++a) {
        const int seq = own.Sequence(infoset, a);
        if (ip == Player::kOne) {
          Visit(seq, s2);
        } else {
          Visit(s1, seq);
        }
      }
    }

    // Opponent infosets below opp_seq that are relevant to own_seq, in
    // ascending (top-down) order.
    std::vector<int> js;
    if (own_seq == kEmptySequence) {
      js = opp.InfosetsBelow(opp_seq);
    } else {
      for (int j : rel_.Connected(ip, own.sequence_infoset[own_seq])) {
        if (opp.IsDescendant(opp.parent_sequence[j], opp_seq)) js.push_back(j);
      }
    }
    for (int j : js) {
      const bool sum = critical.size() == 1 &&
                       (ip == Player::kOne ? rel_.AreConnected(critical[0], j)
                                           : rel_.AreConnected(j, critical[0]));
      if (sum) {
        const int istar = critical[0];
        for (int a = 0; a < opp.num_actions[j]; ++a) {
          const int jseq = opp.Sequence(j, a);
          ops.clear();
          for (int b = 0; b < own.num_actions[istar]; ++b) {
            ops.push_back(Oriented(ip, own.Sequence(istar, b), jseq));
          }
          chain_.AddSum(Oriented(ip, own_seq, jseq), ops);
        }
      } else {
        ops.clear();
        for (int a = 0; a < opp.num_actions[j]; ++a) {
          ops.push_back(Oriented(ip, own_seq, opp.Sequence(j, a)));
        }
        chain_.AddFill(Oriented(ip, own_seq, opp.parent_sequence[j]), ops, Number(op), j);
      }
    }
  }

  const RelevanceStructure& rel_;
  DecompositionChain chain_;
};

}  // namespace internal

// Expresses the polytope of correlation plans as a chain of scaled
// extensions, indexed like `rel`. Deterministic: child infosets and opponent
// infosets are visited in ascending local id, which is top-down.
inline DecompositionChain Decompose(const RelevanceStructure& rel) {
  return internal::Decomposer(rel).Run();
}

// Sequence-form strategies of one player below `root_sequence` with that
// entry fixed to 1. Entry 0 of the chain is the root; `sequences[k]` is the
// player's sequence stored at chain entry k.
struct TreeplexChain {
  DecompositionChain chain;
  std::vector<int> sequences;
  std::vector<int> infosets;  // local infoset of each fill step
};

inline TreeplexChain BuildTreeplexChain(const SequenceSpace& space,
                                        int root_sequence = kEmptySequence) {
  TreeplexChain out;
  const auto infosets = space.InfosetsBelow(root_sequence);
  std::vector<int> slot(space.size(), -1);
  slot[root_sequence] = 0;
  out.sequences.push_back(root_sequence);
  for (int j : infosets) {
    for (int a = 0; a < space.num_actions[j]; ++a) {
      const int seq = space.Sequence(j, a);
      slot[seq] = static_cast<int>(out.sequences.size());
      out.sequences.push_back(seq);
    }
  }
  out.chain = DecompositionChain(static_cast<int>(out.sequences.size()), 0);
  std::vector<int> ops;
  for (int j : infosets) {
    ops.clear();
    for (int a = 0; a < space.num_actions[j]; ++a) ops.push_back(slot[space.Sequence(j, a)]);
    out.chain.AddFill(slot[space.parent_sequence[j]], ops, Number(space.player), j);
    out.infosets.push_back(j);
  }
  return out;
}

}  // namespace efce

#endif  // EFCE_DECOMPOSE_HPP
