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

#ifndef EFCE_RELEVANCE_HPP
#define EFCE_RELEVANCE_HPP

#include <algorithm>
#include <array>
#include <string>
#include <utility>
#include <vector>

#include "efce/game.hpp"
#include "efce/sequence_space.hpp"

namespace efce {

// Connected infosets and relevant sequence pairs of a two-player game.
//
// Two infosets of different players are connected when some node of one is an
// ancestor of some node of the other. A sequence pair is relevant when either
// sequence is empty or the two parent infosets are connected. Relevant pairs
// are numbered by (sigma1, sigma2) in lexicographic order, so (empty, empty)
// is index 0.
class RelevanceStructure {
 public:
  explicit RelevanceStructure(const GameTree& game)
      : spaces_{BuildSequenceSpace(game, Player::kOne),
                BuildSequenceSpace(game, Player::kTwo)} {
    const int k1 = spaces_[0].num_infosets();
    const int k2 = spaces_[1].num_infosets();
    connected_.assign(2, {});
    connected_[0].assign(k1, {});
    connected_[1].assign(k2, {});

    // For each decision node, every opposing decision node on its root path
    // gives a connected pair.
    for (int v = 0; v < game.num_nodes(); ++v) {
      const Node& n = game.node(v);
      if (!n.is_decision()) continue;
      for (int u = n.parent; u != -1; u = game.node(u).parent) {
        const Node& a = game.node(u);
        if (!a.is_decision() || a.player == n.player) continue;
        const int iv = Local(n.player, n.infoset);
        const int iu = Local(a.player, a.infoset);
        if (iv < 0 || iu < 0) continue;
        if (n.player == 1) {
          connected_[0][iv].push_back(iu);
          connected_[1][iu].push_back(iv);
        } else {
          connected_[0][iu].push_back(iv);
          connected_[1][iv].push_back(iu);
        }
      }
    }
    for (auto& side : connected_) {
      for (auto& list : side) {
        std::sort(list.begin(), list.end());
        list.erase(std::unique(list.begin(), list.end()), list.end());
      }
    }

    // Relevant pairs, row by row over sigma1.
    const SequenceSpace& s1 = spaces_[0];
    const SequenceSpace& s2 = spaces_[1];
    row_begin_.assign(s1.size() + 1, 0);
    for (int a = 0; a < s1.size(); ++a) {
      row_begin_[a] = static_cast<int>(cols_.size());
      if (a == kEmptySequence) {
        for (int b = 0; b < s2.size(); ++b) cols_.push_back(b);
        continue;
      }
      cols_.push_back(kEmptySequence);
      for (int j : connected_[0][s1.sequence_infoset[a]]) {
        for (int x = 0; x < s2.num_actions[j]; ++x) cols_.push_back(s2.Sequence(j, x));
      }
      std::sort(cols_.begin() + row_begin_[a], cols_.end());
    }
    row_begin_[s1.size()] = static_cast<int>(cols_.size());
    rows_.resize(cols_.size());
    for (int a = 0; a < s1.size(); ++a) {
      for (int k = row_begin_[a]; k < row_begin_[a + 1]; ++k) rows_[k] = a;
    }
  }

  const SequenceSpace& space(Player p) const { return spaces_[efce::Index(p)]; }
  const SequenceSpace& space1() const { return spaces_[0]; }
  const SequenceSpace& space2() const { return spaces_[1]; }

  int num_pairs() const { return static_cast<int>(cols_.size()); }

  // Dense index of (s1, s2), or -1 when the pair is not relevant.
  int Index(int s1, int s2) const {
    const auto first = cols_.begin() + row_begin_[s1];
    const auto last = cols_.begin() + row_begin_[s1 + 1];
    const auto it = std::lower_bound(first, last, s2);
    if (it == last || *it != s2) return -1;
    return static_cast<int>(it - cols_.begin());
  }

  std::pair<int, int> Pair(int index) const { return {rows_[index], cols_[index]}; }

  // Local infosets of the opponent connected to local infoset `infoset` of
  // `p`, ascending.
  const std::vector<int>& Connected(Player p, int infoset) const {
    return connected_[efce::Index(p)][infoset];
  }

  bool AreConnected(int infoset1, int infoset2) const {
    const auto& list = connected_[0][infoset1];
    return std::binary_search(list.begin(), list.end(), infoset2);
  }

  // Pair relevance straight from the definition.
  bool IsRelevant(int s1, int s2) const {
    if (s1 == kEmptySequence || s2 == kEmptySequence) return true;
    return AreConnected(spaces_[0].sequence_infoset[s1], spaces_[1].sequence_infoset[s2]);
  }

  // sequence `seq` of player `p` versus infoset `infoset` of the opponent.
  bool IsRelevantToInfoset(Player p, int seq, int infoset) const {
    if (seq == kEmptySequence) return true;
    const int own = spaces_[efce::Index(p)].sequence_infoset[seq];
    return p == Player::kOne ? AreConnected(own, infoset) : AreConnected(infoset, own);
  }

  // Indices of the pairs whose first sequence is s1 form [RowBegin, RowEnd).
  int RowBegin(int s1) const { return row_begin_[s1]; }
  int RowEnd(int s1) const { return row_begin_[s1 + 1]; }

 private:
  int Local(int player, int infoset) const {
    return spaces_[player - 1].local_infoset[infoset];
  }

  std::array<SequenceSpace, 2> spaces_;
  std::vector<std::vector<std::vector<int>>> connected_;
  std::vector<int> row_begin_;
  std::vector<int> cols_;
  std::vector<int> rows_;
};

// Infosets I of `player` with sigma(I) equal to the player's component of
// (s1, s2) that are connected to some opponent infoset J whose parent sequence
// is the opponent's component.
inline std::vector<int> CriticalInfosets(const RelevanceStructure& rel, int s1, int s2,
                                         Player player) {
  const Player opp = Opponent(player);
  const SequenceSpace& own = rel.space(player);
  const SequenceSpace& other = rel.space(opp);
  const int own_seq = player == Player::kOne ? s1 : s2;
  const int opp_seq = player == Player::kOne ? s2 : s1;
  std::vector<int> out;
  for (int i : own.child_infosets[own_seq]) {
    for (int j : rel.Connected(player, i)) {
      if (other.parent_sequence[j] == opp_seq) {
        out.push_back(i);
        break;
      }
    }
  }
  return out;
}

// A player with at most one critical infoset for the pair, Player 1 when both
// qualify. Throws StructuralError when neither does.
inline Player CriticalPlayer(const RelevanceStructure& rel, int s1, int s2) {
  for (Player p : kPlayers) {
    if (CriticalInfosets(rel, s1, s2, p).size() <= 1) return p;
  }
  throw StructuralError("no critical player for sequence pair (" + std::to_string(s1) +
                        ", " + std::to_string(s2) +
                        "); the game is not a two-player chance-free game");
}

}  // namespace efce

#endif  // EFCE_RELEVANCE_HPP
