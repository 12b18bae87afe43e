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

#ifndef EFCE_SEQUENCE_SPACE_HPP
#define EFCE_SEQUENCE_SPACE_HPP

#include <algorithm>
#include <string>
#include <vector>

#include "efce/game.hpp"

namespace efce {

inline constexpr int kEmptySequence = 0;

// Sequence-form bookkeeping for one player.
//
// The player's infosets get local ids 0..k-1 in order of first appearance in a
// preorder walk of the tree (children in action order), which is a topological
// order of the infoset forest. Sequences are numbered with the empty sequence
// at 0 followed by the actions of each local infoset in that order, so an
// infoset's parent sequence always has a smaller index than its own sequences.
struct SequenceSpace {
  Player player = Player::kOne;

  // Local infoset <-> game infoset id.
  std::vector<int> infoset_ids;
  std::vector<int> local_infoset;  // indexed by game infoset id; -1 if foreign

  // Per local infoset.
  std::vector<int> parent_sequence;
  std::vector<int> first_sequence;
  std::vector<int> num_actions;
  std::vector<std::vector<int>> infoset_leaves;  // Z_I

  // Per sequence.
  std::vector<int> sequence_infoset;  // -1 for the empty sequence
  std::vector<int> sequence_action;   // -1 for the empty sequence
  std::vector<int> depth;             // 0 for the empty sequence
  std::vector<std::vector<int>> child_infosets;  // ascending local ids
  std::vector<std::vector<int>> sequence_leaves;  // Z_sigma

  // Per game node: the player's last sequence on the path from the root to
  // the node, excluding the node itself. At leaves this is sigma_i(z).
  std::vector<int> node_sequence;

  int size() const { return static_cast<int>(sequence_infoset.size()); }
  int num_infosets() const { return static_cast<int>(infoset_ids.size()); }

  int Sequence(int infoset, int action) const {
    return first_sequence[infoset] + action;
  }

  // seq ⪰ ancestor in the descendant order.
  bool IsDescendant(int seq, int ancestor) const {
    while (depth[seq] > depth[ancestor]) {
      seq = parent_sequence[sequence_infoset[seq]];
    }
    return seq == ancestor;
  }

  // Local infosets whose parent sequence is ⪰ `seq`, ascending.
  std::vector<int> InfosetsBelow(int seq) const {
    std::vector<int> out;
    std::vector<int> stack = {seq};
    while (!stack.empty()) {
      const int s = stack.back();
      stack.pop_back();
      for (int j : child_infosets[s]) {
        out.push_back(j);
        for (int a = 0; a < num_actions[j]; ++a) stack.push_back(Sequence(j, a));
      }
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  // Human-readable name "infoset:action" ("-" for the empty sequence).
  std::string SequenceName(const GameTree& game, int seq) const {
    if (seq == kEmptySequence) return "-";
    const int info = infoset_ids[sequence_infoset[seq]];
    return game.infoset(info).name + ":" +
           game.infoset(info).actions[sequence_action[seq]];
  }
};

// Requires a game whose infosets are consistent and which has perfect recall
// for `player` (see Validate).
inline SequenceSpace BuildSequenceSpace(const GameTree& game, Player player) {
  const int number = Number(player);
  SequenceSpace s;
  s.player = player;
  s.local_infoset.assign(game.num_infosets(), -1);
  s.node_sequence.assign(game.num_nodes(), kEmptySequence);

  // First pass: topological numbering of infosets.
  {
    std::vector<int> stack = {game.root()};
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      const Node& n = game.node(v);
      if (n.is_decision() && n.player == number && s.local_infoset[n.infoset] < 0) {
        s.local_infoset[n.infoset] = s.num_infosets();
        s.infoset_ids.push_back(n.infoset);
      }
      for (auto it = n.children.rbegin(); it != n.children.rend(); ++it) {
        stack.push_back(*it);
      }
    }
  }
  const int k = s.num_infosets();
  s.parent_sequence.assign(k, kEmptySequence);
  s.first_sequence.assign(k, 0);
  s.num_actions.assign(k, 0);
  s.infoset_leaves.assign(k, {});
  s.sequence_infoset = {-1};
  s.sequence_action = {-1};
  for (int i = 0; i < k; ++i) {
    s.first_sequence[i] = s.size();
    s.num_actions[i] = static_cast<int>(game.infoset(s.infoset_ids[i]).actions.size());
    for (int a = 0; a < s.num_actions[i]; ++a) {
      s.sequence_infoset.push_back(i);
      s.sequence_action.push_back(a);
    }
  }
  s.depth.assign(s.size(), 0);
  s.child_infosets.assign(s.size(), {});
  s.sequence_leaves.assign(s.size(), {});

  // Second pass: parent sequences and terminal sets, carrying the player's
  // infosets and sequences along the current path.
  struct Frame {
    int node;
    int next_child;
    bool own;  // node belongs to the player
  };
  std::vector<int> path_infosets;
  std::vector<int> path_sequences = {kEmptySequence};
  std::vector<Frame> stack = {{game.root(), 0, false}};
  {
    const Node& r = game.node(game.root());
    stack.back().own = r.is_decision() && r.player == number;
    if (stack.back().own) path_infosets.push_back(s.local_infoset[r.infoset]);
  }
  std::vector<char> parent_set(k, 0);
  while (!stack.empty()) {
    Frame& f = stack.back();
    const Node& n = game.node(f.node);
    if (f.next_child == 0) {
      s.node_sequence[f.node] = path_sequences.back();
      if (f.own) {
        const int local = s.local_infoset[n.infoset];
        if (!parent_set[local]) {
          parent_set[local] = 1;
          s.parent_sequence[local] = path_sequences.back();
        }
      }
      if (n.is_leaf()) {
        for (int i : path_infosets) s.infoset_leaves[i].push_back(f.node);
        for (int seq : path_sequences) s.sequence_leaves[seq].push_back(f.node);
      }
    }
    if (f.next_child == static_cast<int>(n.children.size())) {
      if (f.own) path_infosets.pop_back();
      stack.pop_back();
      if (!stack.empty() && stack.back().own) path_sequences.pop_back();
      continue;
    }
    const int a = f.next_child++;
    if (f.own) {
      path_sequences.push_back(s.Sequence(s.local_infoset[n.infoset], a));
    }
    const int c = n.children[a];
    const Node& child = game.node(c);
    const bool own = child.is_decision() && child.player == number;
    if (own) path_infosets.push_back(s.local_infoset[child.infoset]);
    stack.push_back({c, 0, own});
  }

  for (int i = 0; i < k; ++i) {
    const int parent = s.parent_sequence[i];
    s.child_infosets[parent].push_back(i);
    for (int a = 0; a < s.num_actions[i]; ++a) {
      s.depth[s.Sequence(i, a)] = s.depth[parent] + 1;
    }
  }
  return s;
}

}  // namespace efce

#endif  // EFCE_SEQUENCE_SPACE_HPP
