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

#ifndef EFCE_GAME_HPP
#define EFCE_GAME_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "efce/common.hpp"

namespace efce {

enum class NodeKind : std::uint8_t { kDecision, kChance, kLeaf };

struct Node {
  NodeKind kind = NodeKind::kLeaf;
  // Declared acting player at decision nodes (1 or 2 when admissible).
  int player = 0;
  int infoset = -1;
  std::vector<std::string> actions;
  // Aligned with `actions`.
  std::vector<int> children;
  int parent = -1;
  int parent_action = -1;
  std::array<double, 2> payoffs{0.0, 0.0};
  // Identifier used by the source document, for diagnostics.
  std::string label;

  bool is_leaf() const { return kind == NodeKind::kLeaf; }
  bool is_decision() const { return kind == NodeKind::kDecision; }
};

struct Infoset {
  std::string name;
  // Player and action list declared by the first node added to the infoset.
  int player = 0;
  std::vector<std::string> actions;
  std::vector<int> nodes;
};

// An extensive-form game tree. Node and infoset ids are dense and follow the
// order in which they were added. Instances are immutable once built; use
// Validate() to check that a tree is admissible for the solver.
class GameTree {
 public:
  GameTree() = default;

  int root() const { return root_; }
  int num_nodes() const { return static_cast<int>(nodes_.size()); }
  int num_infosets() const { return static_cast<int>(infosets_.size()); }
  const Node& node(int id) const { return nodes_.at(id); }
  const std::vector<Node>& nodes() const { return nodes_; }
  const Infoset& infoset(int id) const { return infosets_.at(id); }
  const std::vector<Infoset>& infosets() const { return infosets_; }
  int declared_players() const { return declared_players_; }

  std::vector<int> Leaves() const {
    std::vector<int> out;
    for (int i = 0; i < num_nodes(); ++i) {
      if (nodes_[i].is_leaf()) out.push_back(i);
    }
    return out;
  }

  int num_leaves() const {
    return static_cast<int>(std::count_if(
        nodes_.begin(), nodes_.end(), [](const Node& n) { return n.is_leaf(); }));
  }

  // Returns the infoset id with the given name, or -1.
  int FindInfoset(std::string_view name) const {
    for (int i = 0; i < num_infosets(); ++i) {
      if (infosets_[i].name == name) return i;
    }
    return -1;
  }

  // True if `ancestor` lies on the path from the root to `node` (inclusive).
  bool IsAncestor(int ancestor, int node) const {
    for (int v = node; v != -1; v = nodes_[v].parent) {
      if (v == ancestor) return true;
    }
    return false;
  }

 private:
  friend class GameBuilder;

  std::vector<Node> nodes_;
  std::vector<Infoset> infosets_;
  int root_ = -1;
  int declared_players_ = 2;
};

// Incremental construction of a GameTree. Build() checks only that the result
// is a tree; game-theoretic admissibility is the job of Validate().
class GameBuilder {
 public:
  int AddDecision(int player, std::string_view infoset,
                  std::vector<std::string> actions, std::string label = {}) {
    CheckDistinct(actions, label);
    const int id = NewNode(NodeKind::kDecision, std::move(label));
    Node& node = tree_.nodes_[id];
    node.player = player;
    auto it = infoset_by_name_.find(std::string(infoset));
    if (it == infoset_by_name_.end()) {
      it = infoset_by_name_.emplace(std::string(infoset), tree_.num_infosets())
               .first;
      tree_.infosets_.push_back(Infoset{std::string(infoset), player, actions, {}});
    } else {
      // Same action set in a different order is aligned to the infoset order.
      const auto& declared = tree_.infosets_[it->second].actions;
      if (std::is_permutation(actions.begin(), actions.end(), declared.begin(),
                              declared.end())) {
        actions = declared;
      }
    }
    node.infoset = it->second;
    tree_.infosets_[it->second].nodes.push_back(id);
    node.children.assign(actions.size(), -1);
    node.actions = std::move(actions);
    return id;
  }

  int AddChance(std::vector<std::string> actions, std::string label = {}) {
    CheckDistinct(actions, label);
    const int id = NewNode(NodeKind::kChance, std::move(label));
    Node& node = tree_.nodes_[id];
    node.children.assign(actions.size(), -1);
    node.actions = std::move(actions);
    return id;
  }

  int AddLeaf(double u1, double u2, std::string label = {}) {
    const int id = NewNode(NodeKind::kLeaf, std::move(label));
    tree_.nodes_[id].payoffs = {u1, u2};
    return id;
  }

  void SetChild(int parent, int action_index, int child) {
    Node& p = tree_.nodes_.at(parent);
    if (action_index < 0 || action_index >= static_cast<int>(p.children.size())) {
      throw GameError("node " + p.label + ": action index out of range");
    }
    if (p.children[action_index] != -1) {
      throw GameError("node " + p.label + ": action '" + p.actions[action_index] +
                      "' already has a child");
    }
    p.children[action_index] = child;
  }

  void SetChild(int parent, std::string_view action, int child) {
    const Node& p = tree_.nodes_.at(parent);
    auto it = std::find(p.actions.begin(), p.actions.end(), action);
    if (it == p.actions.end()) {
      throw GameError("node " + p.label + ": unknown action '" +
                      std::string(action) + "'");
    }
    SetChild(parent, static_cast<int>(it - p.actions.begin()), child);
  }

  void SetRoot(int id) { tree_.root_ = id; }
  void SetDeclaredPlayers(int n) { tree_.declared_players_ = n; }

  int num_nodes() const { return tree_.num_nodes(); }

  // Links parents, checks the tree shape and returns the game.
  GameTree Build() && {
    GameTree& t = tree_;
    if (t.nodes_.empty()) throw GameError("game has no nodes");
    if (t.root_ < 0 || t.root_ >= t.num_nodes()) {
      throw GameError("game has no valid root");
    }
    for (int id = 0; id < t.num_nodes(); ++id) {
      Node& n = t.nodes_[id];
      for (int a = 0; a < static_cast<int>(n.children.size()); ++a) {
        const int c = n.children[a];
        if (c == -1) {
          throw GameError("node " + n.label + ": action '" + n.actions[a] +
                          "' has no child");
        }
        if (c < 0 || c >= t.num_nodes()) {
          throw GameError("node " + n.label + ": child id out of range");
        }
        Node& child = t.nodes_[c];
        if (child.parent != -1 || c == t.root_) {
          throw GameError("node " + child.label + " has more than one parent");
        }
        child.parent = id;
        child.parent_action = a;
      }
    }
    // Every node must hang below the root.
    std::vector<char> seen(t.nodes_.size(), 0);
    std::vector<int> stack = {t.root_};
    int reached = 0;
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      if (seen[v]) throw GameError("node " + t.nodes_[v].label + " lies on a cycle");
      seen[v] = 1;
      ++reached;
      for (int c : t.nodes_[v].children) stack.push_back(c);
    }
    if (reached != t.num_nodes()) {
      for (int id = 0; id < t.num_nodes(); ++id) {
        if (!seen[id]) {
          throw GameError("node " + t.nodes_[id].label +
                          " is not reachable from the root");
        }
      }
    }
    return std::move(tree_);
  }

 private:
  int NewNode(NodeKind kind, std::string label) {
    const int id = tree_.num_nodes();
    Node node;
    node.kind = kind;
    node.label = label.empty() ? std::to_string(id) : std::move(label);
    tree_.nodes_.push_back(std::move(node));
    return id;
  }

  static void CheckDistinct(const std::vector<std::string>& actions,
                            const std::string& label) {
    if (actions.empty()) {
      throw GameError("node " + label + ": internal node without actions");
    }
    std::vector<std::string> sorted = actions;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw GameError("node " + label + ": duplicate action label");
    }
  }

  GameTree tree_;
  std::unordered_map<std::string, int> infoset_by_name_;
};

enum class ViolationKind : std::uint8_t {
  kPlayerCount,
  kChanceNode,
  kInvalidPlayer,
  kInfosetPlayerMismatch,
  kActionSetMismatch,
  kImperfectRecall,
  kNonFinitePayoff,
};

struct Violation {
  ViolationKind kind;
  std::string message;
};

namespace internal {

// Player-`player` (1 or 2) sequence preceding each node, encoded as
// (infoset id, action label index) or (-1, -1) for the empty sequence.
inline std::vector<std::pair<int, int>> OwnParentSequences(const GameTree& game,
                                                           int player) {
  std::vector<std::pair<int, int>> out(game.num_nodes(), {-1, -1});
  std::vector<int> stack = {game.root()};
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    const Node& n = game.node(v);
    for (int a = 0; a < static_cast<int>(n.children.size()); ++a) {
      const int c = n.children[a];
      if (n.is_decision() && n.player == player) {
        out[c] = {n.infoset, a};
      } else {
        out[c] = out[v];
      }
      stack.push_back(c);
    }
  }
  return out;
}

}  // namespace internal

// Lists every reason `game` is not a two-player, chance-free, perfect-recall
// game with consistent infosets. An empty result means the game is admissible.
inline std::vector<Violation> Validate(const GameTree& game) {
  std::vector<Violation> out;
  if (game.declared_players() != 2) {
    out.push_back({ViolationKind::kPlayerCount,
                   "game declares " + std::to_string(game.declared_players()) +
                       " players; exactly 2 are supported"});
  }
  for (const Node& n : game.nodes()) {
    if (n.kind == NodeKind::kChance) {
      out.push_back({ViolationKind::kChanceNode,
                     "node " + n.label + ": chance nodes are not supported"});
    } else if (n.is_decision() && n.player != 1 && n.player != 2) {
      out.push_back({ViolationKind::kInvalidPlayer,
                     "node " + n.label + ": player " + std::to_string(n.player) +
                         " is not 1 or 2"});
    } else if (n.is_leaf() &&
               (!std::isfinite(n.payoffs[0]) || !std::isfinite(n.payoffs[1]))) {
      out.push_back({ViolationKind::kNonFinitePayoff,
                     "leaf " + n.label + ": non-finite payoff"});
    }
  }
  for (const Infoset& info : game.infosets()) {
    for (int v : info.nodes) {
      const Node& n = game.node(v);
      if (n.player != info.player) {
        out.push_back({ViolationKind::kInfosetPlayerMismatch,
                       "infoset " + info.name + ": node " + n.label +
                           " belongs to a different player"});
      }
      if (n.actions != info.actions) {
        out.push_back({ViolationKind::kActionSetMismatch,
                       "infoset " + info.name + ": node " + n.label +
                           " has a different action set"});
      }
    }
  }
  for (int player : {1, 2}) {
    const auto parent = internal::OwnParentSequences(game, player);
    for (const Infoset& info : game.infosets()) {
      if (info.player != player || info.nodes.empty()) continue;
      const auto expected = parent[info.nodes.front()];
      for (int v : info.nodes) {
        if (parent[v] != expected) {
          out.push_back({ViolationKind::kImperfectRecall,
                         "infoset " + info.name + ": node " + game.node(v).label +
                             " has a different parent sequence (perfect recall "
                             "violated)"});
          break;
        }
      }
    }
  }
  return out;
}

inline bool IsAdmissible(const GameTree& game) { return Validate(game).empty(); }

// Throws GameError describing the first violation, if any.
inline void RequireAdmissible(const GameTree& game) {
  const auto violations = Validate(game);
  if (!violations.empty()) throw GameError(violations.front().message);
}

}  // namespace efce

#endif  // EFCE_GAME_HPP
