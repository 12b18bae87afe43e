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

// Line-oriented text format for games.
//
//   # comment (anything after '#' is ignored)
//   game 2
//   root <id>
//   node <id> player <1|2> infoset <name> actions <a1> <a2> ...
//     child <action> <node-id>          (one per action, attached to the
//                                        closest preceding node/chance line)
//   chance <id> actions <a1> <a2> ...   (parsed so it can be reported; never
//                                        admissible)
//   leaf <id> payoffs <u1> <u2>
//
// Identifiers, infoset names and action labels are whitespace-free tokens.
// Payoffs are decimal numbers or rationals p/q. Nodes receive dense ids in
// document order; SerializeGame writes those dense ids, so its output is the
// canonical form of a game and parses back to the same text.

#ifndef EFCE_GAME_IO_HPP
#define EFCE_GAME_IO_HPP

#include <cctype>
#include <charconv>
#include <fstream>
#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "efce/game.hpp"

namespace efce {

namespace internal {

inline std::vector<std::string> Tokenize(std::string_view line) {
  std::vector<std::string> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i >= line.size() || line[i] == '#') break;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j])) &&
           line[j] != '#') {
      ++j;
    }
    tokens.emplace_back(line.substr(i, j - i));
    i = j;
  }
  return tokens;
}

inline std::optional<double> ParseReal(std::string_view text) {
  auto parse = [](std::string_view s) -> std::optional<double> {
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    double v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) {
      return std::nullopt;
    }
    return v;
  };
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return parse(text);
  const auto num = parse(text.substr(0, slash));
  const auto den = parse(text.substr(slash + 1));
  if (!num || !den || *den == 0.0) return std::nullopt;
  return *num / *den;
}

inline std::optional<int> ParseInt(std::string_view text) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) return std::nullopt;
  return v;
}

}  // namespace internal

// Parses a game document without checking admissibility. Throws GameError on
// syntax errors and on malformed trees.
inline GameTree ParseGameUnchecked(std::string_view text) {
  using internal::Tokenize;
  struct Record {
    int line = 0;
    std::string kind;
    std::string id;
    int player = 0;
    std::string infoset;
    std::vector<std::string> actions;
    std::vector<std::pair<std::string, std::string>> children;
    double u1 = 0, u2 = 0;
  };
  auto fail = [](int line, const std::string& msg) -> GameError {
    return GameError("line " + std::to_string(line) + ": " + msg);
  };

  std::vector<Record> records;
  std::optional<int> players;
  std::optional<std::string> root;
  int root_line = 0;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto tok = Tokenize(raw);
    if (tok.empty()) continue;
    const std::string& head = tok[0];
    if (!players && head != "game") {
      throw fail(line_no, "expected header 'game 2'");
    }
    if (head == "game") {
      if (players) throw fail(line_no, "duplicate 'game' header");
      const auto n = tok.size() == 2 ? internal::ParseInt(tok[1]) : std::nullopt;
      if (!n) throw fail(line_no, "expected 'game <players>'");
      players = *n;
    } else if (head == "root") {
      if (root) throw fail(line_no, "duplicate 'root' line");
      if (tok.size() != 2) throw fail(line_no, "expected 'root <id>'");
      root = tok[1];
      root_line = line_no;
    } else if (head == "node") {
      // node <id> player <p> infoset <name> actions <a>...
      if (tok.size() < 8 || tok[2] != "player" || tok[4] != "infoset" ||
          tok[6] != "actions") {
        throw fail(line_no,
                   "expected 'node <id> player <p> infoset <name> actions <a>...'");
      }
      const auto p = internal::ParseInt(tok[3]);
      if (!p) throw fail(line_no, "player must be an integer");
      Record r;
      r.line = line_no;
      r.kind = "node";
      r.id = tok[1];
      r.player = *p;
      r.infoset = tok[5];
      r.actions.assign(tok.begin() + 7, tok.end());
      records.push_back(std::move(r));
    } else if (head == "chance") {
      if (tok.size() < 4 || tok[2] != "actions") {
        throw fail(line_no, "expected 'chance <id> actions <a>...'");
      }
      Record r;
      r.line = line_no;
      r.kind = "chance";
      r.id = tok[1];
      r.actions.assign(tok.begin() + 3, tok.end());
      records.push_back(std::move(r));
    } else if (head == "child") {
      if (tok.size() != 3) throw fail(line_no, "expected 'child <action> <node-id>'");
      if (records.empty() || records.back().kind == "leaf") {
        throw fail(line_no, "'child' must follow a node or chance line");
      }
      records.back().children.emplace_back(tok[1], tok[2]);
    } else if (head == "leaf") {
      if (tok.size() != 5 || tok[2] != "payoffs") {
        throw fail(line_no, "expected 'leaf <id> payoffs <u1> <u2>'");
      }
      const auto u1 = internal::ParseReal(tok[3]);
      const auto u2 = internal::ParseReal(tok[4]);
      if (!u1 || !u2) throw fail(line_no, "invalid payoff value");
      Record r;
      r.line = line_no;
      r.kind = "leaf";
      r.id = tok[1];
      r.u1 = *u1;
      r.u2 = *u2;
      records.push_back(std::move(r));
    } else {
      throw fail(line_no, "unknown directive '" + head + "'");
    }
  }
  if (!players) throw GameError("empty document: missing 'game 2' header");
  if (!root) throw GameError("missing 'root <id>' line");

  GameBuilder builder;
  builder.SetDeclaredPlayers(*players);
  std::unordered_map<std::string, int> dense;
  for (const Record& r : records) {
    if (dense.count(r.id)) throw fail(r.line, "duplicate node id '" + r.id + "'");
    int id = 0;
    if (r.kind == "node") {
      id = builder.AddDecision(r.player, r.infoset, r.actions, r.id);
    } else if (r.kind == "chance") {
      id = builder.AddChance(r.actions, r.id);
    } else {
      id = builder.AddLeaf(r.u1, r.u2, r.id);
    }
    dense.emplace(r.id, id);
  }
  for (const Record& r : records) {
    for (const auto& [action, child] : r.children) {
      auto it = dense.find(child);
      if (it == dense.end()) throw fail(r.line, "unknown child node '" + child + "'");
      try {
        builder.SetChild(dense.at(r.id), action, it->second);
      } catch (const GameError& e) {
        throw fail(r.line, e.what());
      }
    }
  }
  auto it = dense.find(*root);
  if (it == dense.end()) throw fail(root_line, "unknown root node '" + *root + "'");
  builder.SetRoot(it->second);
  return std::move(builder).Build();
}

// Parses a game and rejects anything the solver cannot handle (chance nodes,
// player count, imperfect recall, infoset inconsistencies).
inline GameTree ParseGame(std::string_view text) {
  GameTree game = ParseGameUnchecked(text);
  const auto violations = Validate(game);
  if (!violations.empty()) {
    std::string msg;
    for (const auto& v : violations) {
      if (!msg.empty()) msg += "; ";
      msg += v.message;
    }
    throw GameError(msg);
  }
  return game;
}

inline std::string SerializeGame(const GameTree& game) {
  std::ostringstream out;
  out << "game " << game.declared_players() << "\n";
  out << "root " << game.root() << "\n";
  for (int id = 0; id < game.num_nodes(); ++id) {
    const Node& n = game.node(id);
    if (n.is_leaf()) {
      out << "leaf " << id << " payoffs " << FormatDouble(n.payoffs[0]) << " "
          << FormatDouble(n.payoffs[1]) << "\n";
      continue;
    }
    if (n.is_decision()) {
      out << "node " << id << " player " << n.player << " infoset "
          << game.infoset(n.infoset).name << " actions";
    } else {
      out << "chance " << id << " actions";
    }
    for (const auto& a : n.actions) out << " " << a;
    out << "\n";
    for (std::size_t a = 0; a < n.actions.size(); ++a) {
      out << "  child " << n.actions[a] << " " << n.children[a] << "\n";
    }
  }
  return out.str();
}

inline std::string ReadTextFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace efce

#endif  // EFCE_GAME_IO_HPP
