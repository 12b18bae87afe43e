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

// Chains of scaled extensions over a dense index space.
//
// A chain starts from a vector whose root entry is 1 and fills the remaining
// entries one step at a time:
//
//   fill  s -> t1..tk   the targets are s * (a point of the k-simplex)
//   sum   t <- s1..sk   the target is s1 + ... + sk
//
// Correlation plans, sequence-form strategies and the deviation domain of the
// solver are all represented this way.

#ifndef EFCE_CHAIN_HPP
#define EFCE_CHAIN_HPP

#include <algorithm>
#include <cmath>
#include <optional>
#include <random>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "efce/common.hpp"
#include "efce/game_io.hpp"
#include "efce/relevance.hpp"

namespace efce {

enum class StepKind : std::uint8_t { kFill, kSum };

struct ChainStep {
  StepKind kind = StepKind::kFill;
  // Fill: the source entry. Sum: the target entry.
  int anchor = 0;
  // Range into DecompositionChain::operands(): fill targets or sum sources.
  int begin = 0;
  int end = 0;
  // For fills that split over an infoset's actions: the player (1 or 2) and
  // that player's local infoset id. Zero and -1 otherwise.
  int player = 0;
  int infoset = -1;

  int width() const { return end - begin; }
  bool operator==(const ChainStep&) const = default;
};

class DecompositionChain {
 public:
  DecompositionChain() = default;
  explicit DecompositionChain(int dimension, int root = 0)
      : dimension_(dimension), root_(root) {}

  int dimension() const { return dimension_; }
  int root() const { return root_; }
  const std::vector<ChainStep>& steps() const { return steps_; }
  int num_steps() const { return static_cast<int>(steps_.size()); }
  const std::vector<int>& operands() const { return operands_; }

  std::span<const int> Operands(const ChainStep& step) const {
    return std::span<const int>(operands_).subspan(step.begin, step.width());
  }

  void AddFill(int source, std::span<const int> targets, int player = 0,
               int infoset = -1) {
    Push(StepKind::kFill, source, targets, player, infoset);
  }

  void AddSum(int target, std::span<const int> sources) {
    Push(StepKind::kSum, target, sources, 0, -1);
  }

  int num_fills() const { return Count(StepKind::kFill); }
  int num_sums() const { return Count(StepKind::kSum); }

  int max_width() const {
    int w = 0;
    for (const auto& s : steps_) {
      if (s.kind == StepKind::kFill) w = std::max(w, s.width());
    }
    return w;
  }

  // Widths of the fill steps in chain order.
  std::vector<int> FillWidths() const {
    std::vector<int> out;
    for (const auto& s : steps_) {
      if (s.kind == StepKind::kFill) out.push_back(s.width());
    }
    return out;
  }

  bool operator==(const DecompositionChain&) const = default;

 private:
  void Push(StepKind kind, int anchor, std::span<const int> ops, int player,
            int infoset) {
    ChainStep s;
    s.kind = kind;
    s.anchor = anchor;
    s.begin = static_cast<int>(operands_.size());
    operands_.insert(operands_.end(), ops.begin(), ops.end());
    s.end = static_cast<int>(operands_.size());
    s.player = player;
    s.infoset = infoset;
    steps_.push_back(s);
  }

  int Count(StepKind kind) const {
    return static_cast<int>(std::count_if(steps_.begin(), steps_.end(),
                                          [&](const ChainStep& s) { return s.kind == kind; }));
  }

  int dimension_ = 1;
  int root_ = 0;
  std::vector<ChainStep> steps_;
  std::vector<int> operands_;
};

// Structural problems with a chain: every entry except the root is written by
// exactly one step, and every step reads only entries written before it.
inline std::vector<std::string> CheckChainInvariants(const DecompositionChain& chain) {
  std::vector<std::string> out;
  const int n = chain.dimension();
  if (chain.root() < 0 || chain.root() >= n) {
    out.push_back("root index out of range");
    return out;
  }
  std::vector<char> filled(n, 0);
  filled[chain.root()] = 1;
  auto in_range = [&](int i) { return i >= 0 && i < n; };
  auto read = [&](int step, int i) {
    if (!in_range(i)) {
      out.push_back("step " + std::to_string(step) + " reads index " + std::to_string(i) +
                    " out of range");
    } else if (!filled[i]) {
      out.push_back("step " + std::to_string(step) + " reads index " + std::to_string(i) +
                    " before it is filled");
    }
  };
  auto write = [&](int step, int i) {
    if (!in_range(i)) {
      out.push_back("step " + std::to_string(step) + " writes index " +
                    std::to_string(i) + " out of range");
    } else if (filled[i]) {
      out.push_back("step " + std::to_string(step) + " writes index " +
                    std::to_string(i) + " twice");
    } else {
      filled[i] = 1;
    }
  };
  for (int k = 0; k < chain.num_steps(); ++k) {
    const ChainStep& s = chain.steps()[k];
    if (s.width() == 0) out.push_back("step " + std::to_string(k) + " is empty");
    if (s.kind == StepKind::kFill) {
      read(k, s.anchor);
      for (int t : chain.Operands(s)) write(k, t);
    } else {
      for (int src : chain.Operands(s)) read(k, src);
      write(k, s.anchor);
    }
  }
  for (int i = 0; i < n; ++i) {
    if (!filled[i]) out.push_back("index " + std::to_string(i) + " is never filled");
  }
  return out;
}

// Runs the chain forward. `split(step_index, width, out)` must write a point
// of the width-simplex into `out`.
template <typename Splitter>
std::vector<double> ChainSampleWith(const DecompositionChain& chain, Splitter&& split) {
  std::vector<double> x(chain.dimension(), 0.0);
  x[chain.root()] = 1.0;
  std::vector<double> local;
  for (int k = 0; k < chain.num_steps(); ++k) {
    const ChainStep& s = chain.steps()[k];
    const auto ops = chain.Operands(s);
    if (s.kind == StepKind::kFill) {
      local.assign(ops.size(), 0.0);
      split(k, static_cast<int>(ops.size()), std::span<double>(local));
      const double mass = x[s.anchor];
      for (std::size_t j = 0; j < ops.size(); ++j) x[ops[j]] = mass * local[j];
    } else {
      double sum = 0.0;
      for (int src : ops) sum += x[src];
      x[s.anchor] = sum;
    }
  }
  return x;
}

// Point of the chain set with every simplex split uniformly.
inline std::vector<double> UniformChainPoint(const DecompositionChain& chain) {
  return ChainSampleWith(chain, [](int, int width, std::span<double> out) {
    std::fill(out.begin(), out.end(), 1.0 / width);
  });
}

// Random point of the chain set; each simplex point is Dirichlet(1, ..., 1).
inline std::vector<double> ChainSample(const DecompositionChain& chain,
                                       std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::exponential_distribution<double> exp(1.0);
  return ChainSampleWith(chain, [&](int, int, std::span<double> out) {
    double total = 0.0;
    for (double& v : out) total += (v = exp(rng));
    for (double& v : out) v /= total;
  });
}

// Why `plan` is outside the chain set, or nullopt when it is inside.
inline std::optional<std::string> ExplainChainMembership(const DecompositionChain& chain,
                                                         std::span<const double> plan,
                                                         double tol = kDefaultTolerance) {
  if (static_cast<int>(plan.size()) != chain.dimension()) {
    throw ContractError("plan has dimension " + std::to_string(plan.size()) +
                        ", chain expects " + std::to_string(chain.dimension()));
  }
  if (!(std::abs(plan[chain.root()] - 1.0) <= tol)) {
    return "root entry is " + FormatDouble(plan[chain.root()]) + ", expected 1";
  }
  for (int k = 0; k < chain.num_steps(); ++k) {
    const ChainStep& s = chain.steps()[k];
    const auto ops = chain.Operands(s);
    const std::string where = "step " + std::to_string(k);
    if (s.kind == StepKind::kFill) {
      const double mass = plan[s.anchor];
      double sum = 0.0;
      for (int t : ops) {
        if (!(plan[t] >= -tol)) {
          return where + ": entry " + std::to_string(t) + " is negative (" +
                 FormatDouble(plan[t]) + ")";
        }
        if (mass <= tol && plan[t] > tol) {
          return where + ": entry " + std::to_string(t) + " is positive under zero mass";
        }
        sum += plan[t];
      }
      if (!(std::abs(sum - mass) <= tol)) {
        return where + ": targets sum to " + FormatDouble(sum) + " but source entry " +
               std::to_string(s.anchor) + " is " + FormatDouble(mass);
      }
    } else {
      double sum = 0.0;
      for (int src : ops) sum += plan[src];
      if (!(std::abs(sum - plan[s.anchor]) <= tol)) {
        return where + ": entry " + std::to_string(s.anchor) + " is " +
               FormatDouble(plan[s.anchor]) + " but its sources sum to " + FormatDouble(sum);
      }
    }
  }
  return std::nullopt;
}

inline bool ChainMembership(const DecompositionChain& chain, std::span<const double> plan,
                            double tol = kDefaultTolerance) {
  return !ExplainChainMembership(chain, plan, tol).has_value();
}

struct LinearMinimum {
  double value = 0.0;
  std::vector<double> point;
};

// Minimizes <loss, x> over the chain set by a backward pass and returns an
// optimal vertex.
inline LinearMinimum MinimizeLinear(const DecompositionChain& chain,
                                    std::span<const double> loss) {
  if (static_cast<int>(loss.size()) != chain.dimension()) {
    throw ContractError("loss dimension does not match chain");
  }
  std::vector<double> v(loss.begin(), loss.end());
  std::vector<int> choice(chain.num_steps(), -1);
  for (int k = chain.num_steps() - 1; k >= 0; --k) {
    const ChainStep& s = chain.steps()[k];
    const auto ops = chain.Operands(s);
    if (s.kind == StepKind::kFill) {
      int best = 0;
      for (int j = 1; j < static_cast<int>(ops.size()); ++j) {
        if (v[ops[j]] < v[ops[best]]) best = j;
      }
      choice[k] = best;
      v[s.anchor] += v[ops[best]];
    } else {
      for (int src : ops) v[src] += v[s.anchor];
    }
  }
  LinearMinimum out;
  out.value = v[chain.root()];
  out.point = ChainSampleWith(chain, [&](int k, int, std::span<double> local) {
    std::fill(local.begin(), local.end(), 0.0);
    local[choice[k]] = 1.0;
  });
  return out;
}

// Text form: an optional "pair <idx> <s1> <s2>" table, then one line per step,
// "fill <source> <t1> ... [in <player> <infoset>]" or "sum <target> <s1> ...".
// The first line is "chain <dimension> <root>".
inline std::string SerializeChain(const DecompositionChain& chain,
                                  const RelevanceStructure* rel = nullptr) {
  std::ostringstream out;
  out << "chain " << chain.dimension() << " " << chain.root() << "\n";
  if (rel != nullptr) {
    for (int i = 0; i < rel->num_pairs(); ++i) {
      const auto [a, b] = rel->Pair(i);
      out << "pair " << i << " " << a << " " << b << "\n";
    }
  }
  for (const ChainStep& s : chain.steps()) {
    out << (s.kind == StepKind::kFill ? "fill " : "sum ") << s.anchor;
    for (int o : chain.Operands(s)) out << " " << o;
    if (s.kind == StepKind::kFill && s.player != 0) out << " in " << s.player << " " << s.infoset;
    out << "\n";
  }
  return out.str();
}

// Parses SerializeChain output. Pair lines are checked for well-formedness
// and otherwise ignored.
inline DecompositionChain ParseChain(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string raw;
  int line = 0;
  std::optional<DecompositionChain> chain;
  auto fail = [&](const std::string& msg) {
    return Error("chain line " + std::to_string(line) + ": " + msg);
  };
  auto ints = [&](const std::vector<std::string>& tok, std::size_t from) {
    std::vector<int> v;
    for (std::size_t i = from; i < tok.size(); ++i) {
      const auto x = internal::ParseInt(tok[i]);
      if (!x) throw fail("expected an integer, got '" + tok[i] + "'");
      v.push_back(*x);
    }
    return v;
  };
  while (std::getline(in, raw)) {
    ++line;
    const auto tok = internal::Tokenize(raw);
    if (tok.empty()) continue;
    if (!chain) {
      if (tok[0] != "chain" || tok.size() != 3) throw fail("expected 'chain <dim> <root>'");
      const auto v = ints(tok, 1);
      chain.emplace(v[0], v[1]);
      continue;
    }
    if (tok[0] == "pair") {
      if (tok.size() != 4) throw fail("expected 'pair <idx> <s1> <s2>'");
      ints(tok, 1);
    } else if (tok[0] == "fill" || tok[0] == "sum") {
      std::vector<std::string> body = tok;
      int player = 0;
      int infoset = -1;
      const auto in_pos = std::find(body.begin(), body.end(), "in");
      if (in_pos != body.end()) {
        if (tok[0] != "fill" || body.end() - in_pos != 3) {
          throw fail("expected 'in <player> <infoset>' at the end of a fill");
        }
        const auto meta = ints(std::vector<std::string>(in_pos + 1, body.end()), 0);
        player = meta[0];
        infoset = meta[1];
        body.erase(in_pos, body.end());
      }
      if (body.size() < 3) throw fail("step needs an anchor and operands");
      const auto v = ints(body, 1);
      const std::span<const int> ops(v.data() + 1, v.size() - 1);
      if (tok[0] == "fill") {
        chain->AddFill(v[0], ops, player, infoset);
      } else {
        chain->AddSum(v[0], ops);
      }
    } else {
      throw fail("unknown directive '" + tok[0] + "'");
    }
  }
  if (!chain) throw Error("empty chain document");
  const auto problems = CheckChainInvariants(*chain);
  if (!problems.empty()) throw Error("invalid chain: " + problems.front());
  return *chain;
}

}  // namespace efce

#endif  // EFCE_CHAIN_HPP
