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

// The maximizing side of the equilibrium saddle point.
//
// A point w of the deviation domain holds a distribution lambda over the n
// triggers and, for each trigger k = (i, (I*, a*)), a scaled strategy
// y_k in lambda_k * {y : sequence-form strategy of player i, y[sigma(I*)] = 1}.
// The objective is
//
//   f(xi, w) = sum_k [ sum_{z in Z(I*)} u_i(z) xi[s*, s_-i(z)] y_k[s_i(z)]
//                      - lambda_k sum_{z in Z(s*)} u_i(z) xi[s_1(z), s_2(z)] ],
//
// minimized over correlation plans xi and maximized over w.

#ifndef EFCE_DEVIATION_HPP
#define EFCE_DEVIATION_HPP

#include <algorithm>
#include <array>
#include <map>
#include <memory>
#include <span>
#include <vector>

#include "efce/chain.hpp"
#include "efce/decompose.hpp"
#include "efce/triggers.hpp"

namespace efce {

// The deviation domain as a chain: entry 0 is the unit root, entries 1..n are
// lambda, and each trigger's treeplex hangs below its lambda entry.
class DeviationSide {
 public:
  struct Block {
    int lambda = 0;  // index of lambda_k
    // Sequences of the trigger's treeplex other than its root, and their
    // indices in the domain (parallel arrays).
    std::vector<int> sequences;
    std::vector<int> indices;
  };

  DeviationSide(const RelevanceStructure& rel, const TriggerIndex& triggers) {
    const int n = triggers.size();
    int dim = 1 + n;
    std::array<std::map<int, TreeplexChain>, 2> cache;
    std::vector<const TreeplexChain*> trees(n);
    for (int k = 0; k < n; ++k) {
      const Trigger& t = triggers[k];
      auto& c = cache[Index(t.player)];
      auto it = c.find(t.root_sequence);
      if (it == c.end()) {
        it = c.emplace(t.root_sequence,
                       BuildTreeplexChain(rel.space(t.player), t.root_sequence))
                 .first;
      }
      trees[k] = &it->second;
      dim += it->second.chain.dimension() - 1;
    }
    chain_ = std::make_shared<DecompositionChain>(dim, 0);
    blocks_.resize(n);
    if (n > 0) {
      std::vector<int> lambdas(n);
      for (int k = 0; k < n; ++k) lambdas[k] = k + 1;
      chain_->AddFill(0, lambdas);
    }
    int next = 1 + n;
    std::vector<int> slot;
    std::vector<int> ops;
    for (int k = 0; k < n; ++k) {
      const TreeplexChain& tree = *trees[k];
      Block& b = blocks_[k];
      b.lambda = k + 1;
      slot.assign(tree.chain.dimension(), -1);
      slot[0] = b.lambda;
      for (int s = 1; s < tree.chain.dimension(); ++s) {
        slot[s] = next++;
        b.sequences.push_back(tree.sequences[s]);
        b.indices.push_back(slot[s]);
      }
      for (const ChainStep& step : tree.chain.steps()) {
        ops.clear();
        for (int o : tree.chain.Operands(step)) ops.push_back(slot[o]);
        chain_->AddFill(slot[step.anchor], ops, step.player, step.infoset);
      }
    }
  }

  int dimension() const { return chain_->dimension(); }
  int num_triggers() const { return static_cast<int>(blocks_.size()); }
  const DecompositionChain& chain() const { return *chain_; }
  std::shared_ptr<const DecompositionChain> shared_chain() const { return chain_; }
  const Block& block(int k) const { return blocks_[k]; }

  std::vector<double> Lambda(std::span<const double> w) const {
    std::vector<double> out(num_triggers());
    for (int k = 0; k < num_triggers(); ++k) out[k] = w[blocks_[k].lambda];
    return out;
  }

  // Scaled strategy of trigger k over the player's sequences; entries outside
  // the treeplex are zero and the treeplex root holds lambda_k.
  std::vector<double> ScaledStrategy(std::span<const double> w, int k,
                                     int num_sequences, int root_sequence) const {
    std::vector<double> y(num_sequences, 0.0);
    const Block& b = blocks_[k];
    y[root_sequence] = w[b.lambda];
    for (std::size_t j = 0; j < b.sequences.size(); ++j) y[b.sequences[j]] = w[b.indices[j]];
    return y;
  }

 private:
  std::shared_ptr<DecompositionChain> chain_;
  std::vector<Block> blocks_;
};

// f(xi, w) = sum over terms of coeff * xi[x] * w[y], with terms merged and
// sorted by (x, y).
class BilinearForm {
 public:
  struct Term {
    int x;
    int y;
    double coeff;
  };

  BilinearForm() = default;

  // `scale[i]` multiplies player i's payoffs.
  BilinearForm(const RelevanceStructure& rel, const TriggerIndex& triggers,
               const DeviationSide& side, std::array<double, 2> scale = {1.0, 1.0})
      : nx_(rel.num_pairs()), ny_(side.dimension()) {
    std::vector<int> where;
    for (int k = 0; k < triggers.size(); ++k) {
      const Trigger& t = triggers[k];
      const double s = scale[Index(t.player)];
      const auto& b = side.block(k);
      where.assign(rel.space(t.player).size(), -1);
      where[t.root_sequence] = b.lambda;
      for (std::size_t j = 0; j < b.sequences.size(); ++j) where[b.sequences[j]] = b.indices[j];
      for (const auto& d : t.deviation) {
        if (where[d.sequence] < 0) throw StructuralError("deviation term outside its treeplex");
        terms_.push_back({d.xi, where[d.sequence], s * d.payoff});
      }
      for (const auto& f : t.follow) terms_.push_back({f.xi, b.lambda, -s * f.payoff});
    }
    std::sort(terms_.begin(), terms_.end(), [](const Term& a, const Term& b) {
      return a.x != b.x ? a.x < b.x : a.y < b.y;
    });
    std::vector<Term> merged;
    for (const Term& t : terms_) {
      if (!merged.empty() && merged.back().x == t.x && merged.back().y == t.y) {
        merged.back().coeff += t.coeff;
      } else {
        merged.push_back(t);
      }
    }
    terms_ = std::move(merged);
  }

  int x_dimension() const { return nx_; }
  int y_dimension() const { return ny_; }
  const std::vector<Term>& terms() const { return terms_; }

  double Value(std::span<const double> xi, std::span<const double> w) const {
    double v = 0.0;
    for (const Term& t : terms_) v += t.coeff * xi[t.x] * w[t.y];
    return v;
  }

  // out = d f / d xi at w.
  void GradientX(std::span<const double> w, std::span<double> out) const {
    std::fill(out.begin(), out.end(), 0.0);
    for (const Term& t : terms_) out[t.x] += t.coeff * w[t.y];
  }

  // out = d f / d w at xi.
  void GradientY(std::span<const double> xi, std::span<double> out) const {
    std::fill(out.begin(), out.end(), 0.0);
    for (const Term& t : terms_) out[t.y] += t.coeff * xi[t.x];
  }

 private:
  int nx_ = 0;
  int ny_ = 0;
  std::vector<Term> terms_;
};

}  // namespace efce

#endif  // EFCE_DEVIATION_HPP
