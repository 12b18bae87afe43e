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

#ifndef EFCE_CHAIN_RM_HPP
#define EFCE_CHAIN_RM_HPP

#include <cstdint>
#include <cstring>
#include <istream>
#include <memory>
#include <ostream>
#include <span>
#include <vector>

#include "efce/chain.hpp"
#include "efce/decompose.hpp"
#include "efce/regret.hpp"

namespace efce {

// Regret minimizer over the set described by a chain: one simplex minimizer
// per fill step, composed through the scaled-extension rule. Recommend runs
// the chain forward; Observe runs it backward, each fill passing its expected
// local loss up to its source entry and each sum passing its target's loss to
// every source.
//
// Observe updates against the local strategies of the latest Recommend, so
// every Observe must be preceded by a Recommend. Instances are not
// thread-safe.
class ChainRegretMinimizer {
 public:
  explicit ChainRegretMinimizer(std::shared_ptr<const DecompositionChain> chain,
                                RmFlavor flavor = RmFlavor::kRegretMatchingPlus)
      : chain_(std::move(chain)), flavor_(flavor) {
    offset_.assign(chain_->num_steps(), -1);
    int total = 0;
    for (int k = 0; k < chain_->num_steps(); ++k) {
      const ChainStep& s = chain_->steps()[k];
      if (s.kind == StepKind::kFill) {
        offset_[k] = total;
        total += s.width();
      }
    }
    regrets_.assign(total, 0.0);
    strategy_.assign(total, 0.0);
    x_.assign(chain_->dimension(), 0.0);
    scratch_.assign(chain_->dimension(), 0.0);
  }

  explicit ChainRegretMinimizer(DecompositionChain chain,
                                RmFlavor flavor = RmFlavor::kRegretMatchingPlus)
      : ChainRegretMinimizer(std::make_shared<const DecompositionChain>(std::move(chain)),
                             flavor) {}

  int dimension() const { return chain_->dimension(); }
  RmFlavor flavor() const { return flavor_; }
  const DecompositionChain& chain() const { return *chain_; }
  // Concatenated regret vectors of the fill steps, in chain order.
  const std::vector<double>& regrets() const { return regrets_; }

  const std::vector<double>& Recommend() {
    const auto& steps = chain_->steps();
    x_[chain_->root()] = 1.0;
    for (int k = 0; k < static_cast<int>(steps.size()); ++k) {
      const ChainStep& s = steps[k];
      const auto ops = chain_->Operands(s);
      if (s.kind == StepKind::kFill) {
        const auto local = std::span<double>(strategy_).subspan(offset_[k], ops.size());
        RegretMatchingStrategy(std::span<const double>(regrets_).subspan(offset_[k], ops.size()),
                               local);
        const double mass = x_[s.anchor];
        for (std::size_t j = 0; j < ops.size(); ++j) x_[ops[j]] = mass * local[j];
      } else {
        double sum = 0.0;
        for (int src : ops) sum += x_[src];
        x_[s.anchor] = sum;
      }
    }
    recommended_ = true;
    return x_;
  }

  void Observe(std::span<const double> loss) {
    internal::CheckDimension("ChainRegretMinimizer", loss.size(),
                             static_cast<std::size_t>(dimension()));
    if (!recommended_) throw ContractError("Observe called without a preceding Recommend");
    recommended_ = false;
    scratch_.assign(loss.begin(), loss.end());
    const auto& steps = chain_->steps();
    std::vector<double>& l = scratch_;
    for (int k = static_cast<int>(steps.size()) - 1; k >= 0; --k) {
      const ChainStep& s = steps[k];
      const auto ops = chain_->Operands(s);
      if (s.kind == StepKind::kFill) {
        const std::size_t w = ops.size();
        local_loss_.resize(w);
        for (std::size_t j = 0; j < w; ++j) local_loss_[j] = l[ops[j]];
        const double value = RegretMatchingUpdate(
            flavor_, std::span<double>(regrets_).subspan(offset_[k], w),
            std::span<const double>(strategy_).subspan(offset_[k], w), local_loss_);
        l[s.anchor] += value;
      } else {
        const double v = l[s.anchor];
        for (int src : ops) l[src] += v;
      }
    }
  }

  // Binary snapshot: the 8 bytes "EFCERM01", one byte flavor, a little-endian
  // uint64 count, then `count` IEEE-754 doubles (host byte order, which is
  // little-endian on every supported platform).
  void SaveState(std::ostream& out) const {
    out.write(kMagic, 8);
    const auto flavor = static_cast<std::uint8_t>(flavor_);
    out.write(reinterpret_cast<const char*>(&flavor), 1);
    const std::uint64_t count = regrets_.size();
    out.write(reinterpret_cast<const char*>(&count), sizeof(count));
    out.write(reinterpret_cast<const char*>(regrets_.data()),
              static_cast<std::streamsize>(count * sizeof(double)));
    if (!out) throw Error("failed to write regret snapshot");
  }

  void LoadState(std::istream& in) {
    char magic[8];
    std::uint8_t flavor = 0;
    std::uint64_t count = 0;
    in.read(magic, 8);
    in.read(reinterpret_cast<char*>(&flavor), 1);
    in.read(reinterpret_cast<char*>(&count), sizeof(count));
    if (!in || std::memcmp(magic, kMagic, 8) != 0) throw Error("not a regret snapshot");
    if (flavor != static_cast<std::uint8_t>(flavor_)) {
      throw Error("regret snapshot was written with a different flavor");
    }
    if (count != regrets_.size()) throw Error("regret snapshot does not match this chain");
    std::vector<double> r(count);
    in.read(reinterpret_cast<char*>(r.data()),
            static_cast<std::streamsize>(count * sizeof(double)));
    if (!in) throw Error("truncated regret snapshot");
    regrets_ = std::move(r);
    recommended_ = false;
  }

 private:
  static constexpr char kMagic[9] = "EFCERM01";

  std::shared_ptr<const DecompositionChain> chain_;
  RmFlavor flavor_;
  std::vector<int> offset_;
  std::vector<double> regrets_;
  std::vector<double> strategy_;
  std::vector<double> x_;
  std::vector<double> scratch_;
  std::vector<double> local_loss_;
  bool recommended_ = false;
};

// Regret minimizer over the sequence-form strategies of one player below
// `root_sequence`. Entry k of its points is sequence `sequences[k]`.
struct TreeplexRegretMinimizer {
  TreeplexChain treeplex;
  ChainRegretMinimizer rm;
};

inline TreeplexRegretMinimizer MakeTreeplexRegretMinimizer(
    const SequenceSpace& space, int root_sequence = kEmptySequence,
    RmFlavor flavor = RmFlavor::kRegretMatchingPlus) {
  TreeplexChain t = BuildTreeplexChain(space, root_sequence);
  ChainRegretMinimizer rm(t.chain, flavor);
  return {std::move(t), std::move(rm)};
}

}  // namespace efce

#endif  // EFCE_CHAIN_RM_HPP
