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

// Reference counterfactual regret minimization over one player's sequence
// form, written directly against the infoset tree.

#ifndef EFCE_TESTS_CFR_ORACLE_HPP
#define EFCE_TESTS_CFR_ORACLE_HPP

#include <algorithm>
#include <vector>

#include "efce/sequence_space.hpp"

namespace efce::testing {

class DirectCfr {
 public:
  DirectCfr(const SequenceSpace& space, bool plus) : space_(space), plus_(plus) {
    regrets_.resize(space.num_infosets());
    behavior_.resize(space.num_infosets());
    for (int i = 0; i < space.num_infosets(); ++i) {
      regrets_[i].assign(space.num_actions[i], 0.0);
      behavior_[i].assign(space.num_actions[i], 0.0);
    }
  }

  // Sequence-form strategy over every sequence of the player.
  std::vector<double> Recommend() {
    std::vector<double> x(space_.size(), 0.0);
    x[0] = 1.0;
    for (int i = 0; i < space_.num_infosets(); ++i) {
      const int n = space_.num_actions[i];
      double pos = 0.0;
      for (double r : regrets_[i]) pos += std::max(r, 0.0);
      for (int a = 0; a < n; ++a) {
        behavior_[i][a] = pos > 0.0 ? std::max(regrets_[i][a], 0.0) / pos : 1.0 / n;
      }
    }
    // Parents precede children in local infoset order.
    for (int i = 0; i < space_.num_infosets(); ++i) {
      for (int a = 0; a < space_.num_actions[i]; ++a) {
        x[space_.first_sequence[i] + a] = x[space_.parent_sequence[i]] * behavior_[i][a];
      }
    }
    return x;
  }

  void Observe(const std::vector<double>& loss) {
    std::vector<double> value(space_.num_infosets(), 0.0);
    for (int i = space_.num_infosets() - 1; i >= 0; --i) {
      const int n = space_.num_actions[i];
      std::vector<double> q(n);
      double v = 0.0;
      for (int a = 0; a < n; ++a) {
        const int seq = space_.first_sequence[i] + a;
        q[a] = loss[seq];
        for (int j = 0; j < space_.num_infosets(); ++j) {
          if (space_.parent_sequence[j] == seq) q[a] += value[j];
        }
        v += behavior_[i][a] * q[a];
      }
      for (int a = 0; a < n; ++a) {
        regrets_[i][a] += v - q[a];
        if (plus_) regrets_[i][a] = std::max(regrets_[i][a], 0.0);
      }
      value[i] = v;
    }
  }

 private:
  const SequenceSpace& space_;
  bool plus_;
  std::vector<std::vector<double>> regrets_;
  std::vector<std::vector<double>> behavior_;
};

}  // namespace efce::testing

#endif  // EFCE_TESTS_CFR_ORACLE_HPP
