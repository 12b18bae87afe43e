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

// No-regret self-play on the equilibrium saddle point.
//
// The correlation-plan side and the deviation side each run a chain regret
// minimizer. With alternation, every iteration first updates the plan side
// against the latest deviation point, then updates the deviation side against
// the plan side's new recommendation.

#ifndef EFCE_SOLVER_HPP
#define EFCE_SOLVER_HPP

#include <chrono>
#include <cmath>
#include <functional>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>
#include <string_view>
#include <string>
#include <vector>

#include "efce/chain_rm.hpp"
#include "efce/decompose.hpp"
#include "efce/deviation.hpp"
#include "efce/game_io.hpp"
#include "efce/triggers.hpp"

namespace efce {

enum class Averaging : std::uint8_t { kLinear, kUniform };

struct Checkpoint {
  long long iteration = 0;
  double gap = 0.0;  // deviation gap of the average plan, original payoff units
  double wall_ms = 0.0;
  int trigger_player = 0;  // 1 or 2; 0 when there is no trigger
  std::string trigger_sequence;
  // Only filled when regrets are tracked (solver payoff units).
  double saddle_gap = 0.0;
  double regret_x = 0.0;
  double regret_y = 0.0;
};

struct SolverOptions {
  RmFlavor flavor = RmFlavor::kRegretMatchingPlus;
  bool alternate = true;
  Averaging averaging = Averaging::kLinear;
  // Stop at the first checkpoint whose gap is at most this; <= 0 disables.
  double gap_target = 0.0;
  long long max_iterations = 1000;
  // Checkpoint every this many iterations; 0 means at powers of two. The last
  // iteration is always a checkpoint.
  long long checkpoint_period = 0;
  // Divide each player's payoffs by their largest magnitude before solving.
  bool normalize_payoffs = true;
  // Track cumulative regrets of both sides and the saddle-point gap of the
  // averages at every checkpoint.
  bool track_regret = false;
  std::function<void(const Checkpoint&)> on_checkpoint;
};

struct SolveResult {
  std::vector<double> plan;  // average correlation plan
  std::vector<Checkpoint> trace;
  long long iterations = 0;
  double gap = 0.0;
  bool target_met = false;
};

class EfceSolver {
 public:
  static const GameTree& RequireAdmissibleGame(const GameTree& game) {
    RequireAdmissible(game);
    return game;
  }

  EfceSolver(const GameTree& game, SolverOptions options = {})
      : game_(game), options_(std::move(options)), rel_(RequireAdmissibleGame(game)) {
    triggers_ = TriggerIndex(game, rel_);
    side_ = std::make_unique<DeviationSide>(rel_, triggers_);
    scale_ = {1.0, 1.0};
    if (options_.normalize_payoffs) {
      std::array<double, 2> m{0.0, 0.0};
      for (const Node& n : game.nodes()) {
        if (!n.is_leaf()) continue;
        for (int i = 0; i < 2; ++i) m[i] = std::max(m[i], std::abs(n.payoffs[i]));
      }
      for (int i = 0; i < 2; ++i) scale_[i] = m[i] > 0.0 ? 1.0 / m[i] : 1.0;
    }
    form_ = BilinearForm(rel_, triggers_, *side_, scale_);
    for (const auto& t : form_.terms()) {
      if (!std::isfinite(t.coeff)) throw SolverError("non-finite payoff coefficient");
    }
    plan_chain_ = std::make_shared<const DecompositionChain>(Decompose(rel_));
    xrm_ = std::make_unique<ChainRegretMinimizer>(plan_chain_, options_.flavor);
    yrm_ = std::make_unique<ChainRegretMinimizer>(side_->shared_chain(), options_.flavor);
    const int nx = rel_.num_pairs();
    const int ny = side_->dimension();
    sum_x_.assign(nx, 0.0);
    sum_y_.assign(ny, 0.0);
    gx_.assign(nx, 0.0);
    gy_.assign(ny, 0.0);
    if (options_.track_regret) {
      cum_gx_.assign(nx, 0.0);
      cum_gy_.assign(ny, 0.0);
    }
    w_ = yrm_->Recommend();
  }

  const RelevanceStructure& relevance() const { return rel_; }
  const TriggerIndex& triggers() const { return triggers_; }
  const DeviationSide& deviation_side() const { return *side_; }
  const DecompositionChain& plan_chain() const { return *plan_chain_; }
  const BilinearForm& form() const { return form_; }
  std::array<double, 2> payoff_scale() const { return scale_; }
  long long iteration() const { return t_; }

  // One iteration of self-play.
  void Step() {
    ++t_;
    x_ = xrm_->Recommend();
    if (options_.alternate) {
      form_.GradientX(w_, gx_);
      xrm_->Observe(gx_);
      const std::vector<double>& next = xrm_->Recommend();
      w_ = yrm_->Recommend();
      form_.GradientY(next, gy_);
      for (double& v : gy_) v = -v;
      yrm_->Observe(gy_);
    } else {
      w_ = yrm_->Recommend();
      form_.GradientX(w_, gx_);
      form_.GradientY(x_, gy_);
      for (double& v : gy_) v = -v;
      xrm_->Observe(gx_);
      yrm_->Observe(gy_);
    }
    if (options_.track_regret) {
      for (std::size_t j = 0; j < gx_.size(); ++j) {
        cum_gx_[j] += gx_[j];
        played_x_ += gx_[j] * x_[j];
      }
      for (std::size_t j = 0; j < gy_.size(); ++j) {
        cum_gy_[j] += gy_[j];
        played_y_ += gy_[j] * w_[j];
      }
    }
    const double weight =
        options_.averaging == Averaging::kLinear ? static_cast<double>(t_) : 1.0;
    for (std::size_t j = 0; j < x_.size(); ++j) sum_x_[j] += weight * x_[j];
    for (std::size_t j = 0; j < w_.size(); ++j) sum_y_[j] += weight * w_[j];
    total_weight_ += weight;
  }

  std::vector<double> AveragePlan() const { return Average(sum_x_); }
  std::vector<double> AverageDeviation() const { return Average(sum_y_); }

  // Cumulative regrets of the two sides (requires track_regret).
  double RegretX() const {
    RequireTracking();
    return played_x_ - MinimizeLinear(*plan_chain_, cum_gx_).value;
  }
  double RegretY() const {
    RequireTracking();
    return played_y_ - MinimizeLinear(side_->chain(), cum_gy_).value;
  }

  // max_w f(avg xi, w) - min_xi f(xi, avg w), in solver payoff units.
  double SaddleGap() const {
    const auto x = AveragePlan();
    const auto w = AverageDeviation();
    std::vector<double> g(side_->dimension());
    form_.GradientY(x, g);
    for (double& v : g) v = -v;
    const double best_w = -MinimizeLinear(side_->chain(), g).value;
    std::vector<double> h(rel_.num_pairs());
    form_.GradientX(w, h);
    const double best_x = MinimizeLinear(*plan_chain_, h).value;
    return best_w - best_x;
  }

  Checkpoint MakeCheckpoint() const {
    const auto plan = AveragePlan();
    for (double v : plan) {
      if (!std::isfinite(v)) throw SolverError("average plan became non-finite");
    }
    const GapResult g = DeviationGap(rel_, triggers_, plan, kGapTolerance);
    if (!std::isfinite(g.gap)) throw SolverError("deviation gap is not finite");
    Checkpoint c;
    c.iteration = t_;
    c.gap = g.gap;
    c.wall_ms = ElapsedMs();
    if (g.trigger >= 0) {
      const Trigger& t = triggers_[g.trigger];
      c.trigger_player = Number(t.player);
      c.trigger_sequence = rel_.space(t.player).SequenceName(game_, t.sequence);
    }
    if (options_.track_regret) {
      c.saddle_gap = SaddleGap();
      c.regret_x = RegretX();
      c.regret_y = RegretY();
    }
    return c;
  }

  SolveResult Run() {
    start_ = std::chrono::steady_clock::now();
    SolveResult out;
    if (options_.max_iterations < 1) throw SolverError("iteration budget must be positive");
    long long next_power = 1;
    while (t_ < options_.max_iterations) {
      Step();
      bool checkpoint = t_ == options_.max_iterations;
      if (options_.checkpoint_period > 0) {
        checkpoint = checkpoint || t_ % options_.checkpoint_period == 0;
      } else if (t_ == next_power) {
        checkpoint = true;
        next_power *= 2;
      }
      if (!checkpoint) continue;
      Checkpoint c = MakeCheckpoint();
      out.trace.push_back(c);
      if (options_.on_checkpoint) options_.on_checkpoint(c);
      if (options_.gap_target > 0.0 && c.gap <= options_.gap_target) {
        out.target_met = true;
        break;
      }
    }
    out.iterations = t_;
    out.plan = AveragePlan();
    out.gap = out.trace.empty() ? 0.0 : out.trace.back().gap;
    return out;
  }

 private:
  // Averages accumulate rounding error; feasibility is checked loosely.
  static constexpr double kGapTolerance = 1e-7;

  std::vector<double> Average(const std::vector<double>& sum) const {
    std::vector<double> out(sum.size(), 0.0);
    if (total_weight_ == 0.0) return out;
    for (std::size_t j = 0; j < sum.size(); ++j) out[j] = sum[j] / total_weight_;
    return out;
  }

  void RequireTracking() const {
    if (!options_.track_regret) throw SolverError("regret tracking is disabled");
  }

  double ElapsedMs() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_)
        .count();
  }

  GameTree game_;
  SolverOptions options_;
  RelevanceStructure rel_;
  TriggerIndex triggers_;
  std::unique_ptr<DeviationSide> side_;
  std::array<double, 2> scale_{1.0, 1.0};
  BilinearForm form_;
  std::shared_ptr<const DecompositionChain> plan_chain_;
  std::unique_ptr<ChainRegretMinimizer> xrm_;
  std::unique_ptr<ChainRegretMinimizer> yrm_;

  long long t_ = 0;
  std::vector<double> x_;
  std::vector<double> w_;
  std::vector<double> gx_;
  std::vector<double> gy_;
  std::vector<double> sum_x_;
  std::vector<double> sum_y_;
  double total_weight_ = 0.0;
  std::vector<double> cum_gx_;
  std::vector<double> cum_gy_;
  double played_x_ = 0.0;
  double played_y_ = 0.0;
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

// Regret-based bound check: with uniform averaging, the saddle-point gap of the
// averages is at most (R_x + R_y) / T at every checkpoint.
inline bool FolkTheoremHolds(const std::vector<Checkpoint>& trace, double slack = 1e-6) {
  for (const Checkpoint& c : trace) {
    if (c.saddle_gap > (c.regret_x + c.regret_y) / static_cast<double>(c.iteration) + slack) {
      return false;
    }
  }
  return true;
}

inline void WriteTraceCsv(std::ostream& out, const std::vector<Checkpoint>& trace) {
  out << "iter,gap,wall_ms,trigger_player,trigger_sequence\n";
  for (const Checkpoint& c : trace) {
    out << c.iteration << "," << FormatDouble(c.gap) << "," << FormatDouble(c.wall_ms) << ","
        << c.trigger_player << "," << c.trigger_sequence << "\n";
  }
}

inline void WritePlan(std::ostream& out, const std::vector<double>& plan) {
  for (std::size_t k = 0; k < plan.size(); ++k) out << k << " " << FormatDouble(plan[k]) << "\n";
}

// Reads the format written by WritePlan. Every index in [0, dimension) must
// appear exactly once.
inline std::vector<double> ParsePlan(std::string_view text, int dimension) {
  std::vector<double> plan(dimension, 0.0);
  std::vector<char> seen(dimension, 0);
  std::istringstream in{std::string(text)};
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto tok = internal::Tokenize(raw);
    if (tok.empty()) continue;
    const auto idx = internal::ParseInt(tok[0]);
    const auto value = tok.size() == 2 ? internal::ParseReal(tok[1]) : std::nullopt;
    if (!idx || !value) {
      throw Error("plan line " + std::to_string(line) + ": expected '<index> <value>'");
    }
    if (*idx < 0 || *idx >= dimension) {
      throw Error("plan line " + std::to_string(line) + ": index out of range");
    }
    if (seen[*idx]) throw Error("plan line " + std::to_string(line) + ": duplicate index");
    seen[*idx] = 1;
    plan[*idx] = *value;
  }
  for (int k = 0; k < dimension; ++k) {
    if (!seen[k]) throw Error("plan is missing index " + std::to_string(k));
  }
  return plan;
}

}  // namespace efce

#endif  // EFCE_SOLVER_HPP
