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

// Online regret minimizers over simplices and their scaled extensions.
//
// A regret minimizer alternates Recommend() and Observe(loss). Losses are
// minimized: the regret of the sequence x1, x2, ... against losses l1, l2, ...
// is sum <lt, xt> - min_x sum <lt, x>.

#ifndef EFCE_REGRET_HPP
#define EFCE_REGRET_HPP

#include <algorithm>
#include <concepts>
#include <numeric>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "efce/common.hpp"

namespace efce {

enum class RmFlavor : std::uint8_t { kRegretMatching = 0, kRegretMatchingPlus = 1 };

inline std::string_view FlavorName(RmFlavor f) {
  return f == RmFlavor::kRegretMatching ? "rm" : "rm_plus";
}

// Regret matching strategy: proportional to the positive part of the regrets,
// uniform when no regret is positive.
inline void RegretMatchingStrategy(std::span<const double> regrets, std::span<double> out) {
  double total = 0.0;
  for (std::size_t j = 0; j < regrets.size(); ++j) {
    out[j] = regrets[j] > 0.0 ? regrets[j] : 0.0;
    total += out[j];
  }
  if (total > 0.0) {
    for (double& v : out) v /= total;
  } else {
    std::fill(out.begin(), out.end(), 1.0 / static_cast<double>(out.size()));
  }
}

// r <- r + <loss, x> 1 - loss, thresholded at zero for RM+. Returns <loss, x>.
inline double RegretMatchingUpdate(RmFlavor flavor, std::span<double> regrets,
                                   std::span<const double> strategy,
                                   std::span<const double> loss) {
  double value = 0.0;
  for (std::size_t j = 0; j < loss.size(); ++j) value += loss[j] * strategy[j];
  for (std::size_t j = 0; j < loss.size(); ++j) {
    regrets[j] += value - loss[j];
    if (flavor == RmFlavor::kRegretMatchingPlus && regrets[j] < 0.0) regrets[j] = 0.0;
  }
  return value;
}

template <typename R>
concept RegretMinimizer = requires(R r, const R cr, std::span<const double> loss) {
  { cr.dimension() } -> std::convertible_to<int>;
  { r.Recommend() } -> std::convertible_to<const std::vector<double>&>;
  r.Observe(loss);
};

namespace internal {

inline void CheckDimension(std::string_view who, std::size_t got, std::size_t want) {
  if (got != want) {
    throw ContractError(std::string(who) + ": loss has dimension " + std::to_string(got) +
                        ", expected " + std::to_string(want));
  }
}

}  // namespace internal

// Regret matching (or RM+) over the n-simplex.
class SimplexRegretMinimizer {
 public:
  explicit SimplexRegretMinimizer(int n, RmFlavor flavor = RmFlavor::kRegretMatchingPlus)
      : flavor_(flavor), regrets_(n, 0.0), strategy_(n, 1.0 / n) {
    if (n < 1) throw ContractError("simplex dimension must be positive");
  }

  int dimension() const { return static_cast<int>(regrets_.size()); }
  RmFlavor flavor() const { return flavor_; }
  const std::vector<double>& regrets() const { return regrets_; }
  void set_regrets(std::span<const double> r) {
    internal::CheckDimension("SimplexRegretMinimizer", r.size(), regrets_.size());
    regrets_.assign(r.begin(), r.end());
  }

  const std::vector<double>& Recommend() {
    RegretMatchingStrategy(regrets_, strategy_);
    return strategy_;
  }

  // Updates against the most recent recommendation.
  void Observe(std::span<const double> loss) {
    internal::CheckDimension("SimplexRegretMinimizer", loss.size(), regrets_.size());
    RegretMatchingUpdate(flavor_, regrets_, strategy_, loss);
  }

 private:
  RmFlavor flavor_;
  std::vector<double> regrets_;
  std::vector<double> strategy_;
};

// The trivial minimizer over a single point.
class SingletonRegretMinimizer {
 public:
  explicit SingletonRegretMinimizer(std::vector<double> point) : point_(std::move(point)) {}

  int dimension() const { return static_cast<int>(point_.size()); }
  const std::vector<double>& Recommend() { return point_; }
  void Observe(std::span<const double> loss) {
    internal::CheckDimension("SingletonRegretMinimizer", loss.size(), point_.size());
  }

 private:
  std::vector<double> point_;
};

// Affine map h(x) = <a, x> + b.
struct AffineScale {
  std::vector<double> a;
  double b = 0.0;

  double operator()(std::span<const double> x) const {
    double v = b;
    for (std::size_t j = 0; j < a.size(); ++j) v += a[j] * x[j];
    return v;
  }
};

// Regret minimizer over the scaled extension {(x, h(x) y) : x in X, y in Y},
// built from minimizers over X and Y. Its regret is at most
// R_X + max h * R_Y.
template <RegretMinimizer X, RegretMinimizer Y>
class ScaledExtension {
 public:
  ScaledExtension(X x, Y y, AffineScale h)
      : x_(std::move(x)), y_(std::move(y)), h_(std::move(h)) {
    if (static_cast<int>(h_.a.size()) != x_.dimension()) {
      throw ContractError("scale vector does not match the dimension of X");
    }
  }

  int dimension() const { return x_.dimension() + y_.dimension(); }
  X& x_minimizer() { return x_; }
  Y& y_minimizer() { return y_; }
  const std::vector<double>& last_y() const { return y_last_; }
  // Loss passed to the X minimizer by the latest Observe.
  const std::vector<double>& last_x_loss() const { return x_loss_; }

  const std::vector<double>& Recommend() {
    const std::vector<double>& x = x_.Recommend();
    const double scale = h_(x);
    if (scale < -kDefaultTolerance) {
      throw ContractError("scaled extension: h(x) = " + FormatDouble(scale) + " is negative");
    }
    y_last_ = y_.Recommend();
    out_.assign(x.begin(), x.end());
    for (double v : y_last_) out_.push_back(scale * v);
    return out_;
  }

  void Observe(std::span<const double> loss) {
    internal::CheckDimension("ScaledExtension", loss.size(),
                             static_cast<std::size_t>(dimension()));
    const std::size_t nx = x_.dimension();
    const auto lx = loss.first(nx);
    const auto ly = loss.subspan(nx);
    y_.Observe(ly);
    double ydot = 0.0;
    for (std::size_t j = 0; j < ly.size(); ++j) ydot += ly[j] * y_last_[j];
    x_loss_.assign(lx.begin(), lx.end());
    for (std::size_t j = 0; j < nx; ++j) x_loss_[j] += ydot * h_.a[j];
    x_.Observe(x_loss_);
  }

 private:
  X x_;
  Y y_;
  AffineScale h_;
  std::vector<double> y_last_;
  std::vector<double> x_loss_;
  std::vector<double> out_;
};

}  // namespace efce

#endif  // EFCE_REGRET_HPP
