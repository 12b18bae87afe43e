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

#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "cfr_oracle.hpp"
#include "efce/efce.hpp"
#include "random_games.hpp"

namespace efce {
namespace {

using Vec = std::vector<double>;

void ExpectNear(const Vec& got, const Vec& want, double tol = 1e-15) {
  ASSERT_EQ(got.size(), want.size());
  for (std::size_t j = 0; j < got.size(); ++j) EXPECT_NEAR(got[j], want[j], tol) << j;
}

TEST(Simplex, FreshIsUniform) {
  SimplexRegretMinimizer rm(3);
  ExpectNear(rm.Recommend(), {1. / 3, 1. / 3, 1. / 3});
}

TEST(Simplex, PositivePart) {
  SimplexRegretMinimizer rm(3, RmFlavor::kRegretMatching);
  rm.set_regrets(Vec{2, 0, -1});
  ExpectNear(rm.Recommend(), {1, 0, 0});
  SimplexRegretMinimizer plus(3);
  plus.set_regrets(Vec{0.5, 0.5, 0});
  ExpectNear(plus.Recommend(), {0.5, 0.5, 0});
}

TEST(Simplex, ObserveUpdatesRegrets) {
  SimplexRegretMinimizer rm(2, RmFlavor::kRegretMatching);
  rm.Recommend();
  rm.Observe(Vec{1, 0});
  ExpectNear(rm.regrets(), {-0.5, 0.5});

  SimplexRegretMinimizer plus(2, RmFlavor::kRegretMatchingPlus);
  plus.Recommend();
  plus.Observe(Vec{1, 0});
  ExpectNear(plus.regrets(), {0, 0.5});

  SimplexRegretMinimizer flat(3, RmFlavor::kRegretMatching);
  flat.set_regrets(Vec{1, -2, 0.5});
  flat.Recommend();
  flat.Observe(Vec{4, 4, 4});
  ExpectNear(flat.regrets(), {1, -2, 0.5});
  EXPECT_THROW(flat.Observe(Vec{1, 2}), ContractError);
}

TEST(Simplex, RegretMatchingPlusStaysNonnegative) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1, 1);
  SimplexRegretMinimizer rm(4);
  for (int t = 0; t < 200; ++t) {
    const Vec& x = rm.Recommend();
    double s = 0;
    for (double v : x) {
      EXPECT_GE(v, 0);
      s += v;
    }
    EXPECT_NEAR(s, 1, 1e-12);
    rm.Observe(Vec{u(rng), u(rng), u(rng), u(rng)});
    for (double r : rm.regrets()) EXPECT_GE(r, 0);
  }
}

TEST(ScaledExtension, UniformTimesScale) {
  ScaledExtension ext(SimplexRegretMinimizer(2), SimplexRegretMinimizer(2),
                      AffineScale{{1, 0}, 0});
  ExpectNear(ext.Recommend(), {0.5, 0.5, 0.25, 0.25});
}

TEST(ScaledExtension, ZeroScaleOnSingleton) {
  ScaledExtension ext(SingletonRegretMinimizer({1}), SimplexRegretMinimizer(3),
                      AffineScale{{0}, 0});
  ExpectNear(ext.Recommend(), {1, 0, 0, 0});
}

TEST(ScaledExtension, Nested) {
  ScaledExtension inner(SingletonRegretMinimizer({1}), SimplexRegretMinimizer(2),
                        AffineScale{{1}, 0});
  ScaledExtension outer(std::move(inner), SimplexRegretMinimizer(2),
                        AffineScale{{0, 1, 0}, 0});
  ExpectNear(outer.Recommend(), {1, 0.5, 0.5, 0.25, 0.25});
}

TEST(ScaledExtension, BackPropagatedLoss) {
  ScaledExtension ext(SimplexRegretMinimizer(2), SimplexRegretMinimizer(2),
                      AffineScale{{1, 0}, 0});
  SimplexRegretMinimizer& y = ext.y_minimizer();
  y.set_regrets(Vec{1, 0});
  ext.Recommend();
  ExpectNear(ext.last_y(), {1, 0});
  ext.Observe(Vec{0, 0, 2, 0});
  ExpectNear(ext.last_x_loss(), {2, 0});

  ScaledExtension quiet(SimplexRegretMinimizer(2), SimplexRegretMinimizer(2),
                        AffineScale{{1, 0}, 0});
  quiet.Recommend();
  quiet.Observe(Vec{0.3, 0.7, 0, 0});
  ExpectNear(quiet.last_x_loss(), {0.3, 0.7});

  ScaledExtension constant(SimplexRegretMinimizer(2), SimplexRegretMinimizer(2),
                           AffineScale{{0, 0}, 0.5});
  constant.Recommend();
  constant.Observe(Vec{0.3, 0.7, 5, 1});
  ExpectNear(constant.last_x_loss(), {0.3, 0.7});
}

TEST(ScaledExtension, NegativeScaleRejected) {
  ScaledExtension ext(SimplexRegretMinimizer(2), SimplexRegretMinimizer(2),
                      AffineScale{{-1, 0}, 0});
  EXPECT_THROW(ext.Recommend(), ContractError);
  EXPECT_THROW(ScaledExtension(SimplexRegretMinimizer(2), SimplexRegretMinimizer(2),
                               AffineScale{{1}, 0}),
               ContractError);
}

TEST(ChainRm, Fig2Fresh) {
  const RelevanceStructure rel(Fig2Game());
  ChainRegretMinimizer rm(Decompose(rel));
  const Vec& x = rm.Recommend();
  EXPECT_EQ(x[0], 1);
  EXPECT_EQ(x[rel.Index(1, 0)], 0.5);
  EXPECT_EQ(x[rel.Index(2, 0)], 0.5);
  for (int b = 1; b <= 4; ++b) {
    EXPECT_EQ(x[rel.Index(0, b)], 0.5);
    EXPECT_EQ(x[rel.Index(1, b)], 0.25);
    EXPECT_EQ(x[rel.Index(2, b)], 0.25);
  }
}

TEST(ChainRm, EmptyChain) {
  ChainRegretMinimizer rm(DecompositionChain(1, 0));
  ExpectNear(rm.Recommend(), {1});
  rm.Observe(Vec{3});
}

TEST(ChainRm, TreeplexFresh) {
  auto t = MakeTreeplexRegretMinimizer(BuildSequenceSpace(Fig1Game(), Player::kOne));
  ExpectNear(t.rm.Recommend(), {1, .5, .5, .25, .25, .25, .25, 1. / 6, 1. / 6, 1. / 6});
}

TEST(ChainRm, Fig2SumBackPropagation) {
  const RelevanceStructure rel(Fig2Game());
  const DecompositionChain chain = Decompose(rel);
  ChainRegretMinimizer rm(chain, RmFlavor::kRegretMatching);
  rm.Recommend();
  Vec loss(15, 0.0);
  loss[rel.Index(0, 1)] = 1.0;
  rm.Observe(loss);
  int offset = 0;
  for (const ChainStep& s : chain.steps()) {
    if (s.kind != StepKind::kFill) continue;
    const auto ops = chain.Operands(s);
    Vec r(rm.regrets().begin() + offset, rm.regrets().begin() + offset + s.width());
    offset += s.width();
    const bool hit = ops[0] == rel.Index(1, 1) || ops[0] == rel.Index(2, 1);
    if (hit) {
      ExpectNear(r, {-0.5, 0.5});
    } else {
      ExpectNear(r, {0, 0});
    }
  }
}

TEST(ChainRm, ZeroLossKeepsUniform) {
  const RelevanceStructure rel(Fig2Game());
  ChainRegretMinimizer rm(Decompose(rel));
  const Vec first = rm.Recommend();
  rm.Observe(Vec(15, 0.0));
  for (double r : rm.regrets()) EXPECT_EQ(r, 0.0);
  EXPECT_EQ(rm.Recommend(), first);
}

TEST(ChainRm, SingleFillMatchesScaledExtension) {
  DecompositionChain chain(4, 0);
  const int targets[] = {1, 2, 3};
  chain.AddFill(0, targets);
  ChainRegretMinimizer rm(chain, RmFlavor::kRegretMatching);
  ScaledExtension ext(SingletonRegretMinimizer({1}),
                      SimplexRegretMinimizer(3, RmFlavor::kRegretMatching), AffineScale{{1}, 0});
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0, 1);
  for (int t = 0; t < 50; ++t) {
    ExpectNear(rm.Recommend(), ext.Recommend(), 1e-15);
    const Vec loss = {u(rng), u(rng), u(rng), u(rng)};
    rm.Observe(loss);
    ext.Observe(loss);
  }
}

TEST(ChainRm, ObserveNeedsRecommend) {
  ChainRegretMinimizer rm(Decompose(RelevanceStructure(Fig2Game())));
  EXPECT_THROW(rm.Observe(Vec(15, 0.0)), ContractError);
  rm.Recommend();
  EXPECT_THROW(rm.Observe(Vec(3, 0.0)), ContractError);
}

TEST(ChainRm, SaveLoadState) {
  const RelevanceStructure rel(Fig1Game());
  const DecompositionChain chain = Decompose(rel);
  ChainRegretMinimizer a(chain);
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-1, 1);
  Vec loss(chain.dimension());
  for (int t = 0; t < 10; ++t) {
    a.Recommend();
    for (double& v : loss) v = u(rng);
    a.Observe(loss);
  }
  std::stringstream buf;
  a.SaveState(buf);
  ChainRegretMinimizer b(chain);
  b.LoadState(buf);
  EXPECT_EQ(a.regrets(), b.regrets());
  EXPECT_EQ(a.Recommend(), b.Recommend());
  ChainRegretMinimizer c(chain, RmFlavor::kRegretMatching);
  std::stringstream again;
  a.SaveState(again);
  EXPECT_THROW(c.LoadState(again), Error);
}

TEST(ChainRm, RecommendationsAreMembers) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-1, 1);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const RelevanceStructure rel(testing::RandomGame(seed));
    const DecompositionChain chain = Decompose(rel);
    ChainRegretMinimizer rm(chain);
    Vec loss(chain.dimension());
    for (int t = 0; t < 20; ++t) {
      const Vec& x = rm.Recommend();
      EXPECT_TRUE(ChainMembership(chain, x, 1e-12));
      EXPECT_TRUE(CheckPlanConstraints(rel, x, 1e-12).empty());
      for (double& v : loss) v = u(rng);
      rm.Observe(loss);
    }
  }
}

TEST(ChainRm, MatchesDirectCfr) {
  for (bool plus : {false, true}) {
    const SequenceSpace s = BuildSequenceSpace(testing::RandomGame(4), Player::kOne);
    auto t = MakeTreeplexRegretMinimizer(
        s, kEmptySequence, plus ? RmFlavor::kRegretMatchingPlus : RmFlavor::kRegretMatching);
    testing::DirectCfr cfr(s, plus);
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> u(-1, 1);
    for (int it = 0; it < 100; ++it) {
      const Vec& x = t.rm.Recommend();
      const Vec want = cfr.Recommend();
      ASSERT_EQ(x.size(), want.size());
      for (std::size_t k = 0; k < x.size(); ++k) {
        EXPECT_NEAR(x[k], want[t.treeplex.sequences[k]], 1e-12);
      }
      Vec loss(s.size());
      for (double& v : loss) v = u(rng);
      Vec local(x.size());
      for (std::size_t k = 0; k < x.size(); ++k) local[k] = loss[t.treeplex.sequences[k]];
      t.rm.Observe(local);
      cfr.Observe(loss);
    }
  }
}

}  // namespace
}  // namespace efce
