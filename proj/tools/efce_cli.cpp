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

// Command-line front end: generate games, decompose them, solve for an
// extensive-form correlated equilibrium and verify plans.
//
// Exit codes: 0 success, 1 target not met or a check failed, 2 input error,
// 3 internal invariant violation.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "efce/efce.hpp"
#include "efce/oracle.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitNotMet = 1;
constexpr int kExitInput = 2;
constexpr int kExitInvariant = 3;

// Game selection shared by every subcommand that reads a game.
struct GameSource {
  std::string path;
  std::string fixture;
  std::string battleship;  // "W,H,T,L"
  std::optional<unsigned long long> payoff_seed;

  void Register(CLI::App* app) {
    auto* file = app->add_option("game", path, "Game file");
    auto* fix = app->add_option("--fixture", fixture, "Built-in fixture: fig1, fig2, leaf");
    auto* bs = app->add_option("--battleship", battleship,
                               "Generated Battleship instance W,H,TURNS,SHIP");
    file->excludes(fix, bs);
    fix->excludes(bs);
    app->add_option("--payoff-seed", payoff_seed,
                    "Replace fixture payoffs by random integers in [-5, 5]");
  }

  efce::GameTree Load() const {
    const int given = !path.empty() + !fixture.empty() + !battleship.empty();
    if (given != 1) throw efce::GameError("give exactly one game source");
    if (!path.empty()) return efce::ParseGame(efce::ReadTextFile(path));
    if (!fixture.empty()) return LoadFixture(fixture, payoff_seed);
    int w = 0, h = 0, t = 0, l = 0;
    char c1 = 0, c2 = 0, c3 = 0;
    std::istringstream in(battleship);
    if (!(in >> w >> c1 >> h >> c2 >> t >> c3 >> l) || c1 != ',' || c2 != ',' || c3 != ',') {
      throw efce::GameError("--battleship expects W,H,TURNS,SHIP");
    }
    return efce::GenerateBattleship(w, h, t, l);
  }

  static efce::GameTree LoadFixture(const std::string& name,
                                    std::optional<unsigned long long> seed) {
    efce::PayoffList payoffs;
    if (seed) {
      const efce::GameTree shape = efce::BuildFixture(name);
      std::mt19937_64 rng(*seed);
      std::uniform_int_distribution<int> dist(-5, 5);
      for (int k = 0; k < shape.num_leaves(); ++k) {
        const double u1 = dist(rng);
        const double u2 = dist(rng);
        payoffs.push_back({u1, u2});
      }
      if (name == "leaf") return efce::SingleLeafGame(payoffs[0][0], payoffs[0][1]);
    }
    return efce::BuildFixture(name, payoffs);
  }
};

void WriteFileOrStdout(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw efce::Error("cannot write '" + path + "'");
  out << text;
  if (!out) throw efce::Error("failed writing '" + path + "'");
}

double MsSince(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
      .count();
}

void PrintGameCounts(std::ostream& out, const efce::GameTree& game) {
  const auto s1 = efce::BuildSequenceSpace(game, efce::Player::kOne);
  const auto s2 = efce::BuildSequenceSpace(game, efce::Player::kTwo);
  out << "nodes " << game.num_nodes() << "\n"
      << "leaves " << game.num_leaves() << "\n"
      << "infosets " << s1.num_infosets() << " " << s2.num_infosets() << "\n"
      << "sequences " << s1.size() << " " << s2.size() << "\n";
}

// ---- generate ---------------------------------------------------------------

struct GenerateArgs {
  std::string board;
  int turns = 1;
  int ship = 1;
  std::string fixture;
  std::optional<unsigned long long> payoff_seed;
  std::string output;
};

int RunGenerateBattleship(const GenerateArgs& a) {
  int w = 0, h = 0;
  char x = 0;
  std::istringstream in(a.board);
  if (!(in >> w >> x >> h) || (x != 'x' && x != 'X') || !in.eof()) {
    throw efce::GameError("--board expects WxH, got '" + a.board + "'");
  }
  const efce::GameTree game = efce::GenerateBattleship(w, h, a.turns, a.ship);
  WriteFileOrStdout(a.output, efce::SerializeGame(game));
  PrintGameCounts(a.output.empty() ? std::cerr : std::cout, game);
  return kExitOk;
}

int RunGenerateFixture(const GenerateArgs& a) {
  const efce::GameTree game = GameSource::LoadFixture(a.fixture, a.payoff_seed);
  WriteFileOrStdout(a.output, efce::SerializeGame(game));
  PrintGameCounts(a.output.empty() ? std::cerr : std::cout, game);
  return kExitOk;
}

// ---- decompose --------------------------------------------------------------

struct DecomposeArgs {
  GameSource source;
  std::string output;
};

int RunDecompose(const DecomposeArgs& a) {
  const efce::GameTree game = a.source.Load();
  efce::RequireAdmissible(game);
  const auto start = std::chrono::steady_clock::now();
  const efce::RelevanceStructure rel(game);
  const efce::DecompositionChain chain = efce::Decompose(rel);
  const double ms = MsSince(start);
  const auto problems = efce::CheckChainInvariants(chain);
  if (!problems.empty()) {
    std::cerr << "error: chain invariant violated: " << problems.front() << "\n";
    return kExitInvariant;
  }
  if (!a.output.empty()) WriteFileOrStdout(a.output, efce::SerializeChain(chain, &rel));
  std::cout << "relevant_pairs " << rel.num_pairs() << "\n"
            << "fills " << chain.num_fills() << "\n"
            << "sums " << chain.num_sums() << "\n"
            << "max_width " << chain.max_width() << "\n"
            << "wall_ms " << efce::FormatDouble(ms) << "\n";
  return kExitOk;
}

// ---- solve ------------------------------------------------------------------

struct SolveArgs {
  GameSource source;
  std::optional<double> gap;
  std::optional<long long> budget;
  std::string rm = "rm_plus";
  bool alternate = true;
  std::string avg = "linear";
  std::optional<long long> checkpoint;
  std::string trace;
  std::string plan;
};

long long DefaultCheckpointPeriod() {
  const char* env = std::getenv("EFCE_CHECKPOINT_PERIOD");
  if (env == nullptr || *env == '\0') return 0;
  const auto v = efce::internal::ParseInt(env);
  if (!v || *v < 0) throw efce::GameError("EFCE_CHECKPOINT_PERIOD must be a nonnegative integer");
  return *v;
}

int RunSolve(const SolveArgs& a) {
  if (!a.gap && !a.budget) throw efce::GameError("solve needs --gap or --budget");
  if (a.gap && !(*a.gap > 0.0)) throw efce::GameError("--gap must be positive");
  if (a.budget && *a.budget < 1) throw efce::GameError("--budget must be positive");
  const efce::GameTree game = a.source.Load();

  efce::SolverOptions opt;
  opt.flavor = a.rm == "rm" ? efce::RmFlavor::kRegretMatching
                            : efce::RmFlavor::kRegretMatchingPlus;
  opt.alternate = a.alternate;
  opt.averaging = a.avg == "uniform" ? efce::Averaging::kUniform : efce::Averaging::kLinear;
  opt.gap_target = a.gap.value_or(0.0);
  opt.max_iterations = a.budget.value_or(std::numeric_limits<long long>::max());
  opt.checkpoint_period = a.checkpoint ? *a.checkpoint : DefaultCheckpointPeriod();
  opt.on_checkpoint = [](const efce::Checkpoint& c) {
    std::cerr << "iter " << c.iteration << " gap " << efce::FormatDouble(c.gap) << " wall_ms "
              << static_cast<long long>(c.wall_ms);
    if (c.trigger_player != 0) {
      std::cerr << " trigger p" << c.trigger_player << " " << c.trigger_sequence;
    }
    std::cerr << "\n";
  };

  efce::EfceSolver solver(game, opt);
  const efce::SolveResult r = solver.Run();
  if (!a.trace.empty()) {
    std::ostringstream out;
    efce::WriteTraceCsv(out, r.trace);
    WriteFileOrStdout(a.trace, out.str());
  }
  if (!a.plan.empty()) {
    std::ostringstream out;
    efce::WritePlan(out, r.plan);
    WriteFileOrStdout(a.plan, out.str());
  }
  std::cout << "iterations " << r.iterations << "\n"
            << "gap " << efce::FormatDouble(r.gap) << "\n";
  if (a.gap) {
    std::cout << "target " << (r.target_met ? "met" : "not met") << "\n";
    return r.target_met ? kExitOk : kExitNotMet;
  }
  return kExitOk;
}

// ---- verify -----------------------------------------------------------------

struct VerifyArgs {
  GameSource source;
  std::string chain;
  std::string plan;
  unsigned long long seed = 0;
  int tiny_leaves = 64;
};

class Report {
 public:
  void Pass(const std::string& name) { std::cout << "PASS " << name << "\n"; }
  void Fail(const std::string& name, const std::string& why) {
    std::cout << "FAIL " << name << ": " << why << "\n";
    failed_ = true;
  }
  void Skip(const std::string& name, const std::string& why) {
    std::cout << "SKIP " << name << ": " << why << "\n";
  }
  void Check(const std::string& name, bool ok, const std::string& why) {
    ok ? Pass(name) : Fail(name, why);
  }
  bool failed() const { return failed_; }

 private:
  bool failed_ = false;
};

int RunVerify(const VerifyArgs& a) {
  Report report;
  const efce::GameTree game = [&] {
    if (!a.source.path.empty() && a.source.fixture.empty() && a.source.battleship.empty()) {
      return efce::ParseGameUnchecked(efce::ReadTextFile(a.source.path));
    }
    return a.source.Load();
  }();
  const auto violations = efce::Validate(game);
  if (!violations.empty()) {
    for (const auto& v : violations) report.Fail("admissible", v.message);
    return kExitNotMet;
  }
  report.Pass("admissible");

  const efce::RelevanceStructure rel(game);
  const efce::DecompositionChain derived = efce::Decompose(rel);
  efce::DecompositionChain chain = derived;
  if (!a.chain.empty()) {
    chain = efce::ParseChain(efce::ReadTextFile(a.chain));
    report.Check("chain-matches-game", chain == derived,
                 "chain file differs from the decomposition of the game");
  }
  const auto problems = efce::CheckChainInvariants(chain);
  report.Check("chain-invariants", problems.empty(),
               problems.empty() ? std::string() : problems.front());
  const long long sibling = efce::CountSiblingConnectionViolations(rel);
  report.Check("sibling-connections", sibling == 0,
               std::to_string(sibling) + " sibling infoset quadruples are doubly connected");

  if (chain.dimension() != rel.num_pairs()) {
    report.Fail("plan", "chain dimension does not match the game");
    return kExitNotMet;
  }
  const efce::CorrelationPlan plan = a.plan.empty()
                                         ? efce::ChainSample(chain, a.seed)
                                         : efce::ParsePlan(efce::ReadTextFile(a.plan),
                                                           rel.num_pairs());
  const auto plan_violations = efce::CheckPlanConstraints(rel, plan, efce::kDefaultTolerance);
  report.Check("plan-constraints", plan_violations.empty(),
               plan_violations.empty()
                   ? std::string()
                   : plan_violations.front().constraint + " off by " +
                         efce::FormatDouble(plan_violations.front().residual));
  const auto why = efce::ExplainChainMembership(chain, plan, efce::kDefaultTolerance);
  report.Check("chain-membership", !why, why.value_or(""));

  if (game.num_leaves() > a.tiny_leaves) {
    report.Skip("vertex-membership", "game too large");
    report.Skip("gap-oracle", "game too large");
  } else {
    try {
      const auto p1 = efce::oracle::PureStrategies(rel.space1(), 4096);
      const auto p2 = efce::oracle::PureStrategies(rel.space2(), 4096);
      long long bad = 0;
      for (const auto& s1 : p1) {
        for (const auto& s2 : p2) {
          if (!efce::ChainMembership(chain, efce::PureProfilePlan(rel, {s1, s2}))) ++bad;
        }
      }
      report.Check("vertex-membership", bad == 0,
                   std::to_string(bad) + " pure profiles fall outside the chain set");
    } catch (const efce::Error& e) {
      report.Skip("vertex-membership", e.what());
    }
    if (!plan_violations.empty()) {
      report.Skip("gap-oracle", "plan is infeasible");
    } else {
      const efce::TriggerIndex triggers(game, rel);
      const double fast = efce::DeviationGap(rel, triggers, plan).gap;
      const double slow = efce::oracle::BruteForceDeviationGap(game, rel, plan);
      report.Check("gap-oracle", std::abs(fast - slow) <= 1e-9,
                   "gap " + efce::FormatDouble(fast) + " vs enumeration " +
                       efce::FormatDouble(slow));
      std::cout << "gap " << efce::FormatDouble(fast) << "\n";
    }
  }
  return report.failed() ? kExitNotMet : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Extensive-form correlated equilibrium solver"};
  app.require_subcommand(1);

  GenerateArgs gen;
  auto* generate = app.add_subcommand("generate", "Write a game file");
  generate->require_subcommand(1);
  auto* battleship = generate->add_subcommand("battleship", "Battleship instance");
  battleship->add_option("--board", gen.board, "Board size WxH")->required();
  battleship->add_option("--turns", gen.turns, "Shots per player");
  battleship->add_option("--ship", gen.ship, "Ship length");
  battleship->add_option("-o,--output", gen.output, "Output file (default stdout)");
  auto* fixture = generate->add_subcommand("fixture", "Built-in example game");
  fixture->add_option("name", gen.fixture, "fig1, fig2 or leaf")->required();
  fixture->add_option("--payoff-seed", gen.payoff_seed,
                      "Replace payoffs by random integers in [-5, 5]");
  fixture->add_option("-o,--output", gen.output, "Output file (default stdout)");

  DecomposeArgs dec;
  auto* decompose = app.add_subcommand("decompose", "Build the correlation-plan chain");
  dec.source.Register(decompose);
  decompose->add_option("-o,--output", dec.output, "Chain file");

  SolveArgs sol;
  auto* solve = app.add_subcommand("solve", "Run no-regret self-play");
  sol.source.Register(solve);
  solve->add_option("--gap", sol.gap, "Stop once the deviation gap is at most this");
  solve->add_option("--budget", sol.budget, "Iteration budget");
  solve->add_option("--rm", sol.rm, "Local regret minimizer")
      ->check(CLI::IsMember({"rm", "rm_plus"}));
  solve->add_flag("--alternate,!--no-alternate", sol.alternate, "Alternating updates");
  solve->add_option("--avg", sol.avg, "Averaging of iterates")
      ->check(CLI::IsMember({"linear", "uniform"}));
  solve->add_option("--checkpoint", sol.checkpoint,
                    "Checkpoint period; 0 means powers of two "
                    "(default from EFCE_CHECKPOINT_PERIOD)");
  solve->add_option("--trace", sol.trace, "Gap trace CSV");
  solve->add_option("--plan", sol.plan, "Average correlation plan");

  VerifyArgs ver;
  auto* verify = app.add_subcommand("verify", "Check a chain and a plan against a game");
  ver.source.Register(verify);
  verify->add_option("--chain", ver.chain, "Chain file (default: decompose the game)");
  verify->add_option("--plan", ver.plan, "Plan file (default: sample from the chain)");
  verify->add_option("--seed", ver.seed, "Seed for the sampled plan");
  verify->add_option("--tiny-leaves", ver.tiny_leaves,
                     "Run the exhaustive checks on games with at most this many leaves");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (*battleship) return RunGenerateBattleship(gen);
    if (*fixture) return RunGenerateFixture(gen);
    if (*decompose) return RunDecompose(dec);
    if (*solve) return RunSolve(sol);
    if (*verify) return RunVerify(ver);
  } catch (const efce::StructuralError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvariant;
  } catch (const efce::SolverError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvariant;
  } catch (const efce::ContractError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvariant;
  } catch (const efce::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}
