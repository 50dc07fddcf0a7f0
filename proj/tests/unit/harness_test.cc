// Copyright 2026 The fgelab Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <unistd.h>

#include "doctest.h"
#include "fgelab/common/errors.h"
#include "fgelab/envs/acc.h"
#include "fgelab/envs/toy_levels.h"
#include "fgelab/harness/config.h"
#include "fgelab/harness/evaluate.h"
#include "fgelab/harness/experiment.h"
#include "fgelab/harness/metrics.h"

namespace fgelab::harness {
namespace {

namespace fs = std::filesystem;
using envs::Action;
using envs::ParameterVector;

Mask M(std::initializer_list<int> bits) {
  Mask m;
  for (int b : bits) m.push_back(b != 0);
  return m;
}

ActionFn Constant(Action a) {
  return [a](const envs::EnvState&) { return a; };
}

fs::path TempDir(const std::string& name) {
  fs::path p = fs::temp_directory_path() /
               ("fgelab_harness_" + std::to_string(::getpid())) / name;
  fs::remove_all(p);
  return p;
}

std::string Slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

TEST_CASE("safety rate") {
  CHECK(SafetyRate(M({1, 0, 1, 0}), M({1, 1, 1, 0})) == doctest::Approx(2.0 / 3));
  CHECK(SafetyRate(M({1, 1, 0}), M({1, 1, 0})) == 1.0);
  CHECK(SafetyRate(M({0, 0, 0}), M({1, 1, 0})) == 0.0);
  CHECK(IsUndefined(SafetyRate(M({0, 0}), M({0, 0}))));
  CHECK_THROWS_AS(SafetyRate(M({1}), M({1, 1})), ContractViolation);
}

TEST_CASE("coverage gain") {
  Mask any = M({1, 1, 1, 1});
  Mask dr = M({1, 0, 0, 1});
  CHECK(CoverageGain(M({1, 1, 1, 1}), dr, any) == 1.0);
  CHECK(CoverageGain(M({1, 0, 0, 1}), dr, any) == 0.0);
  CHECK(CoverageGain(M({1, 1, 0, 1}), dr, any) == doctest::Approx(0.5));
  CHECK(IsUndefined(CoverageGain(M({1, 1}), M({1, 1}), M({1, 1}))));
}

TEST_CASE("coverage loss") {
  CHECK(CoverageLoss(M({1, 1, 1}), M({1, 1, 0})) == 0.0);
  CHECK(CoverageLoss(M({0, 0, 0}), M({1, 0, 1})) == 1.0);
  CHECK(CoverageLoss(M({1, 0, 0}), M({1, 1, 0})) == doctest::Approx(0.5));
  CHECK(IsUndefined(CoverageLoss(M({1, 0}), M({0, 0}))));
}

TEST_CASE("unique coverage") {
  SUBCASE("dominating method takes everything") {
    auto u = UniqueCoverage({M({1, 1, 1, 0}), M({1, 0, 0, 0})});
    CHECK(u[0] == 1.0);
    CHECK(u[1] == 0.0);
  }
  SUBCASE("identical methods share nothing") {
    auto u = UniqueCoverage({M({1, 0, 1}), M({1, 0, 1}), M({1, 0, 1})});
    for (double v : u) CHECK(v == 0.0);
  }
  SUBCASE("disjoint singletons split evenly") {
    auto u = UniqueCoverage({M({1, 0, 0, 1}), M({0, 1, 0, 1}), M({0, 0, 1, 1})});
    for (double v : u) CHECK(v == doctest::Approx(1.0 / 3));
  }
  CHECK_THROWS_AS(UniqueCoverage({M({1})}), ContractViolation);
}

TEST_CASE("metric invariants") {
  Rng rng(21, 0);
  for (int trial = 0; trial < 200; ++trial) {
    const size_t n = 1 + rng.Below(30);
    std::vector<Mask> methods(3, Mask(n));
    for (auto& m : methods) {
      for (size_t i = 0; i < n; ++i) m[i] = rng.Bernoulli(0.5);
    }
    Mask any = Union(methods);
    Mask dr = methods[0];
    for (const Mask& m : methods) {
      for (double v : {SafetyRate(m, any), CoverageGain(m, dr, any),
                       CoverageLoss(m, dr)}) {
        CHECK((IsUndefined(v) || (v >= 0.0 && v <= 1.0)));
      }
    }
    double gain = CoverageGain(dr, dr, any);
    CHECK((IsUndefined(gain) || gain == 0.0));
    double loss = CoverageLoss(dr, dr);
    CHECK((IsUndefined(loss) || loss == 0.0));
    // Reversing the point order changes nothing.
    auto rev = [](Mask m) { return Mask(m.rbegin(), m.rend()); };
    double a = SafetyRate(methods[1], any);
    double b = SafetyRate(rev(methods[1]), rev(any));
    CHECK((a == b || (IsUndefined(a) && IsUndefined(b))));
    a = CoverageGain(methods[2], dr, any);
    b = CoverageGain(rev(methods[2]), rev(dr), rev(any));
    CHECK((a == b || (IsUndefined(a) && IsUndefined(b))));
    auto u = UniqueCoverage(methods);
    double total = u[0] + u[1] + u[2];
    CHECK((total == 0.0 || std::abs(total - 1.0) < 1e-12));
  }
}

TEST_CASE("interquartile mean and quantiles") {
  CHECK(InterquartileMean({0.0, 0.5, 1.0}) == doctest::Approx(0.5));
  CHECK(InterquartileMean({9.0, 1.0, 2.0, 3.0, 4.0, 5.0, 6.0, -100.0}) ==
        doctest::Approx(3.5));
  CHECK(InterquartileMean({2.0, kUndefined}) == 2.0);
  CHECK(IsUndefined(InterquartileMean({})));
  CHECK(Quantile({0.0, 1.0, 2.0}, 0.25) == doctest::Approx(0.5));
  CHECK(Quantile({0.0, 1.0, 2.0}, 0.75) == doctest::Approx(1.5));
  CHECK(Quantile({3.0}, 0.25) == 3.0);
}

TEST_CASE("evaluation rollouts") {
  envs::ToyLevels toy;
  auto grid = LatticeGrid(toy.bounds(), 64);
  REQUIRE(grid.size() == 64);
  CHECK(grid.front()[0] == 0.0);
  CHECK(grid.back()[0] == 10.0);

  SUBCASE("always-unsafe controller") {
    Mask m = Evaluate(Constant(Action::Discrete(envs::ToyLevels::kRight)), toy,
                      grid);
    for (bool b : m) CHECK_FALSE(b);
  }
  SUBCASE("full braking is safe on the oracle-feasible set") {
    envs::Acc acc;
    auto g = LatticeGrid(acc.bounds(), 16);
    std::vector<ParameterVector> feasible;
    for (const auto& t : g) {
      if (envs::AccFeasibilityOracle(acc, t)) feasible.push_back(t);
    }
    REQUIRE(feasible.size() > 10);
    Mask m = Evaluate(Constant(Action::Box({-1.0})), acc, feasible);
    for (bool b : m) CHECK(b);
  }
  SUBCASE("repeated evaluation is identical") {
    Rng init(1, 0);
    rl::Policy pol(toy, rl::NetworkSpec{}, init);
    ActionFn act = GreedyPolicy(pol, toy);
    CHECK(Evaluate(act, toy, grid) == Evaluate(act, toy, grid));
  }
  SUBCASE("points outside the bounds are rejected") {
    CHECK_THROWS_AS(Evaluate(Constant(Action::Discrete(0)), toy, {{11.0}}),
                    ContractViolation);
  }
}

TEST_CASE("evaluation grids") {
  envs::ToyLevels toy;
  GridSpec spec;
  CHECK(EvaluationGrid(toy, spec).size() == 512);
  envs::Acc acc;
  CHECK(EvaluationGrid(acc, spec).size() == 64 * 64);
  auto hard = HardRegionGrid(toy, 32);
  REQUIRE(hard.size() == 32);
  for (const auto& t : hard) {
    CHECK(toy.RegionOf(t[0]) == envs::ToyLevels::Region::kHard);
  }
  CHECK(HardRegionGrid(acc, 32).empty());
  spec.sampled = 100;
  auto sampled = EvaluationGrid(toy, spec);
  CHECK(sampled.size() == 100);
  CHECK(sampled == EvaluationGrid(toy, spec));
}

TEST_CASE("experiment config") {
  using nlohmann::json;
  SUBCASE("defaults parse and round trip") {
    ExperimentConfig c = ParseExperimentConfig(json::object());
    json j = ToJson(c);
    CHECK(ToJson(ParseExperimentConfig(j)) == j);
  }
  SUBCASE("values reach the trainer") {
    json j = {{"env", "acc"},
              {"methods", {"fge"}},
              {"seeds", {4}},
              {"budget", {{"iterations", 7}, {"n_envs", 32}}},
              {"fge", {{"beta", 0.3}}},
              {"network", {{"activation", "relu"}}}};
    ExperimentConfig c = ParseExperimentConfig(j);
    CHECK(c.env == "acc");
    CHECK(c.iterations == 7);
    CHECK(c.trainer.ppo.n_envs == 32);
    CHECK(c.trainer.fge.beta == 0.3);
    CHECK(c.trainer.network.activation == nn::Activation::kRelu);
    CHECK(c.seeds == std::vector<int>{4});
  }
  SUBCASE("unknown and mistyped keys are rejected") {
    CHECK_THROWS_AS(ParseExperimentConfig({{"colour", 1}}), ContractViolation);
    CHECK_THROWS_AS(ParseExperimentConfig({{"fge", {{"gamma", 1}}}}),
                    ContractViolation);
    CHECK_THROWS_AS(ParseExperimentConfig({{"seeds", "0"}}), ContractViolation);
    CHECK_THROWS_AS(ParseExperimentConfig({{"methods", {"ppo"}}}),
                    ContractViolation);
    CHECK_THROWS_AS(ParseExperimentConfig({{"env_constants", {{"nope", 1}}}}),
                    ContractViolation);
    CHECK_THROWS_AS(ParseExperimentConfig({{"fge", {{"beta", 1.5}}}}),
                    ContractViolation);
  }
}

// "fge" stays put, "dr" always drifts right into the wall.
ActionFn StubController(const std::string& method) {
  return Constant(Action::Discrete(method == "fge" ? envs::ToyLevels::kStay
                                                   : envs::ToyLevels::kRight));
}

ExperimentConfig StubConfig(const std::string& name) {
  ExperimentConfig c;
  c.methods = {"fge", "dr"};
  c.seeds = {0, 1};
  c.output_dir = TempDir(name).string();
  return c;
}

TEST_CASE("run_experiment with stub controllers") {
  ExperimentConfig cfg = StubConfig("stub");
  CellTrainer stub = [](const ExperimentConfig&, const envs::AvoidEnvironment&,
                        const std::string& method, int,
                        const fs::path&) { return StubController(method); };
  ExperimentResult r = RunExperiment(cfg, stub);
  REQUIRE(r.matrix.cells.size() == 4);
  REQUIRE(r.report.rows.size() == 4);

  // Staying is safe exactly left of the corridor wall.
  long long stay_safe = 0;
  for (const auto& t : r.matrix.grid) {
    stay_safe += t[0] < 8.0 ? 1 : 0;
  }
  long long counted = 0;
  for (bool b : r.matrix.cells[0].safe) counted += b ? 1 : 0;
  CHECK(counted == stay_safe);

  for (const auto& row : r.report.rows) {
    if (row.method == "fge") {
      CHECK(row.safety_rate == 1.0);
      CHECK(row.coverage_gain == 1.0);
    } else {
      CHECK(row.safety_rate == 0.0);
      CHECK(row.coverage_gain == 0.0);
    }
    CHECK(IsUndefined(row.coverage_loss));
    CHECK(row.hard_safety_rate == 0.0);
  }
  REQUIRE(r.report.unique_coverage.size() == 2);
  CHECK(r.report.unique_coverage[0].second == 1.0);
  CHECK(r.report.unique_coverage[1].second == 0.0);
  CHECK(r.report.Find("fge", "safety_rate")->iqm == 1.0);
  CHECK(r.report.Find("fge", "safety_rate")->n == 2);

  fs::path dir = cfg.output_dir;
  for (const char* f : {"config.json", "grid.csv", "cells.csv",
                        "safety_matrix.csv", "safety_matrix.json",
                        "metrics.csv", "summary.csv", "summary.json",
                        "unique_coverage.csv"}) {
    CHECK(fs::exists(dir / f));
  }
  SafetyMatrix loaded = LoadSafetyMatrix(dir);
  CHECK(loaded.grid == r.matrix.grid);
  CHECK(loaded.cells.size() == 4);
  CHECK(loaded.cells[2].safe == r.matrix.cells[2].safe);

  // Same configuration, same summary.
  std::string first = Slurp(dir / "summary.json");
  RunExperiment(cfg, stub);
  CHECK(Slurp(dir / "summary.json") == first);
}

TEST_CASE("a failing cell is isolated") {
  ExperimentConfig cfg = StubConfig("failing");
  CellTrainer flaky = [](const ExperimentConfig&, const envs::AvoidEnvironment&,
                         const std::string& method, int seed,
                         const fs::path&) -> ActionFn {
    if (method == "dr" && seed == 1) throw NumericError("loss is NaN");
    return StubController(method);
  };
  ExperimentResult r = RunExperiment(cfg, flaky);
  REQUIRE(r.matrix.cells.size() == 4);
  CHECK_FALSE(r.matrix.cells[3].ok);
  CHECK(r.report.rows.size() == 3);
  REQUIRE(r.report.failures.size() == 1);
  CHECK(r.report.failures[0].find("loss is NaN") != std::string::npos);
  CHECK(r.report.Find("dr", "safety_rate")->n == 1);
}

TEST_CASE("merging runs") {
  SafetyMatrix a, b;
  a.grid = b.grid = {{0.0}, {1.0}};
  a.cells.push_back({"fge", 0, true, "", M({1, 0}), {}, 0.0});
  b.cells.push_back({"dr", 0, true, "", M({0, 1}), {}, 0.0});
  SafetyMatrix m = MergeMatrices({a, b});
  CHECK(m.cells.size() == 2);
  CHECK_THROWS_AS(MergeMatrices({a, a}), ContractViolation);
  b.grid = {{0.0}};
  b.cells[0].safe = M({0});
  CHECK_THROWS_AS(MergeMatrices({a, b}), ContractViolation);
}

TEST_CASE("trained run directory re-evaluates to the same matrix") {
  ExperimentConfig cfg = StubConfig("trained");
  cfg.methods = {"fge"};
  cfg.seeds = {0};
  cfg.iterations = 2;
  cfg.trainer.ppo.n_envs = 8;
  cfg.trainer.ppo.rollout_length = 10;
  cfg.trainer.ppo.minibatch_size = 40;
  cfg.trainer.network.hidden = {8};
  cfg.trainer.fge.classifier_samples = 64;
  ExperimentResult trained = RunExperiment(cfg, DefaultCellTrainer());
  REQUIRE(trained.matrix.cells[0].ok);
  CHECK(fs::exists(CellDir(cfg.output_dir, "fge", 0) / "policy.json"));
  ExperimentResult again = EvaluateRunDir(cfg.output_dir);
  CHECK(again.matrix.cells[0].safe == trained.matrix.cells[0].safe);
  CHECK(again.matrix.cells[0].hard == trained.matrix.cells[0].hard);
}

}  // namespace
}  // namespace fgelab::harness
