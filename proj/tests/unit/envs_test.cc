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
#include <numbers>
#include <vector>

#include "doctest.h"
#include "fgelab/common/errors.h"
#include "fgelab/envs/acc.h"
#include "fgelab/envs/analysis.h"
#include "fgelab/envs/chain.h"
#include "fgelab/envs/dubins.h"
#include "fgelab/envs/registry.h"
#include "fgelab/envs/toy_levels.h"

namespace fgelab::envs {
namespace {

// Runs a fixed action sequence (repeating the last entry) until the episode
// ends. Returns true iff it ends safely.
bool RunScript(const AvoidEnvironment& env, const ParameterVector& theta,
               const std::vector<Action>& script) {
  EnvState s = env.Reset(theta);
  for (size_t k = 0;; ++k) {
    const Action& a = script[std::min(k, script.size() - 1)];
    StepOutcome o = env.Step(s, a);
    if (o.unsafe) return false;
    if (o.truncated) return true;
    s = std::move(o.next);
  }
}

// Hard spans shift into the slot, then alternate through the corridor.
std::vector<Action> ToyHardScript(const ToyLevels& env) {
  std::vector<Action> script = {Action::Discrete(ToyLevels::kLeft)};
  for (int r = 0; r < env.config().corridor_rows; ++r) {
    script.push_back(Action::Discrete(r % 2 == 0 ? ToyLevels::kStay
                                                 : ToyLevels::kLeft));
  }
  script.push_back(Action::Discrete(ToyLevels::kStay));
  return script;
}

TEST_CASE("reward is the negative indicator of h > 0") {
  CHECK(RewardOf(0.5) == -1.0);
  CHECK(RewardOf(0.0) == 0.0);
  CHECK(RewardOf(-3.2) == 0.0);
}

TEST_CASE("reset places the initial state") {
  Acc acc;
  EnvState s = acc.Reset({2.0, 1.0});
  CHECK(s.x == std::vector<double>{acc.config().p0, 1.0});
  CHECK(s.k == 0);

  ToyLevels toy;
  s = toy.Reset({3.25});
  CHECK(s.x == std::vector<double>{3.25, 20.0});

  Dubins dub;
  ParameterVector w{0.3, 0.5};
  s = dub.Reset(w);
  CHECK(s.x[0] == doctest::Approx(dub.lane_center(0)));
  CHECK(s.x[1] == 0.0);
  CHECK(dub.OtherCar(0, 0, w)[0] < 0.0);
  CHECK(dub.OtherCar(1, 0, w)[0] < 0.0);
  CHECK(std::hypot(dub.OtherCar(0, 0, w)[0], dub.OtherCar(0, 0, w)[1]) ==
        doctest::Approx(dub.lane_center(0)));
  CHECK(std::hypot(dub.OtherCar(1, 0, w)[0], dub.OtherCar(1, 0, w)[1]) ==
        doctest::Approx(dub.lane_center(1)));
  CHECK(dub.SafetyMargin(s.x, 0, w) <= 0.0);
}

TEST_CASE("reset rejects parameters outside the bounds") {
  CHECK_THROWS_AS(Acc().Reset({0.1, 1.0}), ContractViolation);
  CHECK_THROWS_AS(ToyLevels().Reset({10.5}), ContractViolation);
  CHECK_THROWS_AS(ChainMdp::Single(4).Reset({2.0}), ContractViolation);
}

TEST_CASE("step semantics") {
  SUBCASE("chain") {
    ChainMdp chain = ChainMdp::Single(5);
    EnvState s = chain.Reset({1.0});
    StepOutcome r = chain.Step(s, Action::Discrete(ChainMdp::kRight));
    CHECK(r.next.x[0] == 2.0);
    CHECK_FALSE(r.unsafe);
    StepOutcome l = chain.Step(s, Action::Discrete(ChainMdp::kLeft));
    CHECK(l.unsafe);
    CHECK(RewardOf(l.h_value) == -1.0);
  }
  SUBCASE("acc braking lowers the closing speed by a_max dt") {
    Acc acc;
    EnvState s = acc.Reset({2.0, 1.0});
    StepOutcome o = acc.Step(s, Action::Box({-1.0}));
    CHECK(o.next.x[1] == doctest::Approx(1.0 - 2.0 * acc.config().dt));
    CHECK(o.next.k == 1);
    CHECK(o.unsafe == (o.h_value > 0.0));
  }
  SUBCASE("toy levels disturbance pushes right without a shift") {
    ToyLevels toy;
    EnvState s = toy.Reset({9.9995});
    s.x = {9.4995, 18.0};
    StepOutcome o = toy.Step(s, Action::Discrete(ToyLevels::kStay));
    CHECK(o.next.x[0] == doctest::Approx(9.4995 + toy.config().disturbance));
    CHECK(o.next.x[1] == 17.0);
  }
  SUBCASE("wrong action shape is a contract violation") {
    Acc acc;
    CHECK_THROWS_AS(acc.Step(acc.Reset({2.0, 1.0}), Action::Box({})),
                    ContractViolation);
    ToyLevels toy;
    CHECK_THROWS_AS(toy.Step(toy.Reset({1.0}), Action::Discrete(3)),
                    ContractViolation);
  }
  SUBCASE("truncation at the horizon") {
    Acc acc(AccConfig{.horizon = 3});
    EnvState s = acc.Reset({2.0, -1.0});
    StepOutcome o;
    for (int k = 0; k < 3; ++k) {
      o = acc.Step(s, Action::Box({0.0}));
      s = o.next;
    }
    CHECK(o.truncated);
    CHECK_FALSE(o.reached_goal);
  }
}

TEST_CASE("identical parameter and actions give bit-identical trajectories") {
  Dubins dub;
  auto roll = [&] {
    EnvState s = dub.Reset({0.2, 0.7});
    std::vector<double> trace;
    for (int k = 0; k < 50; ++k) {
      StepOutcome o = dub.Step(s, Action::Box({0.54, 0.1 * (k % 3 - 1)}));
      trace.insert(trace.end(), o.next.x.begin(), o.next.x.end());
      trace.push_back(o.h_value);
      s = o.next;
    }
    return trace;
  };
  CHECK(roll() == roll());
}

TEST_CASE("acc feasibility oracle") {
  Acc acc;
  CHECK(AccFeasibilityOracle(acc, {0.5, 0.0}));
  CHECK(AccFeasibilityOracle(acc, {0.5, -5.0}));
  CHECK_FALSE(AccFeasibilityOracle(acc, {0.5, 10.0}));

  SUBCASE("monotone in a_max and dv0") {
    const int n = 24;
    auto at = [&](int i, int j) {
      double a = acc.bounds().lo[0] + acc.bounds().Width()[0] * i / (n - 1);
      double v = acc.bounds().lo[1] + acc.bounds().Width()[1] * j / (n - 1);
      return AccFeasibilityOracle(acc, {a, v});
    };
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (!at(i, j)) continue;
        if (i + 1 < n) CHECK(at(i + 1, j));
        if (j > 0) CHECK(at(i, j - 1));
      }
    }
  }

  SUBCASE("agrees with exhaustive search at a short horizon") {
    Acc shortacc(AccConfig{.dt = 0.5, .horizon = 10});
    int feasible = 0;
    for (int i = 0; i < 6; ++i) {
      for (int j = 0; j < 6; ++j) {
        ParameterVector th{0.5 + 4.5 * i / 5.0, -5.0 + 15.0 * j / 5.0};
        BruteForceValues bf = ComputeBruteForceValues(shortacc, th, 10);
        bool oracle = AccFeasibilityOracle(shortacc, th);
        CHECK(oracle == (bf.v_reach <= 0.0));
        feasible += oracle;
      }
    }
    CHECK(feasible > 0);
    CHECK(feasible < 36);
  }
}

TEST_CASE("chain gradient statistics") {
  ChainGradStats s = ComputeChainGradStats(2, 0.5, 0.99);
  CHECK(ChainGradSample(1, 2, 0.5, 0.99) == doctest::Approx(2.0));
  CHECK(s.mean == doctest::Approx(1.0));
  CHECK(s.variance == doctest::Approx(1.0));
  CHECK(s.truncated_variance == doctest::Approx(0.5));
  // Immediate termination dominates as pi -> 0 only when H = 2; for longer
  // chains the T = 2 term contributes -gamma in the limit.
  CHECK(ComputeChainGradStats(2, 1e-9, 0.99).mean == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(ComputeChainGradStats(10, 1e-9, 0.99).mean == doctest::Approx(0.01).epsilon(1e-5));
  CHECK(ComputeChainGradStats(6, 0.3, 1.0).mean ==
        doctest::Approx(ComputeChainGradStats(6, 0.3, 1.0 - 1e-12).mean).epsilon(1e-6));
  double prev = -1.0;
  for (int h : {2, 5, 10, 20, 50, 100}) {
    double v = ComputeChainGradStats(h, 0.5, 0.99).variance;
    CHECK(v > prev);
    prev = v;
  }
  // Non-decreasing from H = 3 on; H = 2 -> 3 dips from 1 to 0.990075.
  CHECK(ComputeChainGradStats(3, 0.5, 0.99).variance == doctest::Approx(0.990075));
  prev = 0.0;
  for (int h = 3; h <= 100; ++h) {
    double v = ComputeChainGradStats(h, 0.5, 0.99).variance;
    CHECK(v >= prev);
    prev = v;
  }
  CHECK_THROWS_AS(ComputeChainGradStats(1, 0.5, 0.99), ContractViolation);
}

TEST_CASE("brute force values") {
  SUBCASE("chain with a safe sequence") {
    ChainMdp chain = ChainMdp::Single(6);
    BruteForceValues v = ComputeBruteForceValues(chain, {1.0}, 12);
    CHECK(v.v_reach <= 0.0);
    CHECK(v.v_sum == 0.0);
  }
  SUBCASE("infeasible toy levels column") {
    ToyLevels toy;
    BruteForceValues v = ComputeBruteForceValues(toy, {9.5}, 12);
    CHECK(v.v_reach > 0.0);
    CHECK(v.v_sum < 0.0);
  }
  SUBCASE("reach and sum values agree over a parameter grid") {
    Acc acc(AccConfig{.dt = 0.5, .horizon = 10});
    for (int i = 0; i < 8; ++i) {
      for (int j = 0; j < 8; ++j) {
        ParameterVector th{0.5 + 4.5 * i / 7.0, -5.0 + 15.0 * j / 7.0};
        BruteForceValues v = ComputeBruteForceValues(acc, th, 10);
        CHECK((v.v_reach <= 0.0) == (v.v_sum == 0.0));
      }
    }
  }
  SUBCASE("too many actions are refused") {
    CHECK_THROWS_AS(ComputeBruteForceValues(Dubins(), {0.2, 0.2}, 4),
                    ContractViolation);
  }
}

TEST_CASE("toy levels geometry") {
  ToyLevels toy;
  const auto stay = Action::Discrete(ToyLevels::kStay);
  const auto left = Action::Discrete(ToyLevels::kLeft);
  const auto right = Action::Discrete(ToyLevels::kRight);
  for (double x0 = 0.0; x0 < 8.0; x0 += 0.37) CHECK(RunScript(toy, {x0}, {stay}));
  for (double x0 = 8.0; x0 < 8.999; x0 += 0.13) {
    CHECK(RunScript(toy, {x0}, {left, stay}));
    CHECK_FALSE(RunScript(toy, {x0}, {stay}));
  }
  CHECK(RunScript(toy, {8.9995}, {left, stay}));
  for (double x0 : {9.999, 9.9995, 10.0}) {
    CHECK(toy.RegionOf(x0) == ToyLevels::Region::kHard);
    CHECK(RunScript(toy, {x0}, ToyHardScript(toy)));
    CHECK(RunScript(toy, {x0}, {left, stay}));
    CHECK(RunScript(toy, {x0}, {stay, left, stay}));
    CHECK_FALSE(RunScript(toy, {x0}, {stay}));
    CHECK_FALSE(RunScript(toy, {x0}, {left}));
    CHECK_FALSE(RunScript(toy, {x0}, {right}));
  }
  // Infeasible columns survive the first row but no sequence gets out.
  for (double x0 : {9.0001, 9.2, 9.5, 9.9, 9.9989}) {
    CHECK(toy.RegionOf(x0) == ToyLevels::Region::kInfeasible);
    CHECK_FALSE(toy.Step(toy.Reset({x0}), stay).unsafe);
    CHECK(ComputeBruteForceValues(toy, {x0}, 12).v_reach > 0.0);
  }
  CHECK(ComputeBruteForceValues(toy, {9.9995}, 12).v_reach <= 0.0);
}

TEST_CASE("toy levels base sampler span proportions") {
  ToyLevels toy;
  Rng rng(123, streams::kResetTheta);
  const int n = 1000000;
  int counts[3] = {0, 0, 0};
  for (int i = 0; i < n; ++i) {
    double x = toy.SampleBase(rng)[0];
    REQUIRE(toy.bounds().Contains(std::vector<double>{x}));
    counts[static_cast<int>(toy.RegionOf(x))]++;
  }
  const double expected[3] = {0.9, 0.0999, 0.0001};
  for (int r = 0; r < 3; ++r) {
    double p = expected[r];
    double se = std::sqrt(p * (1.0 - p) / n);
    CHECK(std::abs(counts[r] / static_cast<double>(n) - p) <= 3.0 * se);
  }
}

TEST_CASE("registry overrides constants and rejects unknown keys") {
  auto env = MakeEnvironment("acc", {{"dt", 0.2}, {"horizon", 50}});
  CHECK(env->horizon() == 50);
  CHECK(dynamic_cast<Acc&>(*env).config().dt == 0.2);
  CHECK_THROWS_AS(MakeEnvironment("acc", {{"bogus", 1.0}}), ContractViolation);
  CHECK_THROWS_AS(MakeEnvironment("nope"), ContractViolation);
  auto chain = MakeEnvironment("chain", {{"lengths", {3, 5, 7}}});
  CHECK(chain->bounds().hi[0] == 3.0);
  CHECK(dynamic_cast<ChainMdp&>(*chain).ChainLength({2.0}) == 5);
  for (const char* id : {"chain", "acc", "toy_levels", "dubins"}) {
    CHECK(MakeEnvironment(id, DefaultConstants(id))->name() == id);
  }
}

TEST_CASE("observation is the concatenation of state and parameter") {
  Acc acc;
  EnvState s = acc.Reset({2.0, 1.0});
  CHECK(acc.Observation(s) == std::vector<double>{10.0, 1.0, 2.0, 1.0});
  Dubins dub;
  CHECK(dub.Observation(dub.Reset({0.2, 0.3})).size() == 10);
  auto [c, sc] = dub.ObservationScaling();
  CHECK(c.size() == 10);
  CHECK(sc.size() == 10);
}

}  // namespace
}  // namespace fgelab::envs
