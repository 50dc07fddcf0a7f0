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

#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "fgelab/common/errors.h"
#include "fgelab/envs/analysis.h"
#include "fgelab/envs/chain.h"
#include "fgelab/envs/toy_levels.h"
#include "fgelab/rl/policy.h"
#include "fgelab/rl/ppo.h"
#include "fgelab/rl/reinforce.h"
#include "fgelab/rl/rollout.h"
#include "support/gae_oracle.h"

namespace fgelab::rl {
namespace {

NetworkSpec SmallNet() { return NetworkSpec{{16, 16}, nn::Activation::kTanh, -0.5}; }

// Makes a categorical policy deterministic in practice by biasing one action.
Policy BiasedPolicy(const envs::AvoidEnvironment& env, int action) {
  Rng rng(1, streams::kInit);
  Policy p(env, SmallNet(), rng);
  auto& params = p.mutable_params();
  for (double& w : params.weights(params.num_layers() - 1)) w = 0.0;
  params.bias(params.num_layers() - 1)[action] = 50.0;
  return p;
}

ResetFn UniformReset(double lo, double hi, uint64_t seed) {
  auto rng = std::make_shared<Rng>(seed, streams::kResetTheta);
  return [rng, lo, hi] { return envs::ParameterVector{rng->Uniform(lo, hi)}; };
}

TEST_CASE("collect with a safe policy on easy parameters") {
  envs::ToyLevels toy;
  Policy stay = BiasedPolicy(toy, envs::ToyLevels::kStay);
  Rng rng(2, 0);
  ValueFunction v(toy, SmallNet(), rng);
  RolloutCollector col(toy, 8, 7);
  RolloutBatch b = col.Collect(stay, v, UniformReset(0.0, 7.5, 3), 45);
  REQUIRE(!b.episodes.empty());
  for (const auto& ep : b.episodes) {
    CHECK(ep.safe);
    CHECK(ep.length == toy.horizon());
  }
  CHECK(std::all_of(b.rewards.begin(), b.rewards.end(), [](double r) { return r == 0.0; }));
  CHECK(b.SafetyRate() == 1.0);
}

TEST_CASE("chain policy that always steps left") {
  envs::ChainMdp chain = envs::ChainMdp::Single(6);
  Policy left = BiasedPolicy(chain, envs::ChainMdp::kLeft);
  Rng rng(2, 0);
  ValueFunction v(chain, SmallNet(), rng);
  RolloutCollector col(chain, 4, 1);
  RolloutBatch b = col.Collect(left, v, [] { return envs::ParameterVector{1.0}; }, 10);
  CHECK(b.episodes.size() == 40);
  for (const auto& ep : b.episodes) {
    CHECK(ep.length == 1);
    CHECK_FALSE(ep.safe);
  }
  CHECK(std::all_of(b.rewards.begin(), b.rewards.end(), [](double r) { return r == -1.0; }));
}

TEST_CASE("collect is deterministic and rewards only end episodes") {
  envs::ToyLevels toy;
  auto run = [&] {
    Rng rng(5, streams::kInit);
    Policy p(toy, SmallNet(), rng);
    ValueFunction v(toy, SmallNet(), rng);
    RolloutCollector col(toy, 16, 99);
    col.Collect(p, v, UniformReset(0.0, 10.0, 4), 30);
    return col.Collect(p, v, UniformReset(0.0, 10.0, 5), 30);
  };
  RolloutBatch a = run();
  RolloutBatch b = run();
  CHECK(std::equal(a.actions.data().begin(), a.actions.data().end(), b.actions.data().begin()));
  CHECK(a.rewards == b.rewards);
  CHECK(a.log_probs == b.log_probs);
  CHECK(a.episodes.size() == b.episodes.size());
  for (size_t i = 0; i < a.size(); ++i) {
    if (a.rewards[i] == -1.0) CHECK(a.dones[i]);
    if (a.dones[i]) CHECK(a.rewards[i] == -1.0);
  }
}

RolloutBatch TinyBatch(int n_envs, int n_steps) {
  RolloutBatch b;
  b.n_envs = n_envs;
  b.n_steps = n_steps;
  size_t n = static_cast<size_t>(n_envs) * n_steps;
  b.rewards.assign(n, 0.0);
  b.values.assign(n, 0.0);
  b.dones.assign(n, 0);
  b.truncated.assign(n, 0);
  b.bootstrap.assign(n, 0.0);
  b.last_values.assign(n_envs, 0.0);
  return b;
}

TEST_CASE("gae") {
  SUBCASE("all zero") {
    RolloutBatch b = TinyBatch(3, 5);
    Advantages a = ComputeGae(b, 0.99, 0.95);
    CHECK(std::all_of(a.advantages.begin(), a.advantages.end(), [](double x) { return x == 0.0; }));
  }
  SUBCASE("single-step unsafe episode") {
    RolloutBatch b = TinyBatch(1, 1);
    b.rewards[0] = -1.0;
    b.dones[0] = 1;
    b.last_values[0] = 123.0;
    CHECK(ComputeGae(b, 0.99, 0.95).advantages[0] == -1.0);
  }
  SUBCASE("random batches match forward sums") {
    Rng rng(77, 0);
    for (int trial = 0; trial < 20; ++trial) {
      RolloutBatch b = TinyBatch(4, 12);
      for (size_t i = 0; i < b.size(); ++i) {
        b.values[i] = rng.Uniform(-1.0, 0.0);
        double u = rng.Uniform();
        if (u < 0.1) {
          b.dones[i] = 1;
          b.rewards[i] = -1.0;
        } else if (u < 0.2) {
          b.truncated[i] = 1;
          b.bootstrap[i] = rng.Uniform(-1.0, 0.0);
        }
      }
      for (double& v : b.last_values) v = rng.Uniform(-1.0, 0.0);
      Advantages a = ComputeGae(b, 0.97, 0.9);
      auto oracle = testing::GaeByForwardSums(b, 0.97, 0.9);
      for (size_t i = 0; i < b.size(); ++i) {
        CHECK(a.advantages[i] == doctest::Approx(oracle[i]).epsilon(1e-12));
        CHECK(a.returns[i] == doctest::Approx(oracle[i] + b.values[i]).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("ppo update properties") {
  envs::ToyLevels toy;
  Rng rng(8, streams::kInit);
  PpoConfig cfg;
  cfg.n_envs = 16;
  RolloutCollector col(toy, cfg.n_envs, 3);
  ActorCritic ac(Policy(toy, SmallNet(), rng), ValueFunction(toy, SmallNet(), rng), cfg);
  RolloutBatch b = col.Collect(ac.policy, ac.value, UniformReset(0.0, 10.0, 1), 20);

  SUBCASE("zero advantages and no entropy bonus leave the policy unchanged") {
    cfg.entropy_coef = 0.0;
    Advantages zero{std::vector<double>(b.size(), 0.0), std::vector<double>(b.size(), 0.0)};
    auto before = std::vector<double>(ac.policy.params().values().begin(),
                                      ac.policy.params().values().end());
    Rng mb(1, streams::kMinibatch);
    PpoUpdate(ac, b, zero, cfg, mb);
    CHECK(std::equal(before.begin(), before.end(), ac.policy.params().values().begin()));
  }

  SUBCASE("positive advantage on one action raises its probability") {
    cfg.entropy_coef = 0.0;
    cfg.epochs = 1;
    Advantages adv{std::vector<double>(b.size()), std::vector<double>(b.size(), 0.0)};
    for (size_t i = 0; i < b.size(); ++i) {
      adv.advantages[i] = b.actions(i, 0) == static_cast<double>(envs::ToyLevels::kLeft) ? 1.0 : -1.0;
    }
    auto prob_left = [&] {
      Matrix obs(1, b.obs.cols());
      auto row = b.obs.Row(0);
      std::copy(row.begin(), row.end(), obs.Row(0).begin());
      nn::ForwardCache cache;
      const Matrix& raw = ac.policy.Raw(obs, cache);
      double a = envs::ToyLevels::kLeft;
      return std::exp(ac.policy.LogProb(raw.Row(0), std::span<const double>(&a, 1)));
    };
    double p0 = prob_left();
    Rng mb(1, streams::kMinibatch);
    PpoUpdate(ac, b, adv, cfg, mb);
    CHECK(prob_left() > p0);
  }

  SUBCASE("non-finite returns abort") {
    Advantages bad{std::vector<double>(b.size(), 0.5), std::vector<double>(b.size(), NAN)};
    Rng mb(1, streams::kMinibatch);
    CHECK_THROWS_AS(PpoUpdate(ac, b, bad, cfg, mb), NumericError);
  }
}

TEST_CASE("advantage normalization preserves the argmax") {
  std::vector<double> a = {-0.3, 2.0, 0.1, -5.0};
  double mean = 0.0;
  for (double x : a) mean += x / a.size();
  auto arg = std::max_element(a.begin(), a.end()) - a.begin();
  std::vector<double> z;
  for (double x : a) z.push_back((x - mean) / 1.7);
  CHECK(std::max_element(z.begin(), z.end()) - z.begin() == arg);
}

TEST_CASE("ppo learns the easy toy levels region") {
  envs::ToyLevels toy;
  PpoConfig cfg;
  cfg.n_envs = 64;
  cfg.rollout_length = 20;
  Rng init(3, streams::kInit);
  NetworkSpec spec{{32, 32}, nn::Activation::kTanh, -0.5};
  ActorCritic ac(Policy(toy, spec, init), ValueFunction(toy, spec, init), cfg);
  RolloutCollector col(toy, cfg.n_envs, 3);
  Rng mb(3, streams::kMinibatch);
  auto reset = UniformReset(0.0, 9.0, 3);
  double rate = 0.0;
  for (int it = 0; it < 60; ++it) {
    RolloutBatch b = col.Collect(ac.policy, ac.value, reset, cfg.rollout_length);
    Advantages adv = ComputeGae(b, cfg.gamma, cfg.lambda);
    PpoUpdate(ac, b, adv, cfg, mb);
    rate = b.SafetyRate();
  }
  // Greedy evaluation over the easy span.
  int safe = 0, total = 0;
  for (double x0 = 0.0; x0 <= 9.0; x0 += 9.0 / 63.0, ++total) {
    envs::EnvState s = toy.Reset({x0});
    for (;;) {
      Matrix obs(1, toy.observation_dim());
      toy.BuildObservation(s, obs.Row(0));
      nn::ForwardCache cache;
      const Matrix& raw = ac.policy.Raw(obs, cache);
      double a;
      ac.policy.Mode(raw.Row(0), std::span<double>(&a, 1));
      envs::StepOutcome o = toy.Step(s, ac.policy.ToEnvAction(std::span<const double>(&a, 1)));
      if (o.unsafe) break;
      if (o.truncated) {
        ++safe;
        break;
      }
      s = o.next;
    }
  }
  MESSAGE("last training safety rate ", rate);
  CHECK(static_cast<double>(safe) / total >= 0.95);
}

TEST_CASE("REINFORCE Monte-Carlo matches the closed form") {
  for (int h : {2, 5, 10, 50}) {
    envs::ChainMdp chain = envs::ChainMdp::Single(h);
    Rng rng(h, 0);
    McGradEstimate est = ReinforceMcGrad(chain, 0.5, 0.99, 100000, rng);
    envs::ChainGradStats exact = envs::ComputeChainGradStats(h, 0.5, 0.99);
    CHECK(std::abs(est.mean - exact.mean) <= 3.0 * est.standard_error);
    // Standard error of the unbiased sample variance:
    // Var[s^2] = (m4 - sigma^4 (n - 3) / (n - 1)) / n.
    double m4 = 0.0;
    for (int t = 1; t <= h; ++t) {
      double d = envs::ChainGradSample(t, h, 0.5, 0.99) - exact.mean;
      m4 += envs::ChainTerminationProb(t, h, 0.5) * d * d * d * d;
    }
    double n = est.n;
    double s4 = exact.variance * exact.variance;
    double se_var = std::sqrt((m4 - s4 * (n - 3.0) / (n - 1.0)) / n);
    CHECK(std::abs(est.variance - exact.variance) <= 3.0 * se_var);
  }
  envs::ChainMdp two = envs::ChainMdp::Single(2);
  Rng a(1, 0), b(1, 0);
  CHECK(ReinforceMcGrad(two, 0.5, 0.5, 1000, a).mean ==
        ReinforceMcGrad(two, 0.5, 0.99, 1000, b).mean);
}

}  // namespace
}  // namespace fgelab::rl
