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

#include "fgelab/rl/rollout.h"

#include <cmath>
#include <limits>

#include "fgelab/common/errors.h"

namespace fgelab::rl {

double RolloutBatch::SafetyRate() const {
  if (episodes.empty()) return std::numeric_limits<double>::quiet_NaN();
  int safe = 0;
  for (const auto& ep : episodes) safe += ep.safe;
  return static_cast<double>(safe) / episodes.size();
}

double RolloutBatch::MeanEpisodeReturn() const {
  if (episodes.empty()) return std::numeric_limits<double>::quiet_NaN();
  return SafetyRate() - 1.0;
}

RolloutCollector::RolloutCollector(const envs::AvoidEnvironment& env,
                                   int n_envs, uint64_t seed)
    : env_(env.Clone()),
      n_envs_(n_envs),
      states_(n_envs),
      needs_reset_(n_envs, 1),
      episode_len_(n_envs, 0) {
  Require(n_envs >= 1, "RolloutCollector: n_envs >= 1");
  action_rngs_.reserve(n_envs);
  for (int e = 0; e < n_envs; ++e) {
    action_rngs_.emplace_back(seed, streams::kEnvStreamBase + e);
  }
}

RolloutBatch RolloutCollector::Collect(const Policy& policy,
                                       const ValueFunction& value,
                                       const ResetFn& reset, int n_steps) {
  Require(n_steps >= 1, "Collect: n_steps >= 1");
  const int obs_dim = env_->observation_dim();
  const int theta_dim = static_cast<int>(env_->bounds().dim());
  const int act_w = policy.action_width();
  const size_t total = static_cast<size_t>(n_steps) * n_envs_;

  RolloutBatch b;
  b.n_envs = n_envs_;
  b.n_steps = n_steps;
  b.obs.Resize(total, obs_dim);
  b.theta.Resize(total, theta_dim);
  b.actions.Resize(total, act_w);
  b.log_probs.resize(total);
  b.rewards.resize(total);
  b.values.resize(total);
  b.dones.assign(total, 0);
  b.truncated.assign(total, 0);
  b.bootstrap.assign(total, 0.0);

  Matrix step_obs(n_envs_, obs_dim);
  nn::ForwardCache pcache, vcache;
  // Next observations of truncated, non-goal steps; valued after the loop.
  std::vector<size_t> boot_rows;
  std::vector<double> boot_obs;

  for (int t = 0; t < n_steps; ++t) {
    for (int e = 0; e < n_envs_; ++e) {
      if (needs_reset_[e]) {
        states_[e] = env_->Reset(reset());
        needs_reset_[e] = 0;
        episode_len_[e] = 0;
      }
      env_->BuildObservation(states_[e], step_obs.Row(e));
    }
    const Matrix& raw = policy.Raw(step_obs, pcache);
    const Matrix& vals = value.Evaluate(step_obs, vcache);
    for (int e = 0; e < n_envs_; ++e) {
      const size_t i = b.Index(t, e);
      auto obs_row = step_obs.Row(e);
      std::copy(obs_row.begin(), obs_row.end(), b.obs.Row(i).begin());
      const auto& th = states_[e].theta.values;
      std::copy(th.begin(), th.end(), b.theta.Row(i).begin());
      auto act = b.actions.Row(i);
      policy.Sample(raw.Row(e), action_rngs_[e], act);
      b.log_probs[i] = policy.LogProb(raw.Row(e), act);
      b.values[i] = vals(e, 0);

      envs::StepOutcome o = env_->Step(states_[e], policy.ToEnvAction(act));
      b.rewards[i] = envs::RewardOf(o.h_value);
      ++episode_len_[e];
      if (o.unsafe || o.truncated) {
        b.dones[i] = o.unsafe;
        b.truncated[i] = o.truncated;
        b.episodes.push_back(
            {states_[e].theta, !o.unsafe, episode_len_[e], e});
        if (o.truncated && !o.reached_goal) {
          boot_rows.push_back(i);
          size_t off = boot_obs.size();
          boot_obs.resize(off + obs_dim);
          env_->BuildObservation(
              o.next, std::span<double>(boot_obs.data() + off, obs_dim));
        }
        needs_reset_[e] = 1;
      }
      states_[e] = std::move(o.next);
    }
  }

  if (!boot_rows.empty()) {
    Matrix m(boot_rows.size(), obs_dim);
    std::copy(boot_obs.begin(), boot_obs.end(), m.data().begin());
    std::vector<double> v = value.Evaluate(m);
    for (size_t j = 0; j < boot_rows.size(); ++j) b.bootstrap[boot_rows[j]] = v[j];
  }
  b.last_values.assign(n_envs_, 0.0);
  for (int e = 0; e < n_envs_; ++e) {
    if (!needs_reset_[e]) env_->BuildObservation(states_[e], step_obs.Row(e));
  }
  std::vector<double> last = value.Evaluate(step_obs);
  for (int e = 0; e < n_envs_; ++e) {
    if (!needs_reset_[e]) b.last_values[e] = last[e];
  }
  return b;
}

Advantages ComputeGae(const RolloutBatch& batch, double gamma, double lambda) {
  Require(gamma > 0.0 && gamma <= 1.0 && lambda >= 0.0 && lambda <= 1.0,
          "ComputeGae: gamma in (0, 1], lambda in [0, 1]");
  Require(batch.values.size() == batch.size() &&
              batch.last_values.size() == static_cast<size_t>(batch.n_envs),
          "ComputeGae: value estimates missing");
  Advantages out;
  out.advantages.assign(batch.size(), 0.0);
  out.returns.assign(batch.size(), 0.0);
  for (int e = 0; e < batch.n_envs; ++e) {
    double gae = 0.0;
    for (int t = batch.n_steps - 1; t >= 0; --t) {
      const size_t i = batch.Index(t, e);
      double delta;
      if (batch.dones[i]) {
        delta = batch.rewards[i] - batch.values[i];
        gae = delta;
      } else if (batch.truncated[i]) {
        delta = batch.rewards[i] + gamma * batch.bootstrap[i] - batch.values[i];
        gae = delta;
      } else {
        double next = t + 1 < batch.n_steps
                          ? batch.values[batch.Index(t + 1, e)]
                          : batch.last_values[e];
        delta = batch.rewards[i] + gamma * next - batch.values[i];
        gae = delta + gamma * lambda * (t + 1 < batch.n_steps ? gae : 0.0);
      }
      out.advantages[i] = gae;
      out.returns[i] = gae + batch.values[i];
    }
  }
  return out;
}

}  // namespace fgelab::rl
