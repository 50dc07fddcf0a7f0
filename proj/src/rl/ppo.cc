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

#include "fgelab/rl/ppo.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "fgelab/common/errors.h"

namespace fgelab::rl {

void PpoConfig::Validate() const {
  Require(gamma > 0.0 && gamma <= 1.0, "PpoConfig: gamma in (0, 1]");
  Require(lambda > 0.0 && lambda <= 1.0, "PpoConfig: lambda in (0, 1]");
  Require(clip > 0.0, "PpoConfig: clip > 0");
  Require(entropy_coef >= 0.0 && value_coef > 0.0, "PpoConfig: coefficients");
  Require(policy_lr > 0.0 && value_lr > 0.0, "PpoConfig: learning rates");
  Require(epochs >= 1 && minibatch_size >= 1, "PpoConfig: epochs/minibatch");
  Require(rollout_length >= 1 && n_envs >= 1, "PpoConfig: rollout shape");
}

ActorCritic::ActorCritic(Policy p, ValueFunction v, const PpoConfig& cfg)
    : policy(std::move(p)),
      value(std::move(v)),
      policy_opt(policy.params().num_params(), nn::AdamConfig{cfg.policy_lr}),
      value_opt(value.params().num_params(), nn::AdamConfig{cfg.value_lr}) {}

PpoStats PpoUpdate(ActorCritic& ac, const RolloutBatch& batch,
                   const Advantages& adv, const PpoConfig& cfg, Rng& rng) {
  cfg.Validate();
  const size_t n = batch.size();
  Require(adv.advantages.size() == n && adv.returns.size() == n,
          "PpoUpdate: advantage length");
  PpoStats stats;
  if (n == 0) return stats;

  double mean = std::accumulate(adv.advantages.begin(), adv.advantages.end(), 0.0) / n;
  double var = 0.0;
  for (double a : adv.advantages) var += (a - mean) * (a - mean);
  double sd = std::sqrt(var / n);
  std::vector<double> norm_adv(n);
  for (size_t i = 0; i < n; ++i) {
    norm_adv[i] = sd > 0.0 ? (adv.advantages[i] - mean) / (sd + 1e-8) : 0.0;
  }

  std::vector<size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  const size_t mb = std::min<size_t>(cfg.minibatch_size, n);
  const size_t obs_dim = batch.obs.cols();
  const Policy& policy = ac.policy;
  const size_t n_out = policy.num_outputs();

  Matrix obs_mb, d_raw, d_val;
  nn::ForwardCache pcache, vcache;
  std::vector<double> pgrad(ac.policy.params().num_params());
  std::vector<double> vgrad(ac.value.params().num_params());
  long long count = 0;

  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    for (size_t i = n - 1; i > 0; --i) {
      std::swap(order[i], order[rng.Below(i + 1)]);
    }
    for (size_t start = 0, mb_idx = 0; start < n; start += mb, ++mb_idx) {
      const size_t m = std::min(mb, n - start);
      obs_mb.Resize(m, obs_dim);
      for (size_t r = 0; r < m; ++r) {
        auto src = batch.obs.Row(order[start + r]);
        std::copy(src.begin(), src.end(), obs_mb.Row(r).begin());
      }
      const Matrix& raw = policy.Raw(obs_mb, pcache);
      const Matrix& vals = ac.value.Evaluate(obs_mb, vcache);

      d_raw.Resize(m, n_out);
      d_val.Resize(m, 1);
      std::fill(pgrad.begin(), pgrad.end(), 0.0);
      std::fill(vgrad.begin(), vgrad.end(), 0.0);
      double pl = 0.0, vl = 0.0, ent = 0.0, kl = 0.0, clipped = 0.0;
      for (size_t r = 0; r < m; ++r) {
        const size_t i = order[start + r];
        auto action = batch.actions.Row(i);
        double logp = policy.LogProb(raw.Row(r), action);
        double log_ratio = logp - batch.log_probs[i];
        double ratio = std::exp(log_ratio);
        double a = norm_adv[i];
        double unclipped = ratio * a;
        double clipped_ratio = std::clamp(ratio, 1.0 - cfg.clip, 1.0 + cfg.clip);
        double surrogate = std::min(unclipped, clipped_ratio * a);
        bool active = unclipped <= clipped_ratio * a;
        double h = policy.Entropy(raw.Row(r));
        pl -= surrogate;
        ent += h;
        kl += (ratio - 1.0) - log_ratio;
        clipped += std::abs(ratio - 1.0) > cfg.clip;
        // Gradient of the minimized loss -surrogate - c_ent * H.
        double c_logp = active ? -unclipped / m : 0.0;
        policy.AccumulateGrad(raw.Row(r), action, c_logp,
                              -cfg.entropy_coef / m, d_raw.Row(r), pgrad);
        double diff = vals(r, 0) - adv.returns[i];
        vl += diff * diff;
        d_val(r, 0) = 2.0 * cfg.value_coef * diff / m;
      }
      pl /= m;
      vl /= m;
      if (!std::isfinite(pl) || !std::isfinite(vl)) {
        std::ostringstream msg;
        msg << "PpoUpdate: non-finite loss at epoch " << epoch << " minibatch "
            << mb_idx << " (policy " << pl << ", value " << vl << ")";
        throw NumericError(msg.str());
      }
      nn::BackwardRaw(policy.params(), pcache, d_raw, pgrad);
      nn::BackwardRaw(ac.value.params(), vcache, d_val, vgrad);
      nn::ClipGradNorm(pgrad, cfg.max_grad_norm);
      nn::ClipGradNorm(vgrad, cfg.max_grad_norm);
      nn::OptimStep(ac.policy_opt, ac.policy.mutable_params(), pgrad);
      nn::OptimStep(ac.value_opt, ac.value.mutable_params(), vgrad);

      stats.policy_loss += pl;
      stats.value_loss += vl;
      stats.entropy += ent / m;
      stats.approx_kl += kl / m;
      stats.clip_fraction += clipped / m;
      ++count;
    }
  }
  stats.policy_loss /= count;
  stats.value_loss /= count;
  stats.entropy /= count;
  stats.approx_kl /= count;
  stats.clip_fraction /= count;
  return stats;
}

const std::vector<std::string>& TrainLog::Header() {
  static const std::vector<std::string> h = {
      "iteration",   "mean_return", "safety_rate", "episodes",
      "policy_loss", "value_loss",  "entropy",     "approx_kl"};
  return h;
}

TrainLog::TrainLog(const std::filesystem::path& path)
    : writer_(path, Header()) {}

void TrainLog::Append(long long iteration, const RolloutBatch& batch,
                      const PpoStats& stats) {
  std::vector<CsvWriter::Cell> row = {
      iteration,
      batch.MeanEpisodeReturn(),
      batch.SafetyRate(),
      static_cast<long long>(batch.episodes.size()),
      stats.policy_loss,
      stats.value_loss,
      stats.entropy,
      stats.approx_kl};
  if (writer_.is_open()) writer_.Row(row);
  rows_.push_back(std::move(row));
}

}  // namespace fgelab::rl
