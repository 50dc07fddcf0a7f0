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

#include "fgelab/fge/trainer.h"

#include <fstream>

#include "fgelab/common/errors.h"
#include "json.hpp"

namespace fgelab::fge {
namespace {

// Points of a 512-point (1-D) or 64 x 64 (2-D) lattice including the box ends.
std::vector<envs::ParameterVector> ExportGrid(const envs::ParamBounds& b) {
  std::vector<envs::ParameterVector> out;
  auto at = [&](size_t d, int i, int n) {
    return b.lo[d] + (b.hi[d] - b.lo[d]) * i / (n - 1);
  };
  if (b.dim() == 1) {
    for (int i = 0; i < 512; ++i) out.push_back({at(0, i, 512)});
  } else if (b.dim() == 2) {
    for (int j = 0; j < 64; ++j) {
      for (int i = 0; i < 64; ++i) out.push_back({at(0, i, 64), at(1, j, 64)});
    }
  }
  return out;
}

}  // namespace

std::string MethodName(Method m) {
  switch (m) {
    case Method::kDR: return "dr";
    case Method::kVDS: return "vds";
    case Method::kPLR: return "plr";
    case Method::kRARL: return "rarl";
    case Method::kFGE: return "fge";
  }
  return "unknown";
}

Method ParseMethod(const std::string& name) {
  for (Method m : {Method::kDR, Method::kVDS, Method::kPLR, Method::kRARL,
                   Method::kFGE}) {
    if (MethodName(m) == name) return m;
  }
  throw ContractViolation("unknown method '" + name + "'");
}

void TrainerConfig::Validate() const {
  ppo.Validate();
  fge.weights.Validate();
  Require(fge.alpha >= 0.0 && fge.alpha <= 1.0, "alpha must lie in [0, 1]");
  Require(fge.beta > 0.0 && fge.beta < 1.0, "beta must lie in (0, 1)");
  Require(fge.classifier_samples >= 1 && fge.classifier_epochs >= 0 &&
              fge.policy_classifier_epochs >= 0,
          "classifier sample count and epochs");
  Require(fge.best_response_candidates >= 1, "best-response candidates >= 1");
  Require(fge.explore_max_tries >= 1, "explore tries >= 1");
  Require(feasible_resolution >= 1, "feasible-set resolution >= 1");
  Require(!network.hidden.empty(), "network needs a hidden layer");
}

Trainer::Trainer(const envs::AvoidEnvironment& env, TrainerConfig config,
                 uint64_t seed)
    : env_(env.Clone()),
      config_(std::move(config)),
      seed_(seed),
      collector_(env, config_.ppo.n_envs, seed),
      feasible_(env.bounds(), config_.feasible_resolution),
      minibatch_rng_(seed, streams::kMinibatch),
      classifier_rng_(seed, streams::kClassifier),
      policy_classifier_rng_(seed, streams::kPolicyClassifier),
      best_response_rng_(seed, streams::kBestResponse),
      baseline_rng_(seed, streams::kBaseline),
      branch_rng_(seed, streams::kResetBranch),
      theta_rng_(seed, streams::kResetTheta) {
  config_.Validate();
  const envs::AvoidEnvironment* e = env_.get();
  base_ = [e](Rng& r) { return e->SampleBase(r); };

  Rng init(seed, streams::kInit);
  ac_ = rl::ActorCritic(rl::Policy(*env_, config_.network, init),
                        rl::ValueFunction(*env_, config_.network, init),
                        config_.ppo);
  q_ = feasibility::ParamClassifier(env_->bounds(), config_.classifier, init);
  p_ = feasibility::ParamClassifier(env_->bounds(), config_.classifier, init);
  switch (config_.method) {
    case Method::kVDS:
      vds_ = VdsSampler(env_->bounds(), config_.vds, config_.classifier, init);
      break;
    case Method::kPLR:
      plr_ = PlrSampler(config_.plr);
      break;
    case Method::kRARL:
      rarl_ = RarlAdversary(env_->bounds(), config_.rarl);
      break;
    default:
      break;
  }
}

envs::ParameterVector Trainer::Reset(IterationMetrics& m) {
  ++m.resets;
  envs::ParameterVector theta;
  switch (config_.method) {
    case Method::kDR:
      ++m.base_resets;
      theta = base_(theta_rng_);
      break;
    case Method::kVDS:
      theta = vds_.Sample(base_, theta_rng_);
      break;
    case Method::kPLR:
      theta = plr_.Sample(base_, theta_rng_);
      break;
    case Method::kRARL:
      theta = rarl_.Sample(theta_rng_);
      break;
    case Method::kFGE: {
      const feasibility::ParamClassifier& q = q_;
      ResetDraw d = SampleReset(
          config_.fge.weights, base_,
          [&q](const envs::ParameterVector& t) { return q.Probability(t); },
          config_.fge.beta, buffer_, config_.fge.explore_max_tries,
          branch_rng_, theta_rng_);
      m.base_resets += d.branch == ResetBranch::kBase;
      m.explore_resets += d.branch == ResetBranch::kExplore;
      m.rehearse_resets += d.branch == ResetBranch::kRehearse;
      m.exhausted += d.exhausted;
      theta = std::move(d.theta);
      break;
    }
  }
  if (config_.record_resets) reset_log_.push_back(theta);
  return theta;
}

void Trainer::StepImpl(IterationMetrics& m) {
  const rl::PpoConfig& ppo = config_.ppo;
  rl::RolloutBatch batch = collector_.Collect(
      ac_.policy, ac_.value, [this, &m] { return Reset(m); },
      ppo.rollout_length);
  m.mean_return = batch.MeanEpisodeReturn();
  m.safety_rate = batch.SafetyRate();
  m.episodes = static_cast<long long>(batch.episodes.size());

  bool update = config_.method != Method::kRARL ||
                rarl_.PolicyPhase(iteration_);
  rl::Advantages adv;
  if (update || config_.method == Method::kPLR) {
    adv = rl::ComputeGae(batch, ppo.gamma, ppo.lambda);
  }
  if (update) {
    m.ppo = rl::PpoUpdate(ac_, batch, adv, ppo, minibatch_rng_);
    m.updated = true;
  }

  for (const auto& ep : batch.episodes) {
    if (ep.safe) feasible_.Record(ep.theta);
  }

  switch (config_.method) {
    case Method::kFGE: {
      const FgeSettings& f = config_.fge;
      double alpha = f.alpha_mixing ? f.alpha : 0.0;
      feasibility::PmixDraw mix = feasibility::DrawPmix(
          feasible_, batch.episodes, alpha, f.classifier_samples,
          classifier_rng_);
      if (!mix.samples.empty() && f.classifier_epochs > 0) {
        feasibility::TrainClassifier(q_, mix.samples, f.classifier_epochs,
                                     classifier_rng_);
      }
      if (f.policy_classifier_epochs > 0) {
        feasibility::TrainPolicyClassifier(p_, batch.episodes,
                                           f.policy_classifier_epochs,
                                           policy_classifier_rng_);
      }
      const feasibility::ParamClassifier& p = p_;
      auto star = BestResponse(
          [&p](const std::vector<envs::ParameterVector>& c) {
            return p.Probabilities(c);
          },
          feasible_, f.best_response_candidates, best_response_rng_);
      if (star) buffer_.Append(*star);
      break;
    }
    case Method::kVDS:
      vds_.Update(batch.episodes, baseline_rng_);
      break;
    case Method::kPLR:
      plr_.Observe(EpisodeScores(batch, adv.advantages));
      break;
    case Method::kRARL:
      if (!update) rarl_.Observe(batch.episodes);
      break;
    case Method::kDR:
      break;
  }
  m.feasible_size = static_cast<long long>(feasible_.size());
  m.buffer_size = static_cast<long long>(buffer_.size());
}

const IterationMetrics& Trainer::Step() {
  IterationMetrics m;
  m.iteration = iteration_;
  try {
    StepImpl(m);
  } catch (const NumericError& e) {
    throw NumericError("iteration " + std::to_string(iteration_) + ": " +
                       e.what());
  } catch (const ContractViolation& e) {
    throw ContractViolation("iteration " + std::to_string(iteration_) + ": " +
                            e.what());
  }
  ++iteration_;
  metrics_.push_back(m);
  return metrics_.back();
}

void Trainer::Train(int iterations) {
  Require(iterations >= 0, "iteration count must be nonnegative");
  for (int i = 0; i < iterations; ++i) Step();
}

const std::vector<std::string>& Trainer::MetricsHeader() {
  static const std::vector<std::string> h = {
      "iteration",     "mean_return",    "safety_rate",     "episodes",
      "updated",       "policy_loss",    "value_loss",      "entropy",
      "approx_kl",     "feasible_size",  "buffer_size",     "resets",
      "base_resets",   "explore_resets", "rehearse_resets", "exhausted"};
  return h;
}

std::vector<CsvWriter::Cell> Trainer::MetricsRow(const IterationMetrics& m) {
  return {m.iteration,         m.mean_return,       m.safety_rate,
          m.episodes,          (long long)m.updated, m.ppo.policy_loss,
          m.ppo.value_loss,    m.ppo.entropy,       m.ppo.approx_kl,
          m.feasible_size,     m.buffer_size,       m.resets,
          m.base_resets,       m.explore_resets,    m.rehearse_resets,
          m.exhausted};
}

void Trainer::SaveArtifacts(const std::filesystem::path& dir) const {
  std::filesystem::create_directories(dir);
  {
    CsvWriter csv(dir / "metrics.csv", MetricsHeader());
    for (const auto& m : metrics_) csv.Row(MetricsRow(m));
  }
  nn::SaveCheckpoint(ac_.policy.params(), dir / "policy.json");
  nn::SaveCheckpoint(ac_.value.params(), dir / "value.json");
  nn::SaveCheckpoint(q_.params(), dir / "feasibility_classifier.json");
  nn::SaveCheckpoint(p_.params(), dir / "policy_classifier.json");
  feasible_.Save(dir / "feasible_set.json");
  {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& t : buffer_.entries()) j.push_back(t.values);
    std::ofstream(dir / "rehearsal_buffer.json") << j.dump() << '\n';
  }
  const auto grid = ExportGrid(env_->bounds());
  if (!grid.empty()) {
    std::vector<std::string> header;
    for (size_t d = 0; d < env_->bounds().dim(); ++d) {
      header.push_back("theta" + std::to_string(d));
    }
    header.push_back("q_feasible");
    header.push_back("p_policy_safe");
    CsvWriter csv(dir / "classifier_grid.csv", header);
    std::vector<double> q = q_.Probabilities(grid);
    std::vector<double> p = p_.Probabilities(grid);
    for (size_t i = 0; i < grid.size(); ++i) {
      std::vector<CsvWriter::Cell> row(grid[i].values.begin(),
                                       grid[i].values.end());
      row.push_back(q[i]);
      row.push_back(p[i]);
      csv.Row(row);
    }
  }
}

}  // namespace fgelab::fge
