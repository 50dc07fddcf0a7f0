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

#ifndef FGELAB_FGE_TRAINER_H_
#define FGELAB_FGE_TRAINER_H_

#include <cstdint>
#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include "fgelab/common/csv.h"
#include "fgelab/common/rng.h"
#include "fgelab/envs/environment.h"
#include "fgelab/feasibility/classifier.h"
#include "fgelab/feasibility/feasible_set.h"
#include "fgelab/fge/baselines.h"
#include "fgelab/fge/reset.h"
#include "fgelab/rl/policy.h"
#include "fgelab/rl/ppo.h"
#include "fgelab/rl/rollout.h"

namespace fgelab::fge {

enum class Method { kDR, kVDS, kPLR, kRARL, kFGE };

std::string MethodName(Method m);
Method ParseMethod(const std::string& name);

struct FgeSettings {
  ResetMixWeights weights;
  double alpha = 0.5;
  double beta = 0.5;
  // When false the feasibility classifier sees on-policy samples only.
  bool alpha_mixing = true;
  int classifier_samples = 2048;
  int classifier_epochs = 2;
  int policy_classifier_epochs = 2;
  int best_response_candidates = 256;
  int explore_max_tries = 1000;
};

struct TrainerConfig {
  Method method = Method::kFGE;
  rl::PpoConfig ppo;
  rl::NetworkSpec network{{32, 32}, nn::Activation::kTanh, -0.5};
  feasibility::ClassifierConfig classifier;
  int feasible_resolution = 256;
  FgeSettings fge;
  VdsSettings vds;
  PlrSettings plr;
  RarlSettings rarl;
  // Keep every reset parameter in order of use.
  bool record_resets = false;

  void Validate() const;
};

struct IterationMetrics {
  long long iteration = 0;
  double mean_return = 0.0;
  double safety_rate = 0.0;
  long long episodes = 0;
  rl::PpoStats ppo;
  bool updated = false;  // false during RARL adversary iterations
  long long feasible_size = 0;
  long long buffer_size = 0;
  long long resets = 0;
  long long base_resets = 0;
  long long explore_resets = 0;
  long long rehearse_resets = 0;
  long long exhausted = 0;
};

class Trainer {
 public:
  Trainer(const envs::AvoidEnvironment& env, TrainerConfig config,
          uint64_t seed);

  // One collect/update iteration. Errors carry the iteration number.
  const IterationMetrics& Step();
  void Train(int iterations);

  const envs::AvoidEnvironment& env() const { return *env_; }
  const TrainerConfig& config() const { return config_; }
  const rl::ActorCritic& actor_critic() const { return ac_; }
  const feasibility::FeasibleSet& feasible_set() const { return feasible_; }
  const RehearsalBuffer& buffer() const { return buffer_; }
  const feasibility::ParamClassifier& classifier() const { return q_; }
  const feasibility::ParamClassifier& policy_classifier() const { return p_; }
  const std::vector<IterationMetrics>& metrics() const { return metrics_; }
  const std::vector<envs::ParameterVector>& reset_log() const {
    return reset_log_;
  }

  static const std::vector<std::string>& MetricsHeader();
  static std::vector<CsvWriter::Cell> MetricsRow(const IterationMetrics& m);

  // Writes metrics.csv, network checkpoints, D_f, the rehearsal buffer and,
  // for parameter spaces of dimension <= 2, a classifier grid export.
  void SaveArtifacts(const std::filesystem::path& dir) const;

 private:
  envs::ParameterVector Reset(IterationMetrics& m);
  void StepImpl(IterationMetrics& m);

  std::unique_ptr<envs::AvoidEnvironment> env_;
  TrainerConfig config_;
  uint64_t seed_;
  feasibility::BaseSampler base_;

  rl::ActorCritic ac_;
  rl::RolloutCollector collector_;
  feasibility::FeasibleSet feasible_;
  RehearsalBuffer buffer_;
  feasibility::ParamClassifier q_;
  feasibility::ParamClassifier p_;
  VdsSampler vds_;
  PlrSampler plr_;
  RarlAdversary rarl_;

  Rng minibatch_rng_;
  Rng classifier_rng_;
  Rng policy_classifier_rng_;
  Rng best_response_rng_;
  Rng baseline_rng_;
  Rng branch_rng_;
  Rng theta_rng_;

  long long iteration_ = 0;
  std::vector<IterationMetrics> metrics_;
  std::vector<envs::ParameterVector> reset_log_;
};

}  // namespace fgelab::fge

#endif  // FGELAB_FGE_TRAINER_H_
