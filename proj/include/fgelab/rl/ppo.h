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

#ifndef FGELAB_RL_PPO_H_
#define FGELAB_RL_PPO_H_

#include <filesystem>
#include <string>
#include <vector>

#include "fgelab/common/csv.h"
#include "fgelab/common/rng.h"
#include "fgelab/nn/mlp.h"
#include "fgelab/rl/policy.h"
#include "fgelab/rl/rollout.h"

namespace fgelab::rl {

struct PpoConfig {
  double gamma = 0.99;
  double lambda = 0.95;
  double clip = 0.2;
  double entropy_coef = 0.01;
  double value_coef = 0.5;
  double policy_lr = 3e-4;
  double value_lr = 1e-3;
  double max_grad_norm = 0.5;
  int epochs = 4;
  int minibatch_size = 256;
  int rollout_length = 30;
  int n_envs = 256;

  void Validate() const;
};

struct PpoStats {
  double policy_loss = 0.0;
  double value_loss = 0.0;
  double entropy = 0.0;
  double approx_kl = 0.0;
  double clip_fraction = 0.0;
};

// Policy and value networks with their optimizer states.
struct ActorCritic {
  Policy policy;
  ValueFunction value;
  nn::OptimState policy_opt;
  nn::OptimState value_opt;

  ActorCritic() = default;
  ActorCritic(Policy p, ValueFunction v, const PpoConfig& cfg);
};

// Advantages are normalized per batch. Throws NumericError on a non-finite
// loss, naming the epoch and minibatch.
PpoStats PpoUpdate(ActorCritic& ac, const RolloutBatch& batch,
                   const Advantages& adv, const PpoConfig& cfg, Rng& rng);

// Per-iteration training log.
class TrainLog {
 public:
  static const std::vector<std::string>& Header();

  TrainLog() = default;
  explicit TrainLog(const std::filesystem::path& path);

  void Append(long long iteration, const RolloutBatch& batch,
              const PpoStats& stats);
  const std::vector<std::vector<CsvWriter::Cell>>& rows() const { return rows_; }

 private:
  CsvWriter writer_;
  std::vector<std::vector<CsvWriter::Cell>> rows_;
};

}  // namespace fgelab::rl

#endif  // FGELAB_RL_PPO_H_
