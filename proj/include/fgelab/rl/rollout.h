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

#ifndef FGELAB_RL_ROLLOUT_H_
#define FGELAB_RL_ROLLOUT_H_

#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

#include "fgelab/common/matrix.h"
#include "fgelab/common/rng.h"
#include "fgelab/envs/environment.h"
#include "fgelab/rl/policy.h"

namespace fgelab::rl {

using ResetFn = std::function<envs::ParameterVector()>;

struct EpisodeOutcome {
  envs::ParameterVector theta;
  bool safe = false;  // ran to truncation without entering the unsafe set
  int length = 0;
  int env = 0;
};

// Step-major storage: row t * n_envs + e holds step t of environment e.
struct RolloutBatch {
  int n_envs = 0;
  int n_steps = 0;
  Matrix obs;
  Matrix theta;
  Matrix actions;
  std::vector<double> log_probs;
  std::vector<double> rewards;
  std::vector<double> values;
  std::vector<uint8_t> dones;       // unsafe: terminal, bootstrap 0
  std::vector<uint8_t> truncated;   // safe end: bootstrap from next value
  std::vector<double> bootstrap;    // next-state value at truncated steps
  std::vector<double> last_values;  // per env, for unfinished episodes
  std::vector<EpisodeOutcome> episodes;

  size_t size() const { return rewards.size(); }
  size_t Index(int t, int e) const {
    return static_cast<size_t>(t) * n_envs + e;
  }
  // Fraction of finished episodes that ended safely; NaN if none finished.
  double SafetyRate() const;
  double MeanEpisodeReturn() const;
};

// Steps n_envs persistent environment instances. Episodes may straddle
// collect calls; an environment is reset through the reset function the
// step after its episode ends, in environment-index order.
class RolloutCollector {
 public:
  RolloutCollector(const envs::AvoidEnvironment& env, int n_envs,
                   uint64_t seed);

  RolloutBatch Collect(const Policy& policy, const ValueFunction& value,
                       const ResetFn& reset, int n_steps);

  int n_envs() const { return n_envs_; }
  const envs::AvoidEnvironment& env() const { return *env_; }

 private:
  std::unique_ptr<envs::AvoidEnvironment> env_;
  int n_envs_;
  std::vector<envs::EnvState> states_;
  std::vector<uint8_t> needs_reset_;
  std::vector<int> episode_len_;
  std::vector<Rng> action_rngs_;
};

struct Advantages {
  std::vector<double> advantages;
  std::vector<double> returns;
};

// Generalized advantage estimation; the recursion restarts at every terminal
// or truncated step.
Advantages ComputeGae(const RolloutBatch& batch, double gamma, double lambda);

}  // namespace fgelab::rl

#endif  // FGELAB_RL_ROLLOUT_H_
