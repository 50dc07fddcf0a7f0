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


#ifndef FGELAB_HARNESS_EVALUATE_H_
#define FGELAB_HARNESS_EVALUATE_H_

#include <cstdint>
#include <functional>
#include <vector>

#include "fgelab/envs/environment.h"
#include "fgelab/harness/metrics.h"
#include "fgelab/rl/policy.h"

namespace fgelab::harness {

// Deterministic controller used for evaluation.
using ActionFn = std::function<envs::Action(const envs::EnvState&)>;

// Mode of the policy's action distribution at each state.
ActionFn GreedyPolicy(const rl::Policy& policy, const envs::AvoidEnvironment& env);

// One rollout to the end of the episode; true iff it never turns unsafe.
bool RolloutSafe(const ActionFn& act, const envs::AvoidEnvironment& env,
                 const envs::ParameterVector& theta);
Mask Evaluate(const ActionFn& act, const envs::AvoidEnvironment& env,
              const std::vector<envs::ParameterVector>& grid);

struct GridSpec {
  int per_dim_1d = 512;
  int per_dim_2d = 64;
  int per_dim_nd = 8;
  // When positive, evaluate on this many base-distribution draws instead.
  int sampled = 0;
  uint64_t sample_seed = 0;
  // Extra points across a narrow named region (ToyLevels' hard span).
  int region_points = 32;
};

// Uniform lattice including both endpoints of every axis.
std::vector<envs::ParameterVector> LatticeGrid(const envs::ParamBounds& bounds,
                                               int per_dim);
std::vector<envs::ParameterVector> EvaluationGrid(
    const envs::AvoidEnvironment& env, const GridSpec& spec);
// Evenly spaced points over the environment's hard region; empty for
// environments without one.
std::vector<envs::ParameterVector> HardRegionGrid(
    const envs::AvoidEnvironment& env, int points);

}  // namespace fgelab::harness

#endif  // FGELAB_HARNESS_EVALUATE_H_
