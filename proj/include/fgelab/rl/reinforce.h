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

#ifndef FGELAB_RL_REINFORCE_H_
#define FGELAB_RL_REINFORCE_H_

#include "fgelab/common/rng.h"
#include "fgelab/envs/chain.h"

namespace fgelab::rl {

struct McGradEstimate {
  double mean = 0.0;
  double variance = 0.0;  // sample variance of the per-trajectory gradient
  double standard_error = 0.0;
  int n = 0;
};

// Simulates n_samples episodes of a single-chain MDP under the policy that
// advances with probability pi, and returns sample statistics of the
// single-trajectory REINFORCE gradient g(T).
McGradEstimate ReinforceMcGrad(const envs::ChainMdp& chain, double pi,
                               double gamma, int n_samples, Rng& rng);

}  // namespace fgelab::rl

#endif  // FGELAB_RL_REINFORCE_H_
