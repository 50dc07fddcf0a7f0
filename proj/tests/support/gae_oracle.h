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

#ifndef FGELAB_TESTS_SUPPORT_GAE_ORACLE_H_
#define FGELAB_TESTS_SUPPORT_GAE_ORACLE_H_

#include <cmath>
#include <vector>

#include "fgelab/rl/rollout.h"

namespace fgelab::testing {

// Direct evaluation A_t = sum_l (gamma lambda)^l delta_{t+l} over each
// episode segment, written independently of the backward recursion.
inline std::vector<double> GaeByForwardSums(const rl::RolloutBatch& b,
                                            double gamma, double lambda) {
  std::vector<double> adv(b.size(), 0.0);
  for (int e = 0; e < b.n_envs; ++e) {
    std::vector<double> delta(b.n_steps);
    std::vector<bool> ends(b.n_steps);
    for (int t = 0; t < b.n_steps; ++t) {
      size_t i = b.Index(t, e);
      double next = 0.0;
      if (b.truncated[i]) {
        next = b.bootstrap[i];
      } else if (!b.dones[i]) {
        next = t + 1 < b.n_steps ? b.values[b.Index(t + 1, e)] : b.last_values[e];
      }
      delta[t] = b.rewards[i] + gamma * next - b.values[i];
      ends[t] = b.dones[i] || b.truncated[i] || t + 1 == b.n_steps;
    }
    for (int t = 0; t < b.n_steps; ++t) {
      double sum = 0.0;
      for (int l = 0; t + l < b.n_steps; ++l) {
        sum += std::pow(gamma * lambda, l) * delta[t + l];
        if (ends[t + l]) break;
      }
      adv[b.Index(t, e)] = sum;
    }
  }
  return adv;
}

}  // namespace fgelab::testing

#endif  // FGELAB_TESTS_SUPPORT_GAE_ORACLE_H_
