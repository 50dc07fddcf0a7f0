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

#include "fgelab/rl/reinforce.h"

#include <cmath>

#include "fgelab/common/errors.h"
#include "fgelab/envs/analysis.h"

namespace fgelab::rl {

McGradEstimate ReinforceMcGrad(const envs::ChainMdp& chain, double pi,
                               double gamma, int n_samples, Rng& rng) {
  Require(chain.num_chains() == 1, "ReinforceMcGrad: single chain required");
  Require(pi > 0.0 && pi < 1.0, "ReinforceMcGrad: pi in (0, 1)");
  Require(n_samples >= 2, "ReinforceMcGrad: n_samples >= 2");
  const envs::ParameterVector theta{1.0};
  const int length = chain.ChainLength(theta);
  const auto right = envs::Action::Discrete(envs::ChainMdp::kRight);
  const auto left = envs::Action::Discrete(envs::ChainMdp::kLeft);

  double sum = 0.0, sum_sq = 0.0;
  for (int s = 0; s < n_samples; ++s) {
    envs::EnvState state = chain.Reset(theta);
    int t = 0;
    for (;;) {
      ++t;
      envs::StepOutcome o = chain.Step(state, rng.Bernoulli(pi) ? right : left);
      if (o.unsafe) break;
      if (o.truncated) {
        t = length;
        break;
      }
      state = std::move(o.next);
    }
    double g = envs::ChainGradSample(t, length, pi, gamma);
    sum += g;
    sum_sq += g * g;
  }
  McGradEstimate est;
  est.n = n_samples;
  est.mean = sum / n_samples;
  est.variance = (sum_sq - n_samples * est.mean * est.mean) / (n_samples - 1);
  est.standard_error = std::sqrt(est.variance / n_samples);
  return est;
}

}  // namespace fgelab::rl
