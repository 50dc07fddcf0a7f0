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

#ifndef FGELAB_ENVS_ANALYSIS_H_
#define FGELAB_ENVS_ANALYSIS_H_

#include "fgelab/envs/environment.h"

namespace fgelab::envs {

// Single-trajectory REINFORCE gradient on a chain of length H under a policy
// that continues with probability pi:
//   g(T) = -(1/pi) (gamma - gamma^T) / (1 - gamma) + 1 / (1 - pi), T < H,
//   g(H) = 0.
struct ChainGradStats {
  double mean = 0.0;
  double variance = 0.0;            // over all T in 1..H
  double truncated_variance = 0.0;  // terms T < H only
};

double ChainGradSample(int t, int length, double pi, double gamma);
double ChainTerminationProb(int t, int length, double pi);
ChainGradStats ComputeChainGradStats(int length, double pi, double gamma);

struct BruteForceValues {
  double v_reach = 0.0;  // min over sequences of max_k h(x_k)
  double v_sum = 0.0;    // max over sequences of the negative-indicator sum
};

// Exhaustive search over open-loop action sequences from EnumerableActions().
// Refuses more than three actions per step or horizons above 16.
BruteForceValues ComputeBruteForceValues(const AvoidEnvironment& env,
                                         const ParameterVector& theta,
                                         int horizon);

}  // namespace fgelab::envs

#endif  // FGELAB_ENVS_ANALYSIS_H_
