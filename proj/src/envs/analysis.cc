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

#include "fgelab/envs/analysis.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fgelab/common/errors.h"

namespace fgelab::envs {

double ChainGradSample(int t, int length, double pi, double gamma) {
  if (t >= length) return 0.0;
  double discounted =
      gamma == 1.0 ? t - 1.0 : (gamma - std::pow(gamma, t)) / (1.0 - gamma);
  return -discounted / pi + 1.0 / (1.0 - pi);
}

double ChainTerminationProb(int t, int length, double pi) {
  if (t < 1 || t > length) return 0.0;
  double p = std::pow(pi, t - 1);
  return t < length ? p * (1.0 - pi) : p;
}

ChainGradStats ComputeChainGradStats(int length, double pi, double gamma) {
  Require(length >= 2, "ComputeChainGradStats: H must be >= 2");
  Require(pi > 0.0 && pi < 1.0, "ComputeChainGradStats: pi in (0, 1)");
  Require(gamma > 0.0 && gamma <= 1.0, "ComputeChainGradStats: gamma in (0, 1]");
  ChainGradStats out;
  for (int t = 1; t <= length; ++t) {
    out.mean += ChainTerminationProb(t, length, pi) *
                ChainGradSample(t, length, pi, gamma);
  }
  for (int t = 1; t <= length; ++t) {
    double d = ChainGradSample(t, length, pi, gamma) - out.mean;
    double term = ChainTerminationProb(t, length, pi) * d * d;
    out.variance += term;
    if (t < length) out.truncated_variance += term;
  }
  return out;
}

namespace {

struct Search {
  const AvoidEnvironment& env;
  const std::vector<Action>& actions;
  int horizon;

  // Returns values of the subtree rooted at `state` given the running max of
  // h along the path. `reach_bound` lets the caller prune subtrees that can
  // improve neither value.
  BruteForceValues Visit(const EnvState& state, double running_max,
                         double reach_bound) const {
    BruteForceValues best{std::numeric_limits<double>::infinity(), -1.0};
    if (state.k >= horizon) return {running_max, 0.0};
    for (const Action& a : actions) {
      double bound = std::min(reach_bound, best.v_reach);
      if (best.v_sum == 0.0 && running_max >= bound) break;
      StepOutcome o = env.Step(state, a);
      double m = std::max(running_max, o.h_value);
      BruteForceValues child;
      if (o.unsafe) {
        child = {m, -1.0};
      } else if (o.truncated) {
        child = {m, 0.0};
      } else {
        child = Visit(o.next, m, bound);
      }
      best.v_reach = std::min(best.v_reach, child.v_reach);
      best.v_sum = std::max(best.v_sum, child.v_sum);
    }
    return best;
  }
};

}  // namespace

BruteForceValues ComputeBruteForceValues(const AvoidEnvironment& env,
                                         const ParameterVector& theta,
                                         int horizon) {
  std::vector<Action> actions = env.EnumerableActions();
  if (actions.empty() || actions.size() > 3) {
    throw ContractViolation(env.name() +
                            ": brute force needs 1 to 3 enumerable actions");
  }
  Require(horizon >= 1 && horizon <= 16,
          "ComputeBruteForceValues: horizon must be in [1, 16]");
  EnvState s0 = env.Reset(theta);
  double h0 = env.SafetyMargin(s0.x, 0, theta);
  if (h0 > 0.0) return {h0, -1.0};
  Search search{env, actions, horizon};
  return search.Visit(s0, h0, std::numeric_limits<double>::infinity());
}

}  // namespace fgelab::envs
