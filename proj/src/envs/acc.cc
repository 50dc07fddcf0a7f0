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

#include "fgelab/envs/acc.h"

#include <algorithm>

#include "fgelab/common/errors.h"

namespace fgelab::envs {

Acc::Acc(AccConfig config) : config_(config) {
  Require(config_.dt > 0.0 && config_.horizon >= 1, "Acc: bad dt or horizon");
  Require(config_.a_max_lo > 0.0 && config_.a_max_lo <= config_.a_max_hi,
          "Acc: bad a_max range");
  Require(config_.dv0_lo <= config_.dv0_hi, "Acc: bad dv0 range");
  bounds_.lo = {config_.a_max_lo, config_.dv0_lo};
  bounds_.hi = {config_.a_max_hi, config_.dv0_hi};
}

ParameterVector Acc::SampleBase(Rng& rng) const {
  double a = rng.Uniform(bounds_.lo[0], bounds_.hi[0]);
  double v = rng.Uniform(bounds_.lo[1], bounds_.hi[1]);
  return ParameterVector{a, v};
}

std::vector<double> Acc::InitialState(const ParameterVector& theta) const {
  return {config_.p0, theta[1]};
}

std::vector<double> Acc::Transition(const EnvState& state,
                                    const Action& action) const {
  double u = std::clamp(action.values[0], -1.0, 1.0);
  double a = state.theta[0] * u;
  double dp = state.x[0] - state.x[1] * config_.dt;
  double dv = state.x[1] + a * config_.dt;
  return {dp, dv};
}

double Acc::SafetyMargin(std::span<const double> x, int,
                         const ParameterVector&) const {
  return -x[0];
}

std::vector<Action> Acc::EnumerableActions() const {
  return {Action::Box({-1.0}), Action::Box({0.0}), Action::Box({1.0})};
}

std::pair<std::vector<double>, std::vector<double>> Acc::ObservationScaling()
    const {
  std::vector<double> c = {0.5 * config_.p0, 0.5 * (config_.dv0_lo + config_.dv0_hi)};
  std::vector<double> s = {config_.p0,
                           std::max(0.5 * (config_.dv0_hi - config_.dv0_lo), 1.0)};
  AppendBoundsScaling(bounds_, c, s);
  return {c, s};
}

bool AccFeasibilityOracle(const Acc& env, const ParameterVector& theta) {
  EnvState s = env.Reset(theta);
  const Action brake = Action::Box({-1.0});
  for (int k = 0; k < env.horizon(); ++k) {
    StepOutcome o = env.Step(s, brake);
    if (o.unsafe) return false;
    if (o.truncated) return true;
    s = std::move(o.next);
  }
  return true;
}

}  // namespace fgelab::envs
