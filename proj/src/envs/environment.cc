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

#include "fgelab/envs/environment.h"

#include <cmath>
#include <sstream>

#include "fgelab/common/errors.h"

namespace fgelab::envs {

bool ParamBounds::Contains(std::span<const double> theta) const {
  if (theta.size() != lo.size()) return false;
  for (size_t i = 0; i < theta.size(); ++i) {
    if (!(theta[i] >= lo[i] && theta[i] <= hi[i])) return false;
  }
  return true;
}

std::vector<double> ParamBounds::Width() const {
  std::vector<double> w(lo.size());
  for (size_t i = 0; i < lo.size(); ++i) w[i] = hi[i] - lo[i];
  return w;
}

std::vector<Action> AvoidEnvironment::EnumerableActions() const {
  std::vector<Action> out;
  ActionSpace space = action_space();
  if (space.discrete()) {
    for (int i = 0; i < space.size; ++i) out.push_back(Action::Discrete(i));
  }
  return out;
}

void AvoidEnvironment::BuildObservation(const EnvState& state,
                                        std::span<double> out) const {
  Require(out.size() == static_cast<size_t>(observation_dim()),
          "BuildObservation: output width");
  size_t i = 0;
  for (double v : state.x) out[i++] = v;
  for (double v : state.theta.values) out[i++] = v;
}

EnvState AvoidEnvironment::Reset(const ParameterVector& theta) const {
  if (!bounds().Contains(theta.values)) {
    std::ostringstream msg;
    msg << name() << ": parameter out of bounds (";
    for (size_t i = 0; i < theta.size(); ++i) {
      msg << (i ? ", " : "") << theta[i];
    }
    msg << ")";
    throw ContractViolation(msg.str());
  }
  EnvState s;
  s.x = InitialState(theta);
  s.k = 0;
  s.theta = theta;
  return s;
}

StepOutcome AvoidEnvironment::Step(const EnvState& state,
                                   const Action& action) const {
  ActionSpace space = action_space();
  if (space.discrete()) {
    if (action.index < 0 || action.index >= space.size) {
      throw ContractViolation(name() + ": discrete action out of range");
    }
  } else if (action.values.size() != static_cast<size_t>(space.size)) {
    throw ContractViolation(name() + ": box action has wrong dimension");
  }
  StepOutcome out;
  out.next.x = Transition(state, action);
  out.next.k = state.k + 1;
  out.next.theta = state.theta;
  out.h_value = SafetyMargin(out.next.x, out.next.k, state.theta);
  out.unsafe = out.h_value > 0.0;
  if (!out.unsafe) {
    out.reached_goal = ReachedGoal(out.next.x, state.theta);
    out.truncated = out.reached_goal || out.next.k >= horizon();
  }
  return out;
}

std::vector<double> AvoidEnvironment::Observation(const EnvState& state) const {
  std::vector<double> obs(observation_dim());
  BuildObservation(state, obs);
  return obs;
}

double RewardOf(double h_value) { return h_value > 0.0 ? -1.0 : 0.0; }

void AppendBoundsScaling(const ParamBounds& bounds, std::vector<double>& center,
                         std::vector<double>& scale) {
  for (size_t i = 0; i < bounds.dim(); ++i) {
    center.push_back(0.5 * (bounds.lo[i] + bounds.hi[i]));
    double half = 0.5 * (bounds.hi[i] - bounds.lo[i]);
    scale.push_back(half > 0.0 ? half : 1.0);
  }
}

}  // namespace fgelab::envs
