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

#ifndef FGELAB_ENVS_ENVIRONMENT_H_
#define FGELAB_ENVS_ENVIRONMENT_H_

// Parameterized avoid environments: x_{k+1} = f_theta(x_k, u), x_0 = s0(theta),
// unsafe set {x | h_theta(x) > 0}. Environments are immutable value-like
// objects; all episode state lives in EnvState.

#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fgelab/common/rng.h"

namespace fgelab::envs {

struct ParamBounds {
  std::vector<double> lo;
  std::vector<double> hi;

  size_t dim() const { return lo.size(); }
  bool Contains(std::span<const double> theta) const;
  std::vector<double> Width() const;
};

struct ParameterVector {
  std::vector<double> values;

  ParameterVector() = default;
  explicit ParameterVector(std::vector<double> v) : values(std::move(v)) {}
  ParameterVector(std::initializer_list<double> v) : values(v) {}

  size_t size() const { return values.size(); }
  double operator[](size_t i) const { return values[i]; }
  double& operator[](size_t i) { return values[i]; }
  bool operator==(const ParameterVector&) const = default;
};

struct ActionSpace {
  enum class Kind { kDiscrete, kBox };
  Kind kind = Kind::kDiscrete;
  int size = 0;  // number of actions (discrete) or action dimension (box)

  bool discrete() const { return kind == Kind::kDiscrete; }
};

// Discrete actions use index; box actions use values in [-1, 1]^dim, which
// environments clip and rescale to their physical ranges.
struct Action {
  int index = 0;
  std::vector<double> values;

  static Action Discrete(int i) { return Action{i, {}}; }
  static Action Box(std::vector<double> v) { return Action{0, std::move(v)}; }
};

struct EnvState {
  std::vector<double> x;
  int k = 0;
  ParameterVector theta;
};

struct StepOutcome {
  EnvState next;
  double h_value = 0.0;
  bool unsafe = false;
  // Episode ended safely: horizon reached or an absorbing safe goal entered.
  bool truncated = false;
  // Subset of truncated: the state is absorbing and safe forever, so its
  // continuation value is exactly zero.
  bool reached_goal = false;
};

class AvoidEnvironment {
 public:
  virtual ~AvoidEnvironment() = default;

  virtual std::string name() const = 0;
  virtual const ParamBounds& bounds() const = 0;
  virtual ParameterVector SampleBase(Rng& rng) const = 0;
  virtual std::vector<double> InitialState(const ParameterVector& theta) const = 0;
  virtual std::vector<double> Transition(const EnvState& state,
                                         const Action& action) const = 0;
  virtual double SafetyMargin(std::span<const double> x, int k,
                              const ParameterVector& theta) const = 0;
  virtual bool ReachedGoal(std::span<const double> /*x*/,
                           const ParameterVector& /*theta*/) const {
    return false;
  }
  virtual ActionSpace action_space() const = 0;
  virtual int state_dim() const = 0;
  virtual int horizon() const = 0;
  virtual std::unique_ptr<AvoidEnvironment> Clone() const = 0;

  // Finite action set used by exhaustive search. Discrete environments
  // return every action; box environments return a small representative set.
  virtual std::vector<Action> EnumerableActions() const;

  virtual int observation_dim() const {
    return state_dim() + static_cast<int>(bounds().dim());
  }
  // Default observation: concatenation of x and theta.
  virtual void BuildObservation(const EnvState& state,
                                std::span<double> out) const;
  // Affine normalization (center, half-range) applied by function
  // approximators to observations.
  virtual std::pair<std::vector<double>, std::vector<double>>
  ObservationScaling() const = 0;

  // Throws ContractViolation when theta is outside bounds().
  EnvState Reset(const ParameterVector& theta) const;
  StepOutcome Step(const EnvState& state, const Action& action) const;
  std::vector<double> Observation(const EnvState& state) const;
};

// Negative indicator reward: -1 when h > 0, otherwise 0.
double RewardOf(double h_value);

// Center/half-width scaling for theta, shared by most environments.
void AppendBoundsScaling(const ParamBounds& bounds, std::vector<double>& center,
                         std::vector<double>& scale);

}  // namespace fgelab::envs

#endif  // FGELAB_ENVS_ENVIRONMENT_H_
