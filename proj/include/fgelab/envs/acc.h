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

#ifndef FGELAB_ENVS_ACC_H_
#define FGELAB_ENVS_ACC_H_

#include "fgelab/envs/environment.h"

namespace fgelab::envs {

struct AccConfig {
  double dt = 0.1;
  double p0 = 10.0;
  int horizon = 200;
  double a_max_lo = 0.5;
  double a_max_hi = 5.0;
  double dv0_lo = -5.0;
  double dv0_hi = 10.0;
};

// Adaptive cruise control. theta = (a_max, dv0); x = (gap dp, closing speed
// dv). One box action u in [-1, 1] commands acceleration a = a_max * u of
// the closing speed, so u = -1 is full braking:
//   dp' = dp - dv * dt,  dv' = dv + a * dt,  h = -dp.
class Acc final : public AvoidEnvironment {
 public:
  explicit Acc(AccConfig config = {});

  const AccConfig& config() const { return config_; }

  std::string name() const override { return "acc"; }
  const ParamBounds& bounds() const override { return bounds_; }
  ParameterVector SampleBase(Rng& rng) const override;
  std::vector<double> InitialState(const ParameterVector& theta) const override;
  std::vector<double> Transition(const EnvState& state,
                                 const Action& action) const override;
  double SafetyMargin(std::span<const double> x, int k,
                      const ParameterVector& theta) const override;
  ActionSpace action_space() const override {
    return {ActionSpace::Kind::kBox, 1};
  }
  int state_dim() const override { return 2; }
  int horizon() const override { return config_.horizon; }
  std::vector<Action> EnumerableActions() const override;
  std::unique_ptr<AvoidEnvironment> Clone() const override {
    return std::make_unique<Acc>(*this);
  }
  std::pair<std::vector<double>, std::vector<double>> ObservationScaling()
      const override;

 private:
  AccConfig config_;
  ParamBounds bounds_;
};

// True iff full braking keeps the system safe for the whole horizon.
bool AccFeasibilityOracle(const Acc& env, const ParameterVector& theta);

}  // namespace fgelab::envs

#endif  // FGELAB_ENVS_ACC_H_
