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

#ifndef FGELAB_ENVS_DUBINS_H_
#define FGELAB_ENVS_DUBINS_H_

#include <array>

#include "fgelab/envs/environment.h"

namespace fgelab::envs {

struct DubinsConfig {
  double r_inner = 3.0;
  double w_lane = 0.5;
  double eps = 0.05;
  double car_radius = 0.2;
  double v_min = 0.5;
  double v_max = 2.0;
  double v0 = 1.0;
  double acc_max = 1.0;
  double dt = 0.1;
  int horizon = 300;
  double omega_lo = 0.09817477042468103;   // pi / 32
  double omega_hi = 0.8639379797371932;    // 11 pi / 40
  // Initial angular positions of the two other cars.
  double phase1 = 1.9634954084936207;      // 5 pi / 8, inner lane
  double phase2 = 2.748893571891069;       // 7 pi / 8, outer lane
};

// Two-lane circular track. The ego car is a Dubins car x = (px, py, heading,
// v) starting on the inner lane at angle 0 and driving counterclockwise.
// theta = (omega1, omega2) are the constant angular velocities of two other
// cars that start further along the track. Controls (steer, acc) in [-1, 1]^2:
//   omega = steer * 2 v / r_mid,  v' = clip(v + acc_max * acc * dt).
// The observation appends the other cars' positions on the unit circle.
class Dubins final : public AvoidEnvironment {
 public:
  explicit Dubins(DubinsConfig config = {});

  const DubinsConfig& config() const { return config_; }
  double r_outer() const;
  double lane_center(int lane) const;
  // Position of other car i (0 or 1) at step k.
  std::array<double, 2> OtherCar(int i, int k, const ParameterVector& theta) const;

  std::string name() const override { return "dubins"; }
  const ParamBounds& bounds() const override { return bounds_; }
  ParameterVector SampleBase(Rng& rng) const override;
  std::vector<double> InitialState(const ParameterVector& theta) const override;
  std::vector<double> Transition(const EnvState& state,
                                 const Action& action) const override;
  double SafetyMargin(std::span<const double> x, int k,
                      const ParameterVector& theta) const override;
  ActionSpace action_space() const override {
    return {ActionSpace::Kind::kBox, 2};
  }
  int state_dim() const override { return 4; }
  int horizon() const override { return config_.horizon; }
  std::vector<Action> EnumerableActions() const override;
  std::unique_ptr<AvoidEnvironment> Clone() const override {
    return std::make_unique<Dubins>(*this);
  }
  int observation_dim() const override { return 10; }
  void BuildObservation(const EnvState& state,
                        std::span<double> out) const override;
  std::pair<std::vector<double>, std::vector<double>> ObservationScaling()
      const override;

 private:
  DubinsConfig config_;
  ParamBounds bounds_;
};

}  // namespace fgelab::envs

#endif  // FGELAB_ENVS_DUBINS_H_
