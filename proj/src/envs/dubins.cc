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

#include "fgelab/envs/dubins.h"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "fgelab/common/errors.h"

namespace fgelab::envs {

Dubins::Dubins(DubinsConfig config) : config_(config) {
  Require(config_.r_inner > 0.0 && config_.w_lane > 0.0 && config_.eps >= 0.0,
          "Dubins: bad track geometry");
  Require(config_.v_min > 0.0 && config_.v_min <= config_.v0 &&
              config_.v0 <= config_.v_max,
          "Dubins: bad speed range");
  Require(config_.dt > 0.0 && config_.horizon >= 1, "Dubins: bad dt/horizon");
  Require(config_.omega_lo <= config_.omega_hi, "Dubins: bad omega range");
  bounds_.lo = {config_.omega_lo, config_.omega_lo};
  bounds_.hi = {config_.omega_hi, config_.omega_hi};
}

double Dubins::r_outer() const {
  return config_.r_inner + 2.0 * config_.w_lane + 2.0 * config_.eps;
}

double Dubins::lane_center(int lane) const {
  return config_.r_inner + config_.eps + config_.w_lane * (lane + 0.5);
}

std::array<double, 2> Dubins::OtherCar(int i, int k,
                                       const ParameterVector& theta) const {
  double phase = (i == 0 ? config_.phase1 : config_.phase2) +
                 theta[i] * config_.dt * k;
  double r = lane_center(i == 0 ? 0 : 1);
  return {r * std::cos(phase), r * std::sin(phase)};
}

ParameterVector Dubins::SampleBase(Rng& rng) const {
  double w1 = rng.Uniform(bounds_.lo[0], bounds_.hi[0]);
  double w2 = rng.Uniform(bounds_.lo[1], bounds_.hi[1]);
  return ParameterVector{w1, w2};
}

std::vector<double> Dubins::InitialState(const ParameterVector&) const {
  return {lane_center(0), 0.0, 0.5 * std::numbers::pi, config_.v0};
}

std::vector<double> Dubins::Transition(const EnvState& state,
                                       const Action& action) const {
  double steer = std::clamp(action.values[0], -1.0, 1.0);
  double acc = std::clamp(action.values[1], -1.0, 1.0) * config_.acc_max;
  double r_mid = 0.5 * (config_.r_inner + r_outer());
  double v = state.x[3];
  double omega = steer * 2.0 * v / r_mid;
  double heading = std::remainder(state.x[2] + omega * config_.dt,
                                  2.0 * std::numbers::pi);
  double v_next = std::clamp(v + acc * config_.dt, config_.v_min, config_.v_max);
  double px = state.x[0] + v_next * std::cos(heading) * config_.dt;
  double py = state.x[1] + v_next * std::sin(heading) * config_.dt;
  return {px, py, heading, v_next};
}

double Dubins::SafetyMargin(std::span<const double> x, int k,
                            const ParameterVector& theta) const {
  double rho = std::hypot(x[0], x[1]);
  double r = config_.car_radius;
  double h = std::max(config_.r_inner + r - rho, rho - (r_outer() - r));
  for (int i = 0; i < 2; ++i) {
    auto c = OtherCar(i, k, theta);
    h = std::max(h, 2.0 * r - std::hypot(x[0] - c[0], x[1] - c[1]));
  }
  return h;
}

std::vector<Action> Dubins::EnumerableActions() const {
  std::vector<Action> out;
  for (double s : {-1.0, 0.0, 1.0}) {
    for (double a : {-1.0, 0.0, 1.0}) out.push_back(Action::Box({s, a}));
  }
  return out;
}

void Dubins::BuildObservation(const EnvState& state,
                              std::span<double> out) const {
  Require(out.size() == 10, "Dubins: observation width");
  for (int i = 0; i < 4; ++i) out[i] = state.x[i];
  out[4] = state.theta[0];
  out[5] = state.theta[1];
  for (int i = 0; i < 2; ++i) {
    double phase = (i == 0 ? config_.phase1 : config_.phase2) +
                   state.theta[i] * config_.dt * state.k;
    out[6 + 2 * i] = std::cos(phase);
    out[7 + 2 * i] = std::sin(phase);
  }
}

std::pair<std::vector<double>, std::vector<double>>
Dubins::ObservationScaling() const {
  double ro = r_outer();
  std::vector<double> c = {0.0, 0.0, 0.0, 0.5 * (config_.v_min + config_.v_max)};
  std::vector<double> s = {ro, ro, std::numbers::pi,
                           0.5 * (config_.v_max - config_.v_min)};
  AppendBoundsScaling(bounds_, c, s);
  for (int i = 0; i < 4; ++i) {
    c.push_back(0.0);
    s.push_back(1.0);
  }
  return {c, s};
}

}  // namespace fgelab::envs
