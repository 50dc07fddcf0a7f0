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

#include "fgelab/envs/toy_levels.h"

#include <cmath>

#include "fgelab/common/errors.h"

namespace fgelab::envs {

ToyLevels::ToyLevels(ToyLevelsConfig config) : config_(config) {
  const auto& c = config_;
  Require(c.width > 0.0 && c.spawn_height >= 2, "ToyLevels: bad geometry");
  Require(c.easy_lo == 0.0 && c.easy_lo < c.easy_hi && c.easy_hi < c.hard_lo &&
              c.hard_lo <= c.hard_hi && c.hard_hi == c.width,
          "ToyLevels: spans must tile [0, width] as easy, infeasible, hard");
  Require(c.p_easy >= 0.0 && c.p_hard >= 0.0 && c.p_infeasible >= 0.0 &&
              std::abs(c.p_easy + c.p_hard + c.p_infeasible - 1.0) < 1e-9,
          "ToyLevels: span probabilities must sum to 1");
  // A net left step must not clear the wall.
  Require(c.shift > 0.0 && c.wall_lo <= c.corridor_lo &&
              c.corridor_lo <= c.easy_hi &&
              c.shift - c.disturbance < c.corridor_lo - c.wall_lo,
          "ToyLevels: bad corridor geometry");
  Require(c.corridor_rows >= 1 && c.corridor_rows < c.spawn_height,
          "ToyLevels: bad corridor length");
  bounds_.lo = {0.0};
  bounds_.hi = {c.width};
}

ToyLevels::Region ToyLevels::RegionOf(double x0) const {
  if (x0 <= config_.easy_hi) return Region::kEasy;
  if (x0 < config_.hard_lo) return Region::kInfeasible;
  return Region::kHard;
}

ParameterVector ToyLevels::SampleBase(Rng& rng) const {
  // Inverse CDF of the span mixture from a single uniform draw.
  const auto& c = config_;
  double u = rng.Uniform();
  double x;
  if (u < c.p_easy) {
    x = c.easy_lo + (u / c.p_easy) * (c.easy_hi - c.easy_lo);
  } else if (u < c.p_easy + c.p_infeasible) {
    double t = (u - c.p_easy) / c.p_infeasible;
    x = c.easy_hi + t * (c.hard_lo - c.easy_hi);
    if (x <= c.easy_hi) x = std::nextafter(c.easy_hi, c.hard_lo);
  } else {
    double t = (u - c.p_easy - c.p_infeasible) / c.p_hard;
    x = c.hard_lo + std::min(t, 1.0) * (c.hard_hi - c.hard_lo);
  }
  return ParameterVector{x};
}

std::vector<double> ToyLevels::InitialState(const ParameterVector& theta) const {
  return {theta[0], static_cast<double>(config_.spawn_height)};
}

bool ToyLevels::InCorridor(int py) const {
  int top = config_.spawn_height - 1;
  return py <= top && py > top - config_.corridor_rows;
}

std::vector<double> ToyLevels::Transition(const EnvState& state,
                                          const Action& action) const {
  double px = state.x[0];
  int py = static_cast<int>(std::lround(state.x[1]));
  double dx = 0.0;
  if (action.index == kLeft) dx = -config_.shift;
  if (action.index == kRight) dx = config_.shift;
  if (InCorridor(py) && px >= config_.corridor_lo) dx += config_.disturbance;
  return {px + dx, static_cast<double>(py - 1)};
}

bool ToyLevels::InExitSlot(double px) const {
  const auto& c = config_;
  constexpr double kTol = 1e-9;
  double offset = px - c.hard_lo - c.disturbance * c.corridor_rows;
  double f = offset - c.shift * std::floor(offset / c.shift);
  return f <= c.hard_hi - c.hard_lo + kTol || f >= c.shift - kTol;
}

bool ToyLevels::Blocked(double px, int py) const {
  const auto& c = config_;
  if (px < 0.0 || px > c.width) return true;
  if (InCorridor(py)) return px >= c.wall_lo && px < c.corridor_lo;
  if (py == c.spawn_height - 1 - c.corridor_rows) {
    return px >= c.wall_lo && !InExitSlot(px);
  }
  return false;
}

double ToyLevels::SafetyMargin(std::span<const double> x, int,
                               const ParameterVector&) const {
  return Blocked(x[0], static_cast<int>(std::lround(x[1]))) ? 1.0 : -1.0;
}

bool ToyLevels::ReachedGoal(std::span<const double> x,
                            const ParameterVector&) const {
  return x[1] <= 0.5;
}

std::pair<std::vector<double>, std::vector<double>>
ToyLevels::ObservationScaling() const {
  double hw = 0.5 * config_.width;
  double hh = 0.5 * config_.spawn_height;
  std::vector<double> c = {hw, hh};
  std::vector<double> s = {hw, hh};
  AppendBoundsScaling(bounds_, c, s);
  return {c, s};
}

}  // namespace fgelab::envs
