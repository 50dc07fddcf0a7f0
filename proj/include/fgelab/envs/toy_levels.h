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

#ifndef FGELAB_ENVS_TOY_LEVELS_H_
#define FGELAB_ENVS_TOY_LEVELS_H_

#include "fgelab/envs/environment.h"

namespace fgelab::envs {

struct ToyLevelsConfig {
  double width = 10.0;
  int spawn_height = 20;
  double shift = 1.0;
  double disturbance = 0.5;
  // Spawn spans, ordered left to right. The infeasible span is the open gap
  // between easy_hi and hard_lo.
  double easy_lo = 0.0;
  double easy_hi = 9.0;
  double hard_lo = 9.999;
  double hard_hi = 10.0;
  // Base-distribution mass of each span.
  double p_easy = 0.9;
  double p_hard = 0.0001;
  double p_infeasible = 0.0999;
  // Corridor rows run from spawn_height - 1 down for corridor_rows rows.
  // On them [wall_lo, corridor_lo) is red and cells at or right of
  // corridor_lo drift right by `disturbance` each step.
  double wall_lo = 8.0;
  double corridor_lo = 8.999;
  int corridor_rows = 2;
};

// Falling-agent level. theta = x0, the spawn column. The agent falls one row
// per step from y = spawn_height and shifts left/right/not at all. Below the
// spawn a walled corridor on [corridor_lo, width] pushes right, so a column
// keeps its offset mod `shift` fixed per row. The row under the corridor is
// red across [wall_lo, width] except thin slots at the offset of the hard
// span: infeasible spawns can linger in the corridor but never leave it,
// and hard spawns leave only by alternating stay and left. Reaching y = 0
// safely is an absorbing goal. State x = (px, py).
class ToyLevels final : public AvoidEnvironment {
 public:
  enum ActionIndex { kLeft = 0, kRight = 1, kStay = 2 };
  enum class Region { kEasy, kInfeasible, kHard };

  explicit ToyLevels(ToyLevelsConfig config = {});

  const ToyLevelsConfig& config() const { return config_; }
  Region RegionOf(double x0) const;
  // True iff the cell at (px, py) is red.
  bool Blocked(double px, int py) const;

  std::string name() const override { return "toy_levels"; }
  const ParamBounds& bounds() const override { return bounds_; }
  ParameterVector SampleBase(Rng& rng) const override;
  std::vector<double> InitialState(const ParameterVector& theta) const override;
  std::vector<double> Transition(const EnvState& state,
                                 const Action& action) const override;
  double SafetyMargin(std::span<const double> x, int k,
                      const ParameterVector& theta) const override;
  bool ReachedGoal(std::span<const double> x,
                   const ParameterVector& theta) const override;
  ActionSpace action_space() const override {
    return {ActionSpace::Kind::kDiscrete, 3};
  }
  int state_dim() const override { return 2; }
  int horizon() const override { return config_.spawn_height; }
  std::unique_ptr<AvoidEnvironment> Clone() const override {
    return std::make_unique<ToyLevels>(*this);
  }
  std::pair<std::vector<double>, std::vector<double>> ObservationScaling()
      const override;

 private:
  bool InCorridor(int py) const;
  bool InExitSlot(double px) const;

  ToyLevelsConfig config_;
  ParamBounds bounds_;
};

}  // namespace fgelab::envs

#endif  // FGELAB_ENVS_TOY_LEVELS_H_
