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

#ifndef FGELAB_ENVS_CHAIN_H_
#define FGELAB_ENVS_CHAIN_H_

#include <vector>

#include "fgelab/envs/environment.h"

namespace fgelab::envs {

// Chain MDP with states s_1..s_H. Action 0 (a_L) fails immediately, action 1
// (a_R) advances; s_H is an absorbing safe goal. With several chains, the
// scalar parameter theta in {1..P} selects the chain length.
// State layout: x = (position, failed).
class ChainMdp final : public AvoidEnvironment {
 public:
  static constexpr int kLeft = 0;
  static constexpr int kRight = 1;

  explicit ChainMdp(std::vector<int> lengths);
  static ChainMdp Single(int length) { return ChainMdp({length}); }

  int ChainLength(const ParameterVector& theta) const;
  int num_chains() const { return static_cast<int>(lengths_.size()); }

  std::string name() const override { return "chain"; }
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
    return {ActionSpace::Kind::kDiscrete, 2};
  }
  int state_dim() const override { return 2; }
  int horizon() const override { return horizon_; }
  std::unique_ptr<AvoidEnvironment> Clone() const override {
    return std::make_unique<ChainMdp>(*this);
  }
  std::pair<std::vector<double>, std::vector<double>> ObservationScaling()
      const override;

 private:
  std::vector<int> lengths_;
  ParamBounds bounds_;
  int horizon_ = 1;
};

}  // namespace fgelab::envs

#endif  // FGELAB_ENVS_CHAIN_H_
