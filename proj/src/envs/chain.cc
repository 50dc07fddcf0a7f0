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

#include "fgelab/envs/chain.h"

#include <algorithm>
#include <cmath>

#include "fgelab/common/errors.h"

namespace fgelab::envs {

ChainMdp::ChainMdp(std::vector<int> lengths) : lengths_(std::move(lengths)) {
  Require(!lengths_.empty(), "ChainMdp: at least one chain");
  for (int h : lengths_) Require(h >= 2, "ChainMdp: chain length must be >= 2");
  bounds_.lo = {1.0};
  bounds_.hi = {static_cast<double>(lengths_.size())};
  horizon_ = *std::max_element(lengths_.begin(), lengths_.end()) - 1;
}

int ChainMdp::ChainLength(const ParameterVector& theta) const {
  int idx = static_cast<int>(std::lround(theta[0])) - 1;
  idx = std::clamp(idx, 0, num_chains() - 1);
  return lengths_[idx];
}

ParameterVector ChainMdp::SampleBase(Rng& rng) const {
  return ParameterVector{
      static_cast<double>(1 + rng.Below(lengths_.size()))};
}

std::vector<double> ChainMdp::InitialState(const ParameterVector&) const {
  return {1.0, 0.0};
}

std::vector<double> ChainMdp::Transition(const EnvState& state,
                                         const Action& action) const {
  if (action.index == kLeft) return {state.x[0], 1.0};
  return {state.x[0] + 1.0, 0.0};
}

double ChainMdp::SafetyMargin(std::span<const double> x, int,
                              const ParameterVector&) const {
  return x[1] > 0.5 ? 1.0 : -1.0;
}

bool ChainMdp::ReachedGoal(std::span<const double> x,
                           const ParameterVector& theta) const {
  return x[0] >= ChainLength(theta);
}

std::pair<std::vector<double>, std::vector<double>>
ChainMdp::ObservationScaling() const {
  double h = horizon_ + 1;
  std::vector<double> c = {0.5 * (h + 1.0), 0.5};
  std::vector<double> s = {0.5 * std::max(h - 1.0, 1.0), 0.5};
  AppendBoundsScaling(bounds_, c, s);
  return {c, s};
}

}  // namespace fgelab::envs
