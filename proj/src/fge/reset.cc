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

#include "fgelab/fge/reset.h"

#include <cmath>

#include "fgelab/common/errors.h"

namespace fgelab::fge {

void ResetMixWeights::Validate() const {
  Require(p_base >= 0.0 && p_explore >= 0.0 && p_rehearse >= 0.0,
          "reset weights must be nonnegative");
  Require(std::abs(p_base + p_explore + p_rehearse - 1.0) <= 1e-9,
          "reset weights must sum to 1");
}

const envs::ParameterVector& RehearsalBuffer::Uniform(Rng& rng) const {
  Require(!entries_.empty(), "sampling from an empty rehearsal buffer");
  return entries_[rng.Below(entries_.size())];
}

ResetDraw SampleReset(const ResetMixWeights& weights,
                      const feasibility::BaseSampler& base,
                      const FeasibilityFn& q, double beta,
                      const RehearsalBuffer& buffer, int max_tries,
                      Rng& branch_rng, Rng& theta_rng) {
  double p_base = weights.p_base;
  double p_explore = weights.p_explore;
  if (buffer.empty()) {
    double rest = p_base + p_explore;
    if (rest > 0.0) {
      p_base /= rest;
      p_explore /= rest;
    } else {
      p_base = 1.0;
      p_explore = 0.0;
    }
  }
  double u = branch_rng.Uniform();
  ResetDraw draw;
  if (u < p_base) {
    draw.branch = ResetBranch::kBase;
    draw.theta = base(theta_rng);
  } else if (u - p_base < p_explore || buffer.empty()) {
    draw.branch = ResetBranch::kExplore;
    feasibility::InfeasibleDraw d =
        feasibility::SampleInfeasible(q, base, beta, max_tries, theta_rng);
    draw.theta = std::move(d.theta);
    draw.exhausted = d.exhausted;
  } else {
    draw.branch = ResetBranch::kRehearse;
    draw.theta = buffer.Uniform(theta_rng);
  }
  return draw;
}

std::optional<envs::ParameterVector> BestResponse(
    const std::function<std::vector<double>(
        const std::vector<envs::ParameterVector>&)>& predict,
    const feasibility::FeasibleSet& set, int n_candidates, Rng& rng) {
  Require(n_candidates >= 1, "best response needs at least one candidate");
  if (set.empty()) return std::nullopt;
  std::vector<envs::ParameterVector> cands;
  if (static_cast<size_t>(n_candidates) >= set.size()) {
    cands = set.points();  // small sets are enumerated
  } else {
    cands.reserve(n_candidates);
    for (int i = 0; i < n_candidates; ++i) {
      cands.push_back(set.points()[rng.Below(set.size())]);
    }
  }
  std::vector<double> p = predict(cands);
  Require(p.size() == cands.size(), "predictor returned the wrong count");
  size_t best = 0;
  for (size_t i = 1; i < p.size(); ++i) {
    if (p[i] < p[best]) best = i;
  }
  return cands[best];
}

}  // namespace fgelab::fge
