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


#include "fgelab/harness/evaluate.h"

#include <algorithm>
#include <memory>

#include "fgelab/common/errors.h"
#include "fgelab/common/rng.h"
#include "fgelab/envs/toy_levels.h"

namespace fgelab::harness {

ActionFn GreedyPolicy(const rl::Policy& policy,
                      const envs::AvoidEnvironment& env) {
  auto pol = std::make_shared<const rl::Policy>(policy);
  auto model = std::shared_ptr<const envs::AvoidEnvironment>(env.Clone());
  return [pol, model](const envs::EnvState& s) {
    Matrix obs(1, model->observation_dim());
    std::vector<double> o = model->Observation(s);
    std::copy(o.begin(), o.end(), obs.Row(0).begin());
    nn::ForwardCache cache;
    const Matrix& raw = pol->Raw(obs, cache);
    std::vector<double> a(pol->action_width());
    pol->Mode(raw.Row(0), a);
    return pol->ToEnvAction(a);
  };
}

bool RolloutSafe(const ActionFn& act, const envs::AvoidEnvironment& env,
                 const envs::ParameterVector& theta) {
  envs::EnvState s = env.Reset(theta);
  for (;;) {
    envs::StepOutcome o = env.Step(s, act(s));
    if (o.unsafe) return false;
    if (o.truncated) return true;
    s = std::move(o.next);
  }
}

Mask Evaluate(const ActionFn& act, const envs::AvoidEnvironment& env,
              const std::vector<envs::ParameterVector>& grid) {
  for (const auto& theta : grid) {
    Require(env.bounds().Contains(theta.values),
            "evaluation point outside the parameter bounds");
  }
  Mask out(grid.size());
  for (size_t i = 0; i < grid.size(); ++i) {
    out[i] = RolloutSafe(act, env, grid[i]);
  }
  return out;
}

std::vector<envs::ParameterVector> LatticeGrid(const envs::ParamBounds& bounds,
                                               int per_dim) {
  Require(per_dim >= 2, "lattice needs two or more points per axis");
  const size_t d = bounds.dim();
  size_t total = 1;
  for (size_t j = 0; j < d; ++j) total *= static_cast<size_t>(per_dim);
  std::vector<envs::ParameterVector> grid;
  grid.reserve(total);
  std::vector<int> idx(d, 0);
  for (size_t n = 0; n < total; ++n) {
    envs::ParameterVector theta{std::vector<double>(d)};
    for (size_t j = 0; j < d; ++j) {
      double t = static_cast<double>(idx[j]) / (per_dim - 1);
      theta[j] = idx[j] == per_dim - 1
                     ? bounds.hi[j]
                     : bounds.lo[j] + t * (bounds.hi[j] - bounds.lo[j]);
    }
    grid.push_back(std::move(theta));
    // Last axis varies fastest.
    for (size_t j = d; j-- > 0;) {
      if (++idx[j] < per_dim) break;
      idx[j] = 0;
    }
  }
  return grid;
}

std::vector<envs::ParameterVector> EvaluationGrid(
    const envs::AvoidEnvironment& env, const GridSpec& spec) {
  if (spec.sampled > 0) {
    Rng rng(spec.sample_seed, streams::kEval);
    std::vector<envs::ParameterVector> grid;
    for (int i = 0; i < spec.sampled; ++i) grid.push_back(env.SampleBase(rng));
    return grid;
  }
  const size_t d = env.bounds().dim();
  int per_dim = d == 1 ? spec.per_dim_1d : d == 2 ? spec.per_dim_2d
                                                   : spec.per_dim_nd;
  return LatticeGrid(env.bounds(), per_dim);
}

std::vector<envs::ParameterVector> HardRegionGrid(
    const envs::AvoidEnvironment& env, int points) {
  const auto* toy = dynamic_cast<const envs::ToyLevels*>(&env);
  if (toy == nullptr || points <= 0) return {};
  const auto& c = toy->config();
  std::vector<envs::ParameterVector> grid;
  for (int i = 0; i < points; ++i) {
    double t = points == 1 ? 0.5 : static_cast<double>(i) / (points - 1);
    grid.push_back({i == points - 1 && points > 1
                        ? c.hard_hi
                        : c.hard_lo + t * (c.hard_hi - c.hard_lo)});
  }
  return grid;
}

}  // namespace fgelab::harness
