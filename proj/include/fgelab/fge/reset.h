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

#ifndef FGELAB_FGE_RESET_H_
#define FGELAB_FGE_RESET_H_

#include <functional>
#include <optional>
#include <vector>

#include "fgelab/common/rng.h"
#include "fgelab/envs/environment.h"
#include "fgelab/feasibility/classifier.h"
#include "fgelab/feasibility/feasible_set.h"

namespace fgelab::fge {

struct ResetMixWeights {
  double p_base = 0.02;
  double p_explore = 0.88;
  double p_rehearse = 0.10;

  void Validate() const;
};

// Append-only maximizer history. Entries are taken from D_f.
class RehearsalBuffer {
 public:
  void Append(const envs::ParameterVector& theta) { entries_.push_back(theta); }
  bool empty() const { return entries_.empty(); }
  size_t size() const { return entries_.size(); }
  const std::vector<envs::ParameterVector>& entries() const { return entries_; }
  const envs::ParameterVector& Uniform(Rng& rng) const;

 private:
  std::vector<envs::ParameterVector> entries_;
};

enum class ResetBranch { kBase, kExplore, kRehearse };

struct ResetDraw {
  envs::ParameterVector theta;
  ResetBranch branch = ResetBranch::kBase;
  bool exhausted = false;  // explore branch fell back to its last base draw
};

using FeasibilityFn = std::function<double(const envs::ParameterVector&)>;

// Three-way reset mixture. The branch is chosen from branch_rng and the
// parameter from theta_rng, so the parameter stream under weights (1, 0, 0)
// is exactly the base sampler's stream. An empty buffer hands its mass to
// the other two branches in proportion to their weights.
ResetDraw SampleReset(const ResetMixWeights& weights,
                      const feasibility::BaseSampler& base,
                      const FeasibilityFn& q, double beta,
                      const RehearsalBuffer& buffer, int max_tries,
                      Rng& branch_rng, Rng& theta_rng);

// Among n uniform draws from D_f (all of D_f when n >= |D_f|), the one with
// the lowest predicted safety; the first wins ties. Empty when D_f is empty.
std::optional<envs::ParameterVector> BestResponse(
    const std::function<std::vector<double>(
        const std::vector<envs::ParameterVector>&)>& predict,
    const feasibility::FeasibleSet& set, int n_candidates, Rng& rng);

}  // namespace fgelab::fge

#endif  // FGELAB_FGE_RESET_H_
