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

#ifndef FGELAB_FEASIBILITY_FEASIBLE_SET_H_
#define FGELAB_FEASIBILITY_FEASIBLE_SET_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <unordered_map>
#include <vector>

#include "fgelab/common/rng.h"
#include "fgelab/envs/environment.h"
#include "fgelab/rl/rollout.h"

namespace fgelab::feasibility {

// Append-only store of parameters observed safe. Two points are duplicates
// when they are closer than delta_i = (hi_i - lo_i) / resolution in every
// dimension.
class FeasibleSet {
 public:
  FeasibleSet() = default;
  explicit FeasibleSet(envs::ParamBounds bounds, int resolution = 256);

  // Returns true if theta was added.
  bool Record(const envs::ParameterVector& theta);
  bool ContainsNear(const envs::ParameterVector& theta) const;

  size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }
  const std::vector<envs::ParameterVector>& points() const { return points_; }
  const envs::ParamBounds& bounds() const { return bounds_; }
  const std::vector<double>& delta() const { return delta_; }
  int resolution() const { return resolution_; }

  std::string ToJsonString() const;
  static FeasibleSet FromJsonString(const std::string& text);
  void Save(const std::filesystem::path& path) const;

 private:
  using Cell = std::vector<int64_t>;
  struct CellHash {
    size_t operator()(const Cell& c) const;
  };

  Cell CellOf(const envs::ParameterVector& theta) const;
  bool Duplicate(const envs::ParameterVector& a,
                 const envs::ParameterVector& b) const;

  envs::ParamBounds bounds_;
  int resolution_ = 256;
  std::vector<double> delta_;
  std::vector<envs::ParameterVector> points_;
  std::unordered_map<Cell, std::vector<size_t>, CellHash> grid_;
};

enum class SampleSource { kMeasuredFeasible, kOnPolicy };

struct LabeledParamSample {
  envs::ParameterVector theta;
  int label = 0;
  SampleSource source = SampleSource::kOnPolicy;
};

struct PmixDraw {
  std::vector<LabeledParamSample> samples;
  bool fell_back = false;  // D_f was empty; on-policy samples only
};

inline constexpr size_t kPositiveReplayCap = 50000;

// Each sample: with probability alpha a uniform point of the most recent
// kPositiveReplayCap entries of D_f labeled 1, otherwise a uniform episode
// of the latest rollouts labeled by its outcome.
PmixDraw DrawPmix(const FeasibleSet& set,
                  const std::vector<rl::EpisodeOutcome>& episodes,
                  double alpha, int n, Rng& rng);

}  // namespace fgelab::feasibility

#endif  // FGELAB_FEASIBILITY_FEASIBLE_SET_H_
