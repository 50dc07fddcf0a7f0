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

#ifndef FGELAB_FGE_BASELINES_H_
#define FGELAB_FGE_BASELINES_H_

#include <utility>
#include <vector>

#include "fgelab/common/rng.h"
#include "fgelab/envs/environment.h"
#include "fgelab/feasibility/classifier.h"
#include "fgelab/rl/rollout.h"

namespace fgelab::fge {

// Regular lattice of cells over the parameter box.
class ThetaGrid {
 public:
  ThetaGrid() = default;
  ThetaGrid(envs::ParamBounds bounds, int per_dim);

  size_t size() const { return size_; }
  envs::ParameterVector Center(size_t cell) const;
  envs::ParameterVector SampleInCell(size_t cell, Rng& rng) const;
  size_t CellOf(const envs::ParameterVector& theta) const;
  std::vector<envs::ParameterVector> Centers() const;

 private:
  envs::ParamBounds bounds_;
  int per_dim_ = 0;
  size_t size_ = 0;
};

// Default lattice resolution: 256 cells in 1-D, 32 per axis in 2-D.
int DefaultCellsPerDim(size_t dim);

// Draws from `weights` (nonnegative, positive total) by inverse CDF.
size_t SampleIndex(const std::vector<double>& weights, Rng& rng);

struct VdsSettings {
  int ensemble = 3;
  int cells_per_dim = 0;  // 0 picks DefaultCellsPerDim
  int samples = 2048;
  int epochs = 2;
};

// Value-disagreement sampling. Each ensemble member predicts the episode
// safety of a start parameter and is trained on its own bootstrap resample
// of the latest episodes; cells are drawn in proportion to the ensemble's
// standard deviation, falling back to the base sampler when it is zero.
class VdsSampler {
 public:
  VdsSampler() = default;
  VdsSampler(const envs::ParamBounds& bounds, const VdsSettings& settings,
             const feasibility::ClassifierConfig& net, Rng& init);

  void Update(const std::vector<rl::EpisodeOutcome>& episodes, Rng& rng);
  // Recomputes the per-cell disagreement from the current members.
  void Refresh();
  envs::ParameterVector Sample(const feasibility::BaseSampler& base,
                               Rng& rng) const;

  std::vector<feasibility::ParamClassifier>& members() { return members_; }
  const std::vector<double>& disagreement() const { return disagreement_; }

 private:
  VdsSettings settings_;
  ThetaGrid grid_;
  std::vector<envs::ParameterVector> centers_;
  std::vector<feasibility::ParamClassifier> members_;
  std::vector<double> disagreement_;
  double total_ = 0.0;
};

struct PlrSettings {
  double temperature = 0.1;
  double staleness = 0.1;
  double replay_prob = 0.5;
  int capacity = 256;
};

// Prioritized level replay with rank prioritization and a staleness term.
class PlrSampler {
 public:
  PlrSampler() = default;
  explicit PlrSampler(const PlrSettings& settings);

  // Rank weights (1 / rank)^(1 / temperature), normalized; rank 1 is the
  // highest score and ties keep index order.
  static std::vector<double> RankWeights(const std::vector<double>& scores,
                                         double temperature);
  // (1 - staleness) * rank weights + staleness * age weights.
  std::vector<double> ReplayDistribution() const;

  envs::ParameterVector Sample(const feasibility::BaseSampler& base, Rng& rng);
  // Scores the levels that finished this iteration. Unseen levels enter the
  // store, evicting the lowest score once it is full.
  void Observe(const std::vector<std::pair<envs::ParameterVector, double>>& scored);

  size_t size() const { return levels_.size(); }
  const std::vector<double>& scores() const { return scores_; }

 private:
  PlrSettings settings_;
  std::vector<envs::ParameterVector> levels_;
  std::vector<double> scores_;
  std::vector<long long> last_sampled_;
  long long clock_ = 0;
};

// Mean absolute advantage over the steps of each episode that ended in the
// batch (steps from earlier batches are not included).
std::vector<std::pair<envs::ParameterVector, double>> EpisodeScores(
    const rl::RolloutBatch& batch, const std::vector<double>& advantages);

struct RarlSettings {
  int policy_iterations = 50;
  int adversary_iterations = 50;
  int cells_per_dim = 0;  // 0 picks DefaultCellsPerDim
  double temperature = 0.1;
  double uniform_mix = 0.1;
};

// Adversary over a lattice of parameter cells: a bandit that tracks each
// cell's observed failure rate and samples a softmax over it, mixed with
// uniform. Unvisited cells count as always failing.
class RarlAdversary {
 public:
  RarlAdversary() = default;
  RarlAdversary(const envs::ParamBounds& bounds, const RarlSettings& settings);

  // True during the policy's share of each alternation round.
  bool PolicyPhase(long long iteration) const;
  envs::ParameterVector Sample(Rng& rng) const;
  void Observe(const std::vector<rl::EpisodeOutcome>& episodes);
  std::vector<double> Distribution() const;
  const std::vector<double>& failure_rate() const { return failure_; }

 private:
  RarlSettings settings_;
  ThetaGrid grid_;
  std::vector<double> failure_;
  std::vector<long long> visits_;
};

}  // namespace fgelab::fge

#endif  // FGELAB_FGE_BASELINES_H_
