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

#include "fgelab/fge/baselines.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "fgelab/common/errors.h"

namespace fgelab::fge {

ThetaGrid::ThetaGrid(envs::ParamBounds bounds, int per_dim)
    : bounds_(std::move(bounds)), per_dim_(per_dim), size_(1) {
  Require(per_dim >= 1, "grid needs at least one cell per dimension");
  for (size_t d = 0; d < bounds_.dim(); ++d) size_ *= per_dim;
}

envs::ParameterVector ThetaGrid::Center(size_t cell) const {
  envs::ParameterVector theta;
  for (size_t d = 0; d < bounds_.dim(); ++d) {
    size_t j = cell % per_dim_;
    cell /= per_dim_;
    double w = (bounds_.hi[d] - bounds_.lo[d]) / per_dim_;
    theta.values.push_back(bounds_.lo[d] + (j + 0.5) * w);
  }
  return theta;
}

envs::ParameterVector ThetaGrid::SampleInCell(size_t cell, Rng& rng) const {
  envs::ParameterVector theta = Center(cell);
  for (size_t d = 0; d < bounds_.dim(); ++d) {
    double w = (bounds_.hi[d] - bounds_.lo[d]) / per_dim_;
    theta[d] = std::clamp(theta[d] + (rng.Uniform() - 0.5) * w, bounds_.lo[d],
                          bounds_.hi[d]);
  }
  return theta;
}

size_t ThetaGrid::CellOf(const envs::ParameterVector& theta) const {
  size_t cell = 0, stride = 1;
  for (size_t d = 0; d < bounds_.dim(); ++d) {
    double w = bounds_.hi[d] - bounds_.lo[d];
    long j = static_cast<long>(std::floor((theta[d] - bounds_.lo[d]) / w * per_dim_));
    j = std::clamp<long>(j, 0, per_dim_ - 1);
    cell += static_cast<size_t>(j) * stride;
    stride *= per_dim_;
  }
  return cell;
}

std::vector<envs::ParameterVector> ThetaGrid::Centers() const {
  std::vector<envs::ParameterVector> out;
  out.reserve(size_);
  for (size_t c = 0; c < size_; ++c) out.push_back(Center(c));
  return out;
}

int DefaultCellsPerDim(size_t dim) {
  if (dim <= 1) return 256;
  if (dim == 2) return 32;
  return 8;
}

size_t SampleIndex(const std::vector<double>& weights, Rng& rng) {
  double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  Require(total > 0.0, "sampling from zero total weight");
  double u = rng.Uniform() * total;
  for (size_t i = 0; i < weights.size(); ++i) {
    if (u < weights[i]) return i;
    u -= weights[i];
  }
  // Rounding left u at the top; return the last positive weight.
  for (size_t i = weights.size(); i-- > 0;) {
    if (weights[i] > 0.0) return i;
  }
  return weights.size() - 1;
}

VdsSampler::VdsSampler(const envs::ParamBounds& bounds,
                       const VdsSettings& settings,
                       const feasibility::ClassifierConfig& net, Rng& init)
    : settings_(settings) {
  Require(settings.ensemble >= 2, "VDS needs at least two members");
  int per_dim = settings.cells_per_dim > 0 ? settings.cells_per_dim
                                           : DefaultCellsPerDim(bounds.dim());
  grid_ = ThetaGrid(bounds, per_dim);
  centers_ = grid_.Centers();
  for (int m = 0; m < settings.ensemble; ++m) {
    members_.emplace_back(bounds, net, init);
  }
  Refresh();
}

void VdsSampler::Update(const std::vector<rl::EpisodeOutcome>& episodes,
                        Rng& rng) {
  if (episodes.empty()) return;
  for (auto& member : members_) {
    std::vector<envs::ParameterVector> thetas;
    std::vector<int> labels;
    for (int k = 0; k < settings_.samples; ++k) {
      const auto& ep = episodes[rng.Below(episodes.size())];
      thetas.push_back(ep.theta);
      labels.push_back(ep.safe ? 1 : 0);
    }
    member.Train(thetas, labels, settings_.epochs, rng);
  }
  Refresh();
}

void VdsSampler::Refresh() {
  std::vector<std::vector<double>> preds;
  for (const auto& m : members_) preds.push_back(m.Probabilities(centers_));
  const double n = static_cast<double>(members_.size());
  disagreement_.assign(centers_.size(), 0.0);
  total_ = 0.0;
  for (size_t c = 0; c < centers_.size(); ++c) {
    double mean = 0.0;
    for (const auto& p : preds) mean += p[c];
    mean /= n;
    double var = 0.0;
    for (const auto& p : preds) var += (p[c] - mean) * (p[c] - mean);
    disagreement_[c] = std::sqrt(var / n);
    total_ += disagreement_[c];
  }
}

envs::ParameterVector VdsSampler::Sample(const feasibility::BaseSampler& base,
                                         Rng& rng) const {
  if (!(total_ > 1e-12)) return base(rng);
  return grid_.SampleInCell(SampleIndex(disagreement_, rng), rng);
}

PlrSampler::PlrSampler(const PlrSettings& settings) : settings_(settings) {
  Require(settings.temperature > 0.0, "PLR temperature must be positive");
  Require(settings.staleness >= 0.0 && settings.staleness <= 1.0,
          "PLR staleness in [0, 1]");
  Require(settings.capacity >= 1, "PLR capacity must be positive");
}

std::vector<double> PlrSampler::RankWeights(const std::vector<double>& scores,
                                            double temperature) {
  std::vector<size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](size_t a, size_t b) { return scores[a] > scores[b]; });
  std::vector<double> w(scores.size());
  double total = 0.0;
  for (size_t r = 0; r < order.size(); ++r) {
    w[order[r]] = std::pow(1.0 / static_cast<double>(r + 1), 1.0 / temperature);
    total += w[order[r]];
  }
  for (double& x : w) x /= total;
  return w;
}

std::vector<double> PlrSampler::ReplayDistribution() const {
  std::vector<double> p = RankWeights(scores_, settings_.temperature);
  double age_total = 0.0;
  for (long long c : last_sampled_) age_total += static_cast<double>(clock_ - c);
  for (size_t i = 0; i < p.size(); ++i) {
    double age = age_total > 0.0
                     ? static_cast<double>(clock_ - last_sampled_[i]) / age_total
                     : 1.0 / static_cast<double>(p.size());
    p[i] = (1.0 - settings_.staleness) * p[i] + settings_.staleness * age;
  }
  return p;
}

envs::ParameterVector PlrSampler::Sample(const feasibility::BaseSampler& base,
                                         Rng& rng) {
  ++clock_;
  if (!levels_.empty() && rng.Uniform() < settings_.replay_prob) {
    size_t i = SampleIndex(ReplayDistribution(), rng);
    last_sampled_[i] = clock_;
    return levels_[i];
  }
  return base(rng);
}

void PlrSampler::Observe(
    const std::vector<std::pair<envs::ParameterVector, double>>& scored) {
  for (const auto& [theta, score] : scored) {
    auto it = std::find(levels_.begin(), levels_.end(), theta);
    if (it != levels_.end()) {
      scores_[it - levels_.begin()] = score;
      continue;
    }
    if (levels_.size() < static_cast<size_t>(settings_.capacity)) {
      levels_.push_back(theta);
      scores_.push_back(score);
      last_sampled_.push_back(clock_);
      continue;
    }
    size_t worst = std::min_element(scores_.begin(), scores_.end()) - scores_.begin();
    if (score > scores_[worst]) {
      levels_[worst] = theta;
      scores_[worst] = score;
      last_sampled_[worst] = clock_;
    }
  }
}

std::vector<std::pair<envs::ParameterVector, double>> EpisodeScores(
    const rl::RolloutBatch& batch, const std::vector<double>& advantages) {
  Require(advantages.size() == batch.size(), "advantages must match batch");
  std::vector<double> sum(batch.n_envs, 0.0);
  std::vector<int> count(batch.n_envs, 0);
  std::vector<std::pair<envs::ParameterVector, double>> out;
  for (int t = 0; t < batch.n_steps; ++t) {
    for (int e = 0; e < batch.n_envs; ++e) {
      size_t i = batch.Index(t, e);
      sum[e] += std::abs(advantages[i]);
      ++count[e];
      if (batch.dones[i] || batch.truncated[i]) {
        auto row = batch.theta.Row(i);
        out.emplace_back(envs::ParameterVector(std::vector<double>(row.begin(), row.end())),
                         sum[e] / count[e]);
        sum[e] = 0.0;
        count[e] = 0;
      }
    }
  }
  return out;
}

RarlAdversary::RarlAdversary(const envs::ParamBounds& bounds,
                             const RarlSettings& settings)
    : settings_(settings) {
  Require(settings.policy_iterations >= 1 && settings.adversary_iterations >= 0,
          "RARL alternation lengths");
  Require(settings.temperature > 0.0, "RARL temperature must be positive");
  int per_dim = settings.cells_per_dim > 0 ? settings.cells_per_dim
                                           : DefaultCellsPerDim(bounds.dim());
  grid_ = ThetaGrid(bounds, per_dim);
  failure_.assign(grid_.size(), 1.0);
  visits_.assign(grid_.size(), 0);
}

bool RarlAdversary::PolicyPhase(long long iteration) const {
  long long round = settings_.policy_iterations + settings_.adversary_iterations;
  return iteration % round < settings_.policy_iterations;
}

std::vector<double> RarlAdversary::Distribution() const {
  double top = *std::max_element(failure_.begin(), failure_.end());
  std::vector<double> p(failure_.size());
  double total = 0.0;
  for (size_t i = 0; i < p.size(); ++i) {
    p[i] = std::exp((failure_[i] - top) / settings_.temperature);
    total += p[i];
  }
  const double u = settings_.uniform_mix / static_cast<double>(p.size());
  for (double& x : p) x = (1.0 - settings_.uniform_mix) * x / total + u;
  return p;
}

envs::ParameterVector RarlAdversary::Sample(Rng& rng) const {
  return grid_.SampleInCell(SampleIndex(Distribution(), rng), rng);
}

void RarlAdversary::Observe(const std::vector<rl::EpisodeOutcome>& episodes) {
  for (const auto& ep : episodes) {
    size_t c = grid_.CellOf(ep.theta);
    double fail = ep.safe ? 0.0 : 1.0;
    ++visits_[c];
    if (visits_[c] == 1) {
      failure_[c] = fail;
    } else {
      failure_[c] += (fail - failure_[c]) / static_cast<double>(visits_[c]);
    }
  }
}

}  // namespace fgelab::fge
