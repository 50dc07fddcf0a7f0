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

#ifndef FGELAB_RL_POLICY_H_
#define FGELAB_RL_POLICY_H_

#include <span>
#include <vector>

#include "fgelab/common/matrix.h"
#include "fgelab/common/rng.h"
#include "fgelab/envs/environment.h"
#include "fgelab/nn/mlp.h"

namespace fgelab::rl {

// Affine observation normalization: (obs - center) / scale.
struct ObsNormalizer {
  std::vector<double> center;
  std::vector<double> scale;

  static ObsNormalizer ForEnvironment(const envs::AvoidEnvironment& env);
  void Apply(const Matrix& obs, Matrix& out) const;
};

struct NetworkSpec {
  std::vector<int> hidden = {64, 64};
  nn::Activation activation = nn::Activation::kTanh;
  double initial_log_std = -0.5;
};

// Stochastic policy over an environment's action space: categorical logits
// for discrete actions, a diagonal Gaussian with state-independent log-std
// for box actions. Actions are stored as rows of width action_width(): the
// action index for discrete spaces, the raw (unclipped) sample otherwise.
class Policy {
 public:
  Policy() = default;
  Policy(const envs::AvoidEnvironment& env, const NetworkSpec& spec, Rng& rng);
  Policy(nn::MlpParams params, ObsNormalizer normalizer);

  const nn::MlpParams& params() const { return params_; }
  nn::MlpParams& mutable_params() { return params_; }
  const ObsNormalizer& normalizer() const { return normalizer_; }
  bool discrete() const { return params_.head() == nn::HeadKind::kCategorical; }
  int action_width() const;
  int num_outputs() const { return static_cast<int>(params_.raw_output_dim()); }

  // Raw network outputs (logits or means), one row per observation.
  const Matrix& Raw(const Matrix& obs, nn::ForwardCache& cache) const;

  double LogProb(std::span<const double> raw, std::span<const double> action) const;
  double Entropy(std::span<const double> raw) const;
  void Sample(std::span<const double> raw, Rng& rng,
              std::span<double> action) const;
  void Mode(std::span<const double> raw, std::span<double> action) const;
  // Accumulates d(c_logp * logp + c_ent * entropy) into d_raw (the row for
  // this sample) and into the log-std slots of param_grad.
  void AccumulateGrad(std::span<const double> raw,
                      std::span<const double> action, double c_logp,
                      double c_ent, std::span<double> d_raw,
                      std::span<double> param_grad) const;

  envs::Action ToEnvAction(std::span<const double> action) const;

 private:
  nn::MlpParams params_;
  ObsNormalizer normalizer_;
};

class ValueFunction {
 public:
  ValueFunction() = default;
  ValueFunction(const envs::AvoidEnvironment& env, const NetworkSpec& spec,
                Rng& rng);
  ValueFunction(nn::MlpParams params, ObsNormalizer normalizer);

  const nn::MlpParams& params() const { return params_; }
  nn::MlpParams& mutable_params() { return params_; }
  const ObsNormalizer& normalizer() const { return normalizer_; }

  // Column of values, one per observation row.
  const Matrix& Evaluate(const Matrix& obs, nn::ForwardCache& cache) const;
  std::vector<double> Evaluate(const Matrix& obs) const;

 private:
  nn::MlpParams params_;
  ObsNormalizer normalizer_;
};

}  // namespace fgelab::rl

#endif  // FGELAB_RL_POLICY_H_
