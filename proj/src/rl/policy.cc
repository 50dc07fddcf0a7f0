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

#include "fgelab/rl/policy.h"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "fgelab/common/errors.h"

namespace fgelab::rl {
namespace {

constexpr double kHalfLog2Pi = 0.91893853320467274178;  // 0.5 * log(2 pi)

std::vector<int> Sizes(int in, const std::vector<int>& hidden, int out) {
  std::vector<int> sizes = {in};
  sizes.insert(sizes.end(), hidden.begin(), hidden.end());
  sizes.push_back(out);
  return sizes;
}

double ClampedLogStd(const nn::MlpParams& p, size_t i) {
  return std::clamp(p.log_std()[i], nn::kLogStdMin, nn::kLogStdMax);
}

}  // namespace

ObsNormalizer ObsNormalizer::ForEnvironment(const envs::AvoidEnvironment& env) {
  auto [c, s] = env.ObservationScaling();
  Require(c.size() == static_cast<size_t>(env.observation_dim()) &&
              s.size() == c.size(),
          "ObsNormalizer: scaling width does not match observation");
  return ObsNormalizer{std::move(c), std::move(s)};
}

void ObsNormalizer::Apply(const Matrix& obs, Matrix& out) const {
  const size_t d = center.size();
  Require(obs.cols() == d, "ObsNormalizer: observation width");
  if (out.rows() != obs.rows() || out.cols() != d) out.Resize(obs.rows(), d);
  for (size_t r = 0; r < obs.rows(); ++r) {
    auto in = obs.Row(r);
    auto o = out.Row(r);
    for (size_t j = 0; j < d; ++j) o[j] = (in[j] - center[j]) / scale[j];
  }
}

Policy::Policy(const envs::AvoidEnvironment& env, const NetworkSpec& spec,
               Rng& rng)
    : normalizer_(ObsNormalizer::ForEnvironment(env)) {
  envs::ActionSpace space = env.action_space();
  nn::HeadKind head =
      space.discrete() ? nn::HeadKind::kCategorical : nn::HeadKind::kGaussian;
  params_ = nn::MlpParams::Initialized(
      Sizes(env.observation_dim(), spec.hidden, space.size), spec.activation,
      head, rng, spec.initial_log_std);
  // A small output layer starts the policy near uniform / zero-mean.
  for (double& w : params_.weights(params_.num_layers() - 1)) w *= 0.01;
}

Policy::Policy(nn::MlpParams params, ObsNormalizer normalizer)
    : params_(std::move(params)), normalizer_(std::move(normalizer)) {
  Require(params_.head() == nn::HeadKind::kCategorical ||
              params_.head() == nn::HeadKind::kGaussian,
          "Policy: head must be categorical or Gaussian");
  Require(normalizer_.center.size() == params_.input_dim(),
          "Policy: normalizer width");
}

int Policy::action_width() const {
  return discrete() ? 1 : static_cast<int>(params_.raw_output_dim());
}

const Matrix& Policy::Raw(const Matrix& obs, nn::ForwardCache& cache) const {
  Matrix normalized;
  normalizer_.Apply(obs, normalized);
  return nn::ForwardRaw(params_, normalized, cache);
}

double Policy::LogProb(std::span<const double> raw,
                       std::span<const double> action) const {
  if (discrete()) {
    double mx = *std::max_element(raw.begin(), raw.end());
    double sum = 0.0;
    for (double z : raw) sum += std::exp(z - mx);
    return raw[static_cast<size_t>(action[0])] - mx - std::log(sum);
  }
  double lp = 0.0;
  for (size_t i = 0; i < raw.size(); ++i) {
    double ls = ClampedLogStd(params_, i);
    double z = (action[i] - raw[i]) * std::exp(-ls);
    lp += -0.5 * z * z - ls - kHalfLog2Pi;
  }
  return lp;
}

double Policy::Entropy(std::span<const double> raw) const {
  if (discrete()) {
    double mx = *std::max_element(raw.begin(), raw.end());
    double sum = 0.0;
    for (double z : raw) sum += std::exp(z - mx);
    double lse = mx + std::log(sum);
    double h = 0.0;
    for (double z : raw) {
      double lp = z - lse;
      h -= std::exp(lp) * lp;
    }
    return h;
  }
  double h = 0.0;
  for (size_t i = 0; i < raw.size(); ++i) {
    h += ClampedLogStd(params_, i) + 0.5 + kHalfLog2Pi;
  }
  return h;
}

void Policy::Sample(std::span<const double> raw, Rng& rng,
                    std::span<double> action) const {
  if (discrete()) {
    double mx = *std::max_element(raw.begin(), raw.end());
    double sum = 0.0;
    for (double z : raw) sum += std::exp(z - mx);
    double u = rng.Uniform() * sum;
    size_t k = 0;
    double acc = 0.0;
    for (; k + 1 < raw.size(); ++k) {
      acc += std::exp(raw[k] - mx);
      if (u < acc) break;
    }
    action[0] = static_cast<double>(k);
    return;
  }
  for (size_t i = 0; i < raw.size(); ++i) {
    action[i] = raw[i] + std::exp(ClampedLogStd(params_, i)) * rng.Normal();
  }
}

void Policy::Mode(std::span<const double> raw, std::span<double> action) const {
  if (discrete()) {
    action[0] = static_cast<double>(
        std::max_element(raw.begin(), raw.end()) - raw.begin());
    return;
  }
  std::copy(raw.begin(), raw.end(), action.begin());
}

void Policy::AccumulateGrad(std::span<const double> raw,
                            std::span<const double> action, double c_logp,
                            double c_ent, std::span<double> d_raw,
                            std::span<double> param_grad) const {
  const size_t n = raw.size();
  if (discrete()) {
    double mx = *std::max_element(raw.begin(), raw.end());
    double sum = 0.0;
    for (double z : raw) sum += std::exp(z - mx);
    double lse = mx + std::log(sum);
    double h = 0.0;
    for (double z : raw) h -= std::exp(z - lse) * (z - lse);
    const size_t a = static_cast<size_t>(action[0]);
    for (size_t j = 0; j < n; ++j) {
      double lp = raw[j] - lse;
      double p = std::exp(lp);
      double d_logp = (j == a ? 1.0 : 0.0) - p;
      double d_ent = -p * (lp + h);
      d_raw[j] += c_logp * d_logp + c_ent * d_ent;
    }
    return;
  }
  auto ls_raw = params_.log_std();
  for (size_t i = 0; i < n; ++i) {
    double ls = ClampedLogStd(params_, i);
    double inv_var = std::exp(-2.0 * ls);
    double diff = action[i] - raw[i];
    d_raw[i] += c_logp * diff * inv_var;
    if (ls_raw[i] > nn::kLogStdMin && ls_raw[i] < nn::kLogStdMax) {
      param_grad[params_.log_std_offset() + i] +=
          c_logp * (diff * diff * inv_var - 1.0) + c_ent;
    }
  }
}

envs::Action Policy::ToEnvAction(std::span<const double> action) const {
  if (discrete()) return envs::Action::Discrete(static_cast<int>(action[0]));
  return envs::Action::Box(std::vector<double>(action.begin(), action.end()));
}

ValueFunction::ValueFunction(const envs::AvoidEnvironment& env,
                             const NetworkSpec& spec, Rng& rng)
    : normalizer_(ObsNormalizer::ForEnvironment(env)) {
  params_ = nn::MlpParams::Initialized(Sizes(env.observation_dim(), spec.hidden, 1),
                                       spec.activation, nn::HeadKind::kLinear,
                                       rng);
}

ValueFunction::ValueFunction(nn::MlpParams params, ObsNormalizer normalizer)
    : params_(std::move(params)), normalizer_(std::move(normalizer)) {
  Require(params_.head() == nn::HeadKind::kLinear &&
              params_.raw_output_dim() == 1,
          "ValueFunction: needs a scalar linear head");
}

const Matrix& ValueFunction::Evaluate(const Matrix& obs,
                                      nn::ForwardCache& cache) const {
  Matrix normalized;
  normalizer_.Apply(obs, normalized);
  return nn::ForwardRaw(params_, normalized, cache);
}

std::vector<double> ValueFunction::Evaluate(const Matrix& obs) const {
  nn::ForwardCache cache;
  const Matrix& v = Evaluate(obs, cache);
  return std::vector<double>(v.data().begin(), v.data().end());
}

}  // namespace fgelab::rl
