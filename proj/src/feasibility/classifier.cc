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

#include "fgelab/feasibility/classifier.h"

#include <cmath>
#include <numeric>
#include <sstream>

#include "fgelab/common/errors.h"

namespace fgelab::feasibility {

ParamClassifier::ParamClassifier(const envs::ParamBounds& bounds,
                                 const ClassifierConfig& cfg, Rng& rng)
    : bounds_(bounds), config_(cfg) {
  std::vector<int> sizes = {static_cast<int>(bounds.dim())};
  sizes.insert(sizes.end(), cfg.hidden.begin(), cfg.hidden.end());
  sizes.push_back(1);
  params_ = nn::MlpParams::Initialized(sizes, nn::Activation::kTanh,
                                       nn::HeadKind::kSigmoid, rng);
  opt_ = nn::OptimState(params_.num_params(), nn::AdamConfig{cfg.lr});
}

void ParamClassifier::Encode(const envs::ParameterVector& theta,
                             std::span<double> out) const {
  for (size_t i = 0; i < out.size(); ++i) {
    double w = bounds_.hi[i] - bounds_.lo[i];
    out[i] = w > 0.0 ? 2.0 * (theta[i] - bounds_.lo[i]) / w - 1.0 : 0.0;
  }
}

double ParamClassifier::Probability(const envs::ParameterVector& theta) const {
  Require(theta.size() == bounds_.dim(), "ParamClassifier: dimension mismatch");
  std::vector<double> x(theta.size());
  Encode(theta, x);
  return nn::Forward(params_, x)[0];
}

std::vector<double> ParamClassifier::Probabilities(
    const std::vector<envs::ParameterVector>& thetas) const {
  if (thetas.empty()) return {};
  Matrix x(thetas.size(), bounds_.dim());
  for (size_t r = 0; r < thetas.size(); ++r) Encode(thetas[r], x.Row(r));
  nn::ForwardCache cache;
  const Matrix& raw = nn::ForwardRaw(params_, x, cache);
  std::vector<double> out(thetas.size());
  for (size_t r = 0; r < thetas.size(); ++r) out[r] = nn::Sigmoid(raw(r, 0));
  return out;
}

std::vector<double> ParamClassifier::Train(
    const std::vector<envs::ParameterVector>& thetas,
    const std::vector<int>& labels, int epochs, Rng& rng) {
  Require(!thetas.empty() && thetas.size() == labels.size(),
          "ParamClassifier::Train: need matching nonempty samples");
  const size_t n = thetas.size();
  const size_t d = bounds_.dim();
  Matrix encoded(n, d);
  for (size_t r = 0; r < n; ++r) Encode(thetas[r], encoded.Row(r));

  std::vector<size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> grad(params_.num_params());
  std::vector<double> trace;
  Matrix x, d_raw;
  nn::ForwardCache cache;
  const size_t mb = std::min<size_t>(config_.minibatch_size, n);
  for (int epoch = 0; epoch < epochs; ++epoch) {
    for (size_t i = n - 1; i > 0; --i) std::swap(order[i], order[rng.Below(i + 1)]);
    double total = 0.0;
    for (size_t start = 0; start < n; start += mb) {
      const size_t m = std::min(mb, n - start);
      x.Resize(m, d);
      for (size_t r = 0; r < m; ++r) {
        auto src = encoded.Row(order[start + r]);
        std::copy(src.begin(), src.end(), x.Row(r).begin());
      }
      const Matrix& raw = nn::ForwardRaw(params_, x, cache);
      d_raw.Resize(m, 1);
      double loss = 0.0;
      for (size_t r = 0; r < m; ++r) {
        double z = raw(r, 0);
        double y = labels[order[start + r]];
        loss += nn::Softplus(z) - y * z;
        d_raw(r, 0) = (nn::Sigmoid(z) - y) / m;
      }
      if (!std::isfinite(loss)) {
        std::ostringstream msg;
        msg << "ParamClassifier::Train: non-finite loss at epoch " << epoch;
        throw NumericError(msg.str());
      }
      total += loss;
      std::fill(grad.begin(), grad.end(), 0.0);
      nn::BackwardRaw(params_, cache, d_raw, grad);
      nn::OptimStep(opt_, params_, grad);
    }
    trace.push_back(total / n);
  }
  return trace;
}

std::vector<double> TrainClassifier(ParamClassifier& q,
                                    const std::vector<LabeledParamSample>& samples,
                                    int epochs, Rng& rng) {
  Require(!samples.empty(), "TrainClassifier: samples must be nonempty");
  std::vector<envs::ParameterVector> thetas;
  std::vector<int> labels;
  thetas.reserve(samples.size());
  labels.reserve(samples.size());
  for (const auto& s : samples) {
    thetas.push_back(s.theta);
    labels.push_back(s.label);
  }
  return q.Train(thetas, labels, epochs, rng);
}

std::vector<double> TrainPolicyClassifier(
    ParamClassifier& p, const std::vector<rl::EpisodeOutcome>& episodes,
    int epochs, Rng& rng) {
  if (episodes.empty()) return {};
  std::vector<envs::ParameterVector> thetas;
  std::vector<int> labels;
  thetas.reserve(episodes.size());
  labels.reserve(episodes.size());
  for (const auto& ep : episodes) {
    thetas.push_back(ep.theta);
    labels.push_back(ep.safe ? 1 : 0);
  }
  return p.Train(thetas, labels, epochs, rng);
}

bool Classify(double q, double beta) { return q >= beta; }

bool Classify(const ParamClassifier& q, const envs::ParameterVector& theta,
              double beta) {
  return Classify(q.Probability(theta), beta);
}

InfeasibleDraw SampleInfeasible(
    const std::function<double(const envs::ParameterVector&)>& q,
    const BaseSampler& base, double beta, int max_tries, Rng& rng) {
  Require(max_tries >= 1, "SampleInfeasible: max_tries >= 1");
  InfeasibleDraw out;
  for (int k = 0; k < max_tries; ++k) {
    out.theta = base(rng);
    if (!Classify(q(out.theta), beta)) return out;
  }
  out.exhausted = true;
  return out;
}

InfeasibleDraw SampleInfeasible(const ParamClassifier& q,
                                const BaseSampler& base, double beta,
                                int max_tries, Rng& rng) {
  return SampleInfeasible(
      [&q](const envs::ParameterVector& t) { return q.Probability(t); }, base,
      beta, max_tries, rng);
}

}  // namespace fgelab::feasibility
