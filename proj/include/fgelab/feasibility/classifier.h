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

#ifndef FGELAB_FEASIBILITY_CLASSIFIER_H_
#define FGELAB_FEASIBILITY_CLASSIFIER_H_

#include <functional>
#include <utility>
#include <vector>

#include "fgelab/common/matrix.h"
#include "fgelab/common/rng.h"
#include "fgelab/envs/environment.h"
#include "fgelab/feasibility/feasible_set.h"
#include "fgelab/nn/mlp.h"
#include "fgelab/rl/rollout.h"

namespace fgelab::feasibility {

struct ClassifierConfig {
  std::vector<int> hidden = {32, 32};
  double lr = 1e-3;
  int minibatch_size = 256;
};

// Probability that theta is feasible, q(f = 1 | theta), as a sigmoid MLP on
// theta rescaled to [-1, 1]^d. Trained with binary cross-entropy on logits.
// Used both for the feasibility classifier and for the policy classifier.
class ParamClassifier {
 public:
  ParamClassifier() = default;
  ParamClassifier(const envs::ParamBounds& bounds, const ClassifierConfig& cfg,
                  Rng& rng);

  double Probability(const envs::ParameterVector& theta) const;
  std::vector<double> Probabilities(
      const std::vector<envs::ParameterVector>& thetas) const;

  // One pass per epoch over the samples in shuffled minibatches; returns the
  // mean cross-entropy of each epoch. Throws NumericError on a non-finite
  // loss.
  std::vector<double> Train(const std::vector<envs::ParameterVector>& thetas,
                            const std::vector<int>& labels, int epochs,
                            Rng& rng);

  const nn::MlpParams& params() const { return params_; }
  nn::MlpParams& mutable_params() { return params_; }
  const envs::ParamBounds& bounds() const { return bounds_; }

 private:
  void Encode(const envs::ParameterVector& theta, std::span<double> out) const;

  envs::ParamBounds bounds_;
  ClassifierConfig config_;
  nn::MlpParams params_;
  nn::OptimState opt_;
};

std::vector<double> TrainClassifier(ParamClassifier& q,
                                    const std::vector<LabeledParamSample>& samples,
                                    int epochs, Rng& rng);

// Fits the current policy's safety probability from the latest episodes.
std::vector<double> TrainPolicyClassifier(
    ParamClassifier& p, const std::vector<rl::EpisodeOutcome>& episodes,
    int epochs, Rng& rng);

bool Classify(double q, double beta);
bool Classify(const ParamClassifier& q, const envs::ParameterVector& theta,
              double beta);

struct InfeasibleDraw {
  envs::ParameterVector theta;
  bool exhausted = false;
};

using BaseSampler = std::function<envs::ParameterVector(Rng&)>;

// Rejection sampling from the base distribution restricted to
// {theta | Classify(q, theta, beta) == false}.
InfeasibleDraw SampleInfeasible(const std::function<double(const envs::ParameterVector&)>& q,
                                const BaseSampler& base, double beta,
                                int max_tries, Rng& rng);
InfeasibleDraw SampleInfeasible(const ParamClassifier& q, const BaseSampler& base,
                                double beta, int max_tries, Rng& rng);

}  // namespace fgelab::feasibility

#endif  // FGELAB_FEASIBILITY_CLASSIFIER_H_
