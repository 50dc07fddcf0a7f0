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

#ifndef FGELAB_SADDLE_GAME_H_
#define FGELAB_SADDLE_GAME_H_

#include <functional>
#include <vector>

#include "fgelab/common/rng.h"

namespace fgelab::saddle {

struct Interval {
  double lo = -1.0;
  double hi = 1.0;
  double Clamp(double v) const { return v < lo ? lo : (v > hi ? hi : v); }
  // Point i of an evenly spaced grid with n >= 2 points including both ends.
  double GridPoint(int i, int n) const {
    return i == n - 1 ? hi : lo + (hi - lo) * i / (n - 1);
  }
};

// Two-player scalar game max_pi min_theta J(pi, theta) on a box.
struct ScalarGame {
  std::function<double(double, double)> payoff;
  Interval pi_box;
  Interval theta_box;
  // Optional analytic partials; central differences are used when empty.
  std::function<double(double, double)> grad_pi;
  std::function<double(double, double)> grad_theta;

  double Payoff(double pi, double theta) const;
  double GradPi(double pi, double theta) const;
  double GradTheta(double pi, double theta) const;
};

ScalarGame BilinearGame();
ScalarGame ConstantGame(double c);

// Safety margin of the quartic indicator game; unsafe when positive.
double QuarticMargin(double pi, double theta);
// J = -1{h > 0}: the pi player avoids violation, theta seeks it.
ScalarGame QuarticIndicatorGame();

struct Iterate {
  double pi = 0.0;
  double theta = 0.0;
};

// Simultaneous ascent in pi and descent in theta. With project = false the
// iterates may leave the box.
Iterate GdaStep(const ScalarGame& game, Iterate at, double eta,
                bool project = true);

// Returns argmin_theta J(pi, theta).
using BestResponse = std::function<double(const ScalarGame&, double pi)>;

// Exhaustive argmin over an evenly spaced theta grid; ties go to the
// lowest grid index.
BestResponse GridBestResponse(int resolution = 2001);
// Argmin over n uniform draws; ties go to the earliest draw. The generator
// must outlive the returned callable.
BestResponse SampledBestResponse(int n, Rng* rng);

struct LearningRate {
  double constant = 0.05;
  // When set, eta_{t-1} = alpha_lr * sqrt(m) / (L * sqrt(t)).
  bool scheduled = false;
  double alpha_lr = 1.0;
  double m = 1.0;
  double lipschitz = 1.0;

  double At(int t) const;
};

enum class GradientEstimate {
  kHistoryAverage,  // mean gradient over every stored theta
  kSingleSample,    // gradient at one theta drawn uniformly from history
};

struct FtrlState {
  double pi0 = 0.5;
  LearningRate lr;
  GradientEstimate estimate = GradientEstimate::kHistoryAverage;
  double current = 0.5;
  std::vector<double> pis;
  std::vector<double> thetas;

  explicit FtrlState(double start = 0.5) : pi0(start), current(start) {}
  int steps() const { return static_cast<int>(pis.size()); }
  double AveragePi() const;
  double AverageTheta() const;
};

// Plays the current pi against its best response, then moves pi along the
// history-averaged gradient. rng is only read for kSingleSample.
void FtrlBrStep(const ScalarGame& game, FtrlState& state,
                const BestResponse& br, Rng* rng = nullptr);

// max_pi' J(pi', theta) - min_theta' J(pi, theta) on resolution-point grids.
double DualityGap(const ScalarGame& game, double pi, double theta,
                  int resolution = 2001);

// sum_t J(pi_t, theta_t) - sum_t J(comparator, theta_t).
double Regret(const ScalarGame& game, const std::vector<Iterate>& history,
              double comparator);

}  // namespace fgelab::saddle

#endif  // FGELAB_SADDLE_GAME_H_
