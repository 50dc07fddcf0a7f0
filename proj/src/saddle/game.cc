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

#include "fgelab/saddle/game.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "fgelab/common/errors.h"

namespace fgelab::saddle {
namespace {

constexpr double kFdStep = 1e-6;

double Mean(const std::vector<double>& v) {
  Require(!v.empty(), "average of an empty history");
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

}  // namespace

double ScalarGame::Payoff(double pi, double theta) const {
  double j = payoff(pi, theta);
  if (!std::isfinite(j)) {
    throw NumericError("non-finite payoff at pi=" + std::to_string(pi) +
                       " theta=" + std::to_string(theta));
  }
  return j;
}

double ScalarGame::GradPi(double pi, double theta) const {
  if (grad_pi) return grad_pi(pi, theta);
  return (Payoff(pi + kFdStep, theta) - Payoff(pi - kFdStep, theta)) /
         (2.0 * kFdStep);
}

double ScalarGame::GradTheta(double pi, double theta) const {
  if (grad_theta) return grad_theta(pi, theta);
  return (Payoff(pi, theta + kFdStep) - Payoff(pi, theta - kFdStep)) /
         (2.0 * kFdStep);
}

ScalarGame BilinearGame() {
  ScalarGame g;
  g.payoff = [](double p, double t) { return p * t; };
  g.grad_pi = [](double, double t) { return t; };
  g.grad_theta = [](double p, double) { return p; };
  return g;
}

ScalarGame ConstantGame(double c) {
  ScalarGame g;
  g.payoff = [c](double, double) { return c; };
  g.grad_pi = [](double, double) { return 0.0; };
  g.grad_theta = [](double, double) { return 0.0; };
  return g;
}

double QuarticMargin(double pi, double theta) {
  double p2 = pi * pi;
  return -1296.0 * p2 * p2 + 36.0 * p2 - 216.0 * p2 * theta +
         2592.0 * p2 * pi * theta - 4.0;
}

ScalarGame QuarticIndicatorGame() {
  ScalarGame g;
  g.payoff = [](double p, double t) {
    return QuarticMargin(p, t) > 0.0 ? -1.0 : 0.0;
  };
  g.grad_pi = [](double, double) { return 0.0; };
  g.grad_theta = [](double, double) { return 0.0; };
  return g;
}

Iterate GdaStep(const ScalarGame& game, Iterate at, double eta, bool project) {
  Iterate next{at.pi + eta * game.GradPi(at.pi, at.theta),
               at.theta - eta * game.GradTheta(at.pi, at.theta)};
  if (project) {
    next.pi = game.pi_box.Clamp(next.pi);
    next.theta = game.theta_box.Clamp(next.theta);
  }
  return next;
}

BestResponse GridBestResponse(int resolution) {
  Require(resolution >= 2, "best-response grid needs at least two points");
  return [resolution](const ScalarGame& game, double pi) {
    double best_theta = game.theta_box.lo;
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < resolution; ++i) {
      double t = game.theta_box.GridPoint(i, resolution);
      double j = game.Payoff(pi, t);
      if (j < best) {
        best = j;
        best_theta = t;
      }
    }
    return best_theta;
  };
}

BestResponse SampledBestResponse(int n, Rng* rng) {
  Require(n >= 1, "sampled best response needs n >= 1");
  Require(rng != nullptr, "sampled best response needs a generator");
  return [n, rng](const ScalarGame& game, double pi) {
    double best_theta = 0.0;
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) {
      double t = rng->Uniform(game.theta_box.lo, game.theta_box.hi);
      double j = game.Payoff(pi, t);
      if (j < best) {
        best = j;
        best_theta = t;
      }
    }
    return best_theta;
  };
}

double LearningRate::At(int t) const {
  Require(t >= 1, "learning rate index starts at 1");
  double eta = scheduled ? alpha_lr * std::sqrt(m) /
                               (lipschitz * std::sqrt(static_cast<double>(t)))
                         : constant;
  Require(eta > 0.0, "learning rate must be positive");
  return eta;
}

double FtrlState::AveragePi() const { return Mean(pis); }
double FtrlState::AverageTheta() const { return Mean(thetas); }

void FtrlBrStep(const ScalarGame& game, FtrlState& state,
                const BestResponse& br, Rng* rng) {
  if (state.pis.empty()) state.current = game.pi_box.Clamp(state.pi0);
  double pi = state.current;
  state.pis.push_back(pi);
  state.thetas.push_back(br(game, pi));

  double g = 0.0;
  if (state.estimate == GradientEstimate::kSingleSample) {
    Require(rng != nullptr, "single-sample estimate needs a generator");
    g = game.GradPi(pi, state.thetas[rng->Below(state.thetas.size())]);
  } else {
    for (double t : state.thetas) g += game.GradPi(pi, t);
    g /= static_cast<double>(state.thetas.size());
  }
  state.current = game.pi_box.Clamp(pi + state.lr.At(state.steps()) * g);
}

double DualityGap(const ScalarGame& game, double pi, double theta,
                  int resolution) {
  Require(resolution >= 2, "duality gap grid needs at least two points");
  double sup = -std::numeric_limits<double>::infinity();
  double inf = std::numeric_limits<double>::infinity();
  for (int i = 0; i < resolution; ++i) {
    sup = std::max(sup, game.Payoff(game.pi_box.GridPoint(i, resolution), theta));
    inf = std::min(inf, game.Payoff(pi, game.theta_box.GridPoint(i, resolution)));
  }
  return sup - inf;
}

double Regret(const ScalarGame& game, const std::vector<Iterate>& history,
              double comparator) {
  Require(!history.empty(), "regret of an empty history");
  double r = 0.0;
  for (const Iterate& it : history) {
    r += game.Payoff(it.pi, it.theta) - game.Payoff(comparator, it.theta);
  }
  return r;
}

}  // namespace fgelab::saddle
