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

#include "fgelab/saddle/experiments.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fgelab/common/csv.h"
#include "fgelab/common/errors.h"

namespace fgelab::saddle {
namespace {

// Running record of one method: averages, the pi player's cumulative payoff
// at every grid pi, and the realized payoff sum.
class Tracker {
 public:
  Tracker(const ScalarGame& game, int grid, std::string method)
      : game_(game), grid_(grid), method_(std::move(method)), cum_(grid, 0.0) {}

  TraceRow Observe(double pi, double theta) {
    ++t_;
    sum_pi_ += pi;
    sum_theta_ += theta;
    realized_ += game_.Payoff(pi, theta);
    double best = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < grid_; ++i) {
      cum_[i] += game_.Payoff(game_.pi_box.GridPoint(i, grid_), theta);
      best = std::max(best, cum_[i]);
    }
    TraceRow row;
    row.method = method_;
    row.t = t_;
    row.pi = pi;
    row.theta = theta;
    row.avg_pi = sum_pi_ / t_;
    row.avg_theta = sum_theta_ / t_;
    row.gap = DualityGap(game_, row.avg_pi, row.avg_theta, grid_);
    row.regret = best - realized_;
    return row;
  }

 private:
  const ScalarGame& game_;
  int grid_;
  std::string method_;
  std::vector<double> cum_;
  int t_ = 0;
  double sum_pi_ = 0.0;
  double sum_theta_ = 0.0;
  double realized_ = 0.0;
};

bool InQuarticRegion(double pi, int grid) {
  Interval box;
  for (int i = 0; i < grid; ++i) {
    if (QuarticMargin(pi, box.GridPoint(i, grid)) > 0.0) return false;
  }
  return true;
}

int QuarticTrial(int n, const SensitivityConfig& cfg, Rng& rng) {
  const ScalarGame game = QuarticIndicatorGame();
  BestResponse br = SampledBestResponse(n, &rng);
  std::vector<double> cum(cfg.grid, 0.0);
  double pi = rng.Uniform(game.pi_box.lo, game.pi_box.hi);
  for (int t = 0; t < cfg.cap; ++t) {
    if (InQuarticRegion(pi, cfg.grid)) return t;
    double theta = br(game, pi);
    int best = -1;
    for (int i = 0; i < cfg.grid; ++i) {
      double p = game.pi_box.GridPoint(i, cfg.grid);
      cum[i] += game.Payoff(p, theta);
      // Leader with ties broken toward the current iterate.
      if (best < 0 || cum[i] > cum[best] ||
          (cum[i] == cum[best] &&
           std::abs(p - pi) <
               std::abs(game.pi_box.GridPoint(best, cfg.grid) - pi))) {
        best = i;
      }
    }
    pi = game.pi_box.GridPoint(best, cfg.grid);
  }
  return cfg.cap;
}

double Median(std::vector<int> v) {
  std::sort(v.begin(), v.end());
  size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

std::vector<TraceRow> RunBilinear(const BilinearConfig& config) {
  Require(config.iterations >= 1, "bilinear: iterations must be positive");
  const ScalarGame game = BilinearGame();
  std::vector<TraceRow> rows;

  Tracker gda_track(game, config.grid, "gda");
  Iterate it{config.pi0, config.theta0};
  for (int t = 0; t < config.iterations; ++t) {
    rows.push_back(gda_track.Observe(it.pi, it.theta));
    it = GdaStep(game, it, config.eta);
  }

  Rng rng(config.seed, streams::kBestResponse);
  BestResponse br = GridBestResponse(config.grid);
  for (auto est : {GradientEstimate::kHistoryAverage,
                   GradientEstimate::kSingleSample}) {
    FtrlState state(config.pi0);
    state.lr.constant = config.eta;
    state.estimate = est;
    Tracker track(game, config.grid,
                  est == GradientEstimate::kHistoryAverage ? "ftrl_exact"
                                                           : "ftrl_single");
    for (int t = 0; t < config.iterations; ++t) {
      FtrlBrStep(game, state, br, &rng);
      rows.push_back(track.Observe(state.pis.back(), state.thetas.back()));
    }
  }
  return rows;
}

void WriteTrace(const std::string& path, const std::vector<TraceRow>& rows) {
  CsvWriter csv(path, {"method", "t", "pi", "theta", "avg_pi", "avg_theta",
                       "gap", "regret"});
  for (const TraceRow& r : rows) {
    csv.Row({r.method, static_cast<long long>(r.t), r.pi, r.theta, r.avg_pi,
             r.avg_theta, r.gap, r.regret});
  }
}

std::vector<GapPoint> FtrlGapCurve(const BilinearConfig& config, int t_min,
                                   int t_max, int points) {
  Require(t_min >= 1 && t_max > t_min && points >= 2,
          "gap curve: need 1 <= t_min < t_max and points >= 2");
  const ScalarGame game = BilinearGame();
  FtrlState state(config.pi0);
  state.lr.constant = config.eta;
  BestResponse br = GridBestResponse(config.grid);

  std::vector<int> marks;
  for (int k = 0; k < points; ++k) {
    double e = std::log(t_min) +
               (std::log(t_max) - std::log(t_min)) * k / (points - 1);
    int t = static_cast<int>(std::lround(std::exp(e)));
    if (marks.empty() || t > marks.back()) marks.push_back(t);
  }
  std::vector<GapPoint> curve;
  double sum_pi = 0.0, sum_theta = 0.0;
  size_t next = 0;
  for (int t = 1; t <= t_max && next < marks.size(); ++t) {
    FtrlBrStep(game, state, br);
    sum_pi += state.pis.back();
    sum_theta += state.thetas.back();
    if (t == marks[next]) {
      curve.push_back({t, DualityGap(game, sum_pi / t, sum_theta / t,
                                     config.grid)});
      ++next;
    }
  }
  return curve;
}

double LogLogSlope(const std::vector<GapPoint>& curve) {
  Require(curve.size() >= 2, "slope needs two points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const GapPoint& p : curve) {
    if (p.gap <= 0.0) throw NumericError("log of a non-positive gap");
    double x = std::log(p.t), y = std::log(p.gap);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  double n = static_cast<double>(curve.size());
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

bool SolutionRegion::Empty() const {
  return std::none_of(solved.begin(), solved.end(), [](bool b) { return b; });
}

SolutionRegion ScanQuarticRegion(int grid) {
  Require(grid >= 2, "region scan needs at least two points");
  SolutionRegion r;
  Interval box;
  for (int i = 0; i < grid; ++i) {
    double pi = box.GridPoint(i, grid);
    r.pi_grid.push_back(pi);
    r.solved.push_back(InQuarticRegion(pi, grid));
  }
  return r;
}

std::vector<SensitivityResult> QuarticSensitivity(
    const SensitivityConfig& config) {
  Require(config.trials >= 1 && config.cap >= 1 && config.grid >= 2,
          "sensitivity: trials, cap and grid must be positive");
  std::vector<SensitivityResult> out;
  for (int n : config.samples) {
    Require(n >= 1, "sensitivity: sample counts must be >= 1");
    SensitivityResult res;
    res.samples = n;
    for (int k = 0; k < config.trials; ++k) {
      Rng rng(config.seed, (static_cast<uint64_t>(n) << 20) | k);
      int its = QuarticTrial(n, config, rng);
      res.iterations.push_back(its);
      res.cap_hits += its >= config.cap;
    }
    res.median = Median(res.iterations);
    res.max = *std::max_element(res.iterations.begin(), res.iterations.end());
    out.push_back(std::move(res));
  }
  return out;
}

void WriteSensitivity(const std::string& path,
                      const std::vector<SensitivityResult>& results) {
  CsvWriter csv(path, {"samples", "trial", "iterations"});
  for (const SensitivityResult& r : results) {
    for (size_t k = 0; k < r.iterations.size(); ++k) {
      csv.Row({static_cast<long long>(r.samples), static_cast<long long>(k),
               static_cast<long long>(r.iterations[k])});
    }
  }
}

}  // namespace fgelab::saddle
