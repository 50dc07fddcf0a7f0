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

#ifndef FGELAB_SADDLE_EXPERIMENTS_H_
#define FGELAB_SADDLE_EXPERIMENTS_H_

#include <cstdint>
#include <string>
#include <vector>

#include "fgelab/saddle/game.h"

namespace fgelab::saddle {

struct BilinearConfig {
  int iterations = 2000;
  double eta = 0.05;
  double pi0 = 0.5;
  double theta0 = 0.5;  // GDA start only
  int grid = 2001;
  uint64_t seed = 0;
};

struct TraceRow {
  std::string method;
  int t = 0;
  double pi = 0.0;
  double theta = 0.0;
  double avg_pi = 0.0;
  double avg_theta = 0.0;
  double gap = 0.0;     // duality gap at the averages
  double regret = 0.0;  // pi player's regret against the best fixed grid pi
};

// Traces for "gda", "ftrl_exact" and "ftrl_single" on the bilinear game.
std::vector<TraceRow> RunBilinear(const BilinearConfig& config);
void WriteTrace(const std::string& path, const std::vector<TraceRow>& rows);

struct GapPoint {
  int t = 0;
  double gap = 0.0;
};

// FTRL with exact best response; gap of the averages at log-spaced horizons.
std::vector<GapPoint> FtrlGapCurve(const BilinearConfig& config, int t_min,
                                   int t_max, int points);
// Least-squares slope of log(gap) against log(t).
double LogLogSlope(const std::vector<GapPoint>& curve);

struct SensitivityConfig {
  std::vector<int> samples = {1, 4, 16, 64, 256};
  int trials = 20;
  int cap = 2000;
  int grid = 2001;
  uint64_t seed = 0;
};

struct SensitivityResult {
  int samples = 0;
  std::vector<int> iterations;  // per trial; cap when not converged
  double median = 0.0;
  int max = 0;
  int cap_hits = 0;
};

struct SolutionRegion {
  std::vector<double> pi_grid;
  std::vector<bool> solved;  // max_theta h(pi, theta) <= 0
  bool Empty() const;
};
SolutionRegion ScanQuarticRegion(int grid);

// Follow-the-leader on a pi grid against sampled best responses.
std::vector<SensitivityResult> QuarticSensitivity(
    const SensitivityConfig& config);
void WriteSensitivity(const std::string& path,
                      const std::vector<SensitivityResult>& results);

}  // namespace fgelab::saddle

#endif  // FGELAB_SADDLE_EXPERIMENTS_H_
