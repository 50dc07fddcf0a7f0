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


#ifndef FGELAB_HARNESS_EXPERIMENT_H_
#define FGELAB_HARNESS_EXPERIMENT_H_

#include <filesystem>
#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include "fgelab/envs/environment.h"
#include "fgelab/harness/config.h"
#include "fgelab/harness/evaluate.h"
#include "fgelab/harness/metrics.h"

namespace fgelab::harness {

// Outcome of one (method, seed) cell.
struct CellResult {
  std::string method;
  int seed = 0;
  bool ok = true;
  std::string error;
  Mask safe;  // over SafetyMatrix::grid
  Mask hard;  // over SafetyMatrix::hard_grid
  double train_seconds = 0.0;
};

struct SafetyMatrix {
  std::vector<envs::ParameterVector> grid;
  std::vector<envs::ParameterVector> hard_grid;
  std::vector<CellResult> cells;

  // Every successful cell has one outcome per grid point.
  void Validate() const;
};

struct MetricsRow {
  std::string method;
  int seed = 0;
  double safety_rate = kUndefined;
  double coverage_gain = kUndefined;
  double coverage_loss = kUndefined;
  double hard_safety_rate = kUndefined;
};

// Across-seed aggregate of one metric.
struct SummaryRow {
  std::string method;
  std::string metric;
  double iqm = kUndefined;
  double q25 = kUndefined;
  double q75 = kUndefined;
  int n = 0;
};

struct Report {
  std::vector<MetricsRow> rows;
  // Per method over its seed union; empty with fewer than two methods.
  std::vector<std::pair<std::string, double>> unique_coverage;
  std::vector<SummaryRow> summary;
  std::vector<std::string> failures;

  // Summary entry for (method, metric); undefined if absent.
  const SummaryRow* Find(const std::string& method,
                         const std::string& metric) const;
};

// s_any is the union over every successful cell; the DR union is over the
// cells of `dr_method`.
Report ComputeReport(const SafetyMatrix& matrix,
                     const std::string& dr_method = "dr");

// Concatenates cells from several matrices that share their grids.
SafetyMatrix MergeMatrices(const std::vector<SafetyMatrix>& parts);

void WriteSafetyMatrix(const std::filesystem::path& dir, const SafetyMatrix& m);
SafetyMatrix LoadSafetyMatrix(const std::filesystem::path& dir);
// metrics.csv, unique_coverage.csv, summary.csv and summary.json.
void WriteReport(const std::filesystem::path& dir, const Report& report);

// Trains one cell and returns its deterministic evaluation controller.
// Artifacts go to cell_dir.
using CellTrainer = std::function<ActionFn(
    const ExperimentConfig& config, const envs::AvoidEnvironment& env,
    const std::string& method, int seed, const std::filesystem::path& cell_dir)>;

// Runs fge::Trainer for config.iterations and saves its artifacts.
CellTrainer DefaultCellTrainer(std::ostream* log = nullptr);

struct ExperimentResult {
  SafetyMatrix matrix;
  Report report;
};

std::filesystem::path CellDir(const std::filesystem::path& run_dir,
                              const std::string& method, int seed);

// Trains every (method, seed) cell, evaluates each on the shared grid and
// writes the run directory. A failing cell is recorded and skipped.
ExperimentResult RunExperiment(const ExperimentConfig& config,
                               const CellTrainer& trainer,
                               std::ostream* log = nullptr);

// Re-evaluates the saved policy checkpoints of a run directory.
ExperimentResult EvaluateRunDir(const std::filesystem::path& run_dir,
                                std::ostream* log = nullptr);

}  // namespace fgelab::harness

#endif  // FGELAB_HARNESS_EXPERIMENT_H_
