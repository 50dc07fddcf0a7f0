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


// Command-line front end: training and evaluation runs, the analytic
// experiments and report aggregation.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fgelab/common/csv.h"
#include "fgelab/common/errors.h"
#include "fgelab/common/rng.h"
#include "fgelab/envs/analysis.h"
#include "fgelab/envs/chain.h"
#include "fgelab/harness/config.h"
#include "fgelab/harness/experiment.h"
#include "fgelab/rl/reinforce.h"
#include "fgelab/saddle/experiments.h"
#include "json.hpp"

namespace {

namespace fs = std::filesystem;
using nlohmann::json;
using namespace fgelab;

void WriteJson(const fs::path& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string());
  out << j.dump(2) << '\n';
}

void PrintSummary(const harness::Report& report) {
  for (const auto& s : report.summary) {
    std::cout << s.method << ' ' << s.metric << " iqm "
              << CsvWriter::Format(s.iqm) << " [" << CsvWriter::Format(s.q25)
              << ", " << CsvWriter::Format(s.q75) << "] n=" << s.n << '\n';
  }
  for (const auto& [m, u] : report.unique_coverage) {
    std::cout << m << " unique_coverage " << u << '\n';
  }
  for (const auto& f : report.failures) std::cout << "failed: " << f << '\n';
}

int Train(const std::string& config_path, int seed, const std::string& out,
          bool quiet) {
  harness::ExperimentConfig cfg = harness::LoadExperimentConfig(config_path);
  Require(seed >= 0, "seed must be nonnegative");
  cfg.seeds = {seed};
  cfg.output_dir = out.empty()
                       ? (fs::path(cfg.output_dir) / ("seed_" + std::to_string(seed)))
                             .string()
                       : out;
  std::ostream* log = quiet ? nullptr : &std::cerr;
  harness::ExperimentResult r =
      harness::RunExperiment(cfg, harness::DefaultCellTrainer(log), log);
  std::cout << "run directory: " << cfg.output_dir << '\n';
  PrintSummary(r.report);
  return r.report.failures.empty() ? 0 : 1;
}

int Eval(const std::string& run_dir) {
  harness::ExperimentResult r = harness::EvaluateRunDir(run_dir, &std::cerr);
  PrintSummary(r.report);
  return r.report.failures.empty() ? 0 : 1;
}

int Report(const std::vector<std::string>& runs, const std::string& out,
           const std::string& dr_method) {
  std::vector<harness::SafetyMatrix> parts;
  for (const auto& r : runs) parts.push_back(harness::LoadSafetyMatrix(r));
  harness::SafetyMatrix merged = harness::MergeMatrices(parts);
  harness::Report report = harness::ComputeReport(merged, dr_method);
  harness::WriteSafetyMatrix(out, merged);
  harness::WriteReport(out, report);
  std::cout << "report directory: " << out << '\n';
  PrintSummary(report);
  return 0;
}

int Bilinear(const saddle::BilinearConfig& cfg, const std::string& out) {
  fs::create_directories(out);
  std::vector<saddle::TraceRow> rows = saddle::RunBilinear(cfg);
  saddle::WriteTrace((fs::path(out) / "bilinear_trace.csv").string(), rows);
  std::vector<saddle::GapPoint> curve = saddle::FtrlGapCurve(cfg, 100, 10000, 9);
  {
    CsvWriter w(fs::path(out) / "gap_curve.csv", {"t", "gap"});
    for (const auto& p : curve) w.Row({static_cast<long long>(p.t), p.gap});
  }
  json summary;
  for (const auto& r : rows) {
    if (r.t == cfg.iterations) {
      summary[r.method] = {{"pi", r.pi},         {"theta", r.theta},
                           {"avg_pi", r.avg_pi}, {"avg_theta", r.avg_theta},
                           {"gap", r.gap},       {"regret", r.regret}};
    }
  }
  summary["gap_loglog_slope"] = saddle::LogLogSlope(curve);
  WriteJson(fs::path(out) / "bilinear_summary.json", summary);
  std::cout << summary.dump(2) << '\n';
  return 0;
}

int ChainVariance(double pi, double gamma, const std::vector<int>& lengths,
                  int samples, uint64_t seed, const std::string& out) {
  Require(samples >= 0, "sample count must be nonnegative");
  fs::create_directories(out);
  CsvWriter w(fs::path(out) / "chain_variance.csv",
              {"length", "mean", "variance", "truncated_variance", "mc_mean",
               "mc_variance", "mc_standard_error", "mc_samples"});
  json summary = json::array();
  for (int h : lengths) {
    envs::ChainGradStats cf = envs::ComputeChainGradStats(h, pi, gamma);
    rl::McGradEstimate mc;
    if (samples > 0) {
      Rng rng(seed, static_cast<uint64_t>(h));
      mc = rl::ReinforceMcGrad(envs::ChainMdp::Single(h), pi, gamma, samples,
                               rng);
    }
    w.Row({static_cast<long long>(h), cf.mean, cf.variance,
           cf.truncated_variance, mc.mean, mc.variance, mc.standard_error,
           static_cast<long long>(mc.n)});
    summary.push_back({{"length", h},
                       {"variance", cf.variance},
                       {"truncated_variance", cf.truncated_variance},
                       {"mc_variance", mc.variance}});
  }
  WriteJson(fs::path(out) / "chain_variance.json", summary);
  std::cout << summary.dump(2) << '\n';
  return 0;
}

int Sensitivity(const saddle::SensitivityConfig& cfg, const std::string& out) {
  fs::create_directories(out);
  std::vector<saddle::SensitivityResult> res = saddle::QuarticSensitivity(cfg);
  saddle::WriteSensitivity((fs::path(out) / "sensitivity.csv").string(), res);
  json summary = json::array();
  for (const auto& r : res) {
    summary.push_back({{"samples", r.samples},
                       {"median_iterations", r.median},
                       {"max_iterations", r.max},
                       {"cap_hits", r.cap_hits}});
  }
  WriteJson(fs::path(out) / "sensitivity.json", summary);
  std::cout << summary.dump(2) << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fgelab: feasibility-guided exploration laboratory"};
  app.require_subcommand(1);

  std::string config_path, out, run_dir, dr_method = "dr";
  int seed = 0;
  bool quiet = false;
  std::vector<std::string> runs;

  auto* train = app.add_subcommand("train", "train and evaluate one seed");
  train->add_option("--config", config_path, "experiment JSON")
      ->required()
      ->check(CLI::ExistingFile);
  train->add_option("--seed", seed, "training seed")->required();
  train->add_option("--output", out, "run directory (default <output_dir>/seed_<n>)");
  train->add_flag("--quiet", quiet, "no progress log");

  auto* eval = app.add_subcommand("eval", "re-evaluate a run directory");
  eval->add_option("--run-dir", run_dir, "run directory")
      ->required()
      ->check(CLI::ExistingDirectory);

  saddle::BilinearConfig bil;
  std::string bil_out = "bilinear";
  auto* bilinear = app.add_subcommand("bilinear", "bilinear game traces");
  bilinear->add_option("--iterations", bil.iterations)->capture_default_str();
  bilinear->add_option("--eta", bil.eta)->capture_default_str();
  bilinear->add_option("--pi0", bil.pi0)->capture_default_str();
  bilinear->add_option("--theta0", bil.theta0)->capture_default_str();
  bilinear->add_option("--seed", bil.seed)->capture_default_str();
  bilinear->add_option("--out", bil_out)->capture_default_str();

  double pi = 0.5, gamma = 0.99;
  std::vector<int> lengths = {2, 5, 10, 20, 50, 100};
  int samples = 100000;
  uint64_t chain_seed = 0;
  std::string chain_out = "chain_variance";
  auto* chain = app.add_subcommand("chain-variance",
                                   "chain policy-gradient variance");
  chain->add_option("--pi", pi)->capture_default_str();
  chain->add_option("--gamma", gamma)->capture_default_str();
  chain->add_option("--lengths", lengths)->delimiter(',')->capture_default_str();
  chain->add_option("--samples", samples, "Monte-Carlo samples (0 skips)")
      ->capture_default_str();
  chain->add_option("--seed", chain_seed)->capture_default_str();
  chain->add_option("--out", chain_out)->capture_default_str();

  saddle::SensitivityConfig sens;
  std::string sens_out = "sensitivity";
  auto* sensitivity = app.add_subcommand("sensitivity",
                                         "quartic game sample-count sweep");
  sensitivity->add_option("--samples", sens.samples)
      ->delimiter(',')
      ->capture_default_str();
  sensitivity->add_option("--trials", sens.trials)->capture_default_str();
  sensitivity->add_option("--cap", sens.cap)->capture_default_str();
  sensitivity->add_option("--seed", sens.seed)->capture_default_str();
  sensitivity->add_option("--out", sens_out)->capture_default_str();

  std::string report_out = "report";
  auto* report = app.add_subcommand("report", "aggregate run directories");
  report->add_option("--runs", runs, "run directories")
      ->required()
      ->check(CLI::ExistingDirectory);
  report->add_option("--out", report_out)->capture_default_str();
  report->add_option("--dr-method", dr_method)->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*train) return Train(config_path, seed, out, quiet);
    if (*eval) return Eval(run_dir);
    if (*bilinear) return Bilinear(bil, bil_out);
    if (*chain) {
      return ChainVariance(pi, gamma, lengths, samples, chain_seed, chain_out);
    }
    if (*sensitivity) return Sensitivity(sens, sens_out);
    if (*report) return Report(runs, report_out, dr_method);
  } catch (const ContractViolation& e) {
    std::cerr << "contract violation: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
