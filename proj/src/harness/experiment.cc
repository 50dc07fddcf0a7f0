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


#include "fgelab/harness/experiment.h"

#include <chrono>
#include <fstream>
#include <map>
#include <set>

#include "fgelab/common/csv.h"
#include "fgelab/common/errors.h"
#include "fgelab/envs/registry.h"
#include "fgelab/fge/trainer.h"
#include "fgelab/nn/mlp.h"
#include "json.hpp"

namespace fgelab::harness {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

const std::vector<std::string>& MetricNames() {
  static const std::vector<std::string> names = {
      "safety_rate", "coverage_gain", "coverage_loss", "hard_safety_rate"};
  return names;
}

double MetricValue(const MetricsRow& r, const std::string& name) {
  if (name == "safety_rate") return r.safety_rate;
  if (name == "coverage_gain") return r.coverage_gain;
  if (name == "coverage_loss") return r.coverage_loss;
  return r.hard_safety_rate;
}

double Fraction(const Mask& m) {
  if (m.empty()) return kUndefined;
  double k = 0.0;
  for (bool b : m) k += b ? 1.0 : 0.0;
  return k / static_cast<double>(m.size());
}

// JSON has no NaN; undefined values are written as null.
json Num(double v) { return IsUndefined(v) ? json(nullptr) : json(v); }

json GridJson(const std::vector<envs::ParameterVector>& grid) {
  json out = json::array();
  for (const auto& t : grid) out.push_back(t.values);
  return out;
}

std::vector<envs::ParameterVector> GridFromJson(const json& j) {
  std::vector<envs::ParameterVector> out;
  for (const auto& t : j) out.emplace_back(t.get<std::vector<double>>());
  return out;
}

json MaskJson(const Mask& m) {
  std::string s;
  for (bool b : m) s.push_back(b ? '1' : '0');
  return s;
}

Mask MaskFromJson(const json& j) {
  Mask m;
  for (char c : j.get<std::string>()) {
    Require(c == '0' || c == '1', "safety matrix: bad mask character");
    m.push_back(c == '1');
  }
  return m;
}

std::string Sanitize(std::string s) {
  for (char& c : s) {
    if (c == ',' || c == '\n' || c == '\r') c = ' ';
  }
  return s;
}

void WriteGridCsv(const fs::path& path, const SafetyMatrix& m) {
  size_t d = m.grid.empty() ? 0 : m.grid.front().size();
  std::vector<std::string> header = {"set", "index"};
  for (size_t j = 0; j < d; ++j) header.push_back("theta" + std::to_string(j));
  CsvWriter out(path, header);
  auto emit = [&](const std::string& set,
                  const std::vector<envs::ParameterVector>& g) {
    for (size_t i = 0; i < g.size(); ++i) {
      std::vector<CsvWriter::Cell> row = {set, static_cast<long long>(i)};
      for (double v : g[i].values) row.push_back(v);
      out.Row(row);
    }
  };
  emit("lattice", m.grid);
  emit("hard", m.hard_grid);
}

void Log(std::ostream* log, const std::string& line) {
  if (log != nullptr) *log << line << std::endl;
}

}  // namespace

void SafetyMatrix::Validate() const {
  for (const auto& c : cells) {
    if (!c.ok) continue;
    Require(c.safe.size() == grid.size() && c.hard.size() == hard_grid.size(),
            "safety matrix is not rectangular");
  }
}

const SummaryRow* Report::Find(const std::string& method,
                               const std::string& metric) const {
  for (const auto& s : summary) {
    if (s.method == method && s.metric == metric) return &s;
  }
  return nullptr;
}

Report ComputeReport(const SafetyMatrix& matrix, const std::string& dr_method) {
  matrix.Validate();
  Report report;
  std::vector<Mask> all, dr;
  std::vector<std::string> order;  // methods in first-seen order
  std::map<std::string, std::vector<Mask>> by_method;
  for (const auto& c : matrix.cells) {
    if (!c.ok) {
      report.failures.push_back(c.method + " seed " + std::to_string(c.seed) +
                                ": " + c.error);
      continue;
    }
    all.push_back(c.safe);
    if (c.method == dr_method) dr.push_back(c.safe);
    if (!by_method.count(c.method)) order.push_back(c.method);
    by_method[c.method].push_back(c.safe);
  }
  if (all.empty()) return report;
  Mask any = Union(all);
  Mask dr_union = dr.empty() ? Mask{} : Union(dr);
  for (const auto& c : matrix.cells) {
    if (!c.ok) continue;
    MetricsRow r;
    r.method = c.method;
    r.seed = c.seed;
    r.safety_rate = SafetyRate(c.safe, any);
    if (!dr.empty()) {
      r.coverage_gain = CoverageGain(c.safe, dr_union, any);
      r.coverage_loss = CoverageLoss(c.safe, dr_union);
    }
    r.hard_safety_rate = Fraction(c.hard);
    report.rows.push_back(r);
  }
  if (order.size() >= 2) {
    std::vector<Mask> unions;
    for (const auto& m : order) unions.push_back(Union(by_method[m]));
    std::vector<double> u = UniqueCoverage(unions);
    for (size_t i = 0; i < order.size(); ++i) {
      report.unique_coverage.emplace_back(order[i], u[i]);
    }
  }
  for (const auto& m : order) {
    for (const auto& name : MetricNames()) {
      std::vector<double> v;
      for (const auto& r : report.rows) {
        if (r.method == m) v.push_back(MetricValue(r, name));
      }
      SummaryRow s;
      s.method = m;
      s.metric = name;
      for (double x : v) s.n += IsUndefined(x) ? 0 : 1;
      s.iqm = InterquartileMean(v);
      s.q25 = Quantile(v, 0.25);
      s.q75 = Quantile(v, 0.75);
      report.summary.push_back(s);
    }
  }
  return report;
}

SafetyMatrix MergeMatrices(const std::vector<SafetyMatrix>& parts) {
  Require(!parts.empty(), "nothing to merge");
  SafetyMatrix out;
  out.grid = parts.front().grid;
  out.hard_grid = parts.front().hard_grid;
  std::set<std::pair<std::string, int>> seen;
  for (const auto& p : parts) {
    Require(p.grid == out.grid && p.hard_grid == out.hard_grid,
            "merged runs must share their evaluation grids");
    for (const auto& c : p.cells) {
      Require(seen.insert({c.method, c.seed}).second,
              "merged runs repeat " + c.method + " seed " +
                  std::to_string(c.seed));
      out.cells.push_back(c);
    }
  }
  return out;
}

void WriteSafetyMatrix(const fs::path& dir, const SafetyMatrix& m) {
  m.Validate();
  fs::create_directories(dir);
  WriteGridCsv(dir / "grid.csv", m);
  {
    CsvWriter cells(dir / "cells.csv",
                    {"method", "seed", "status", "train_seconds", "error"});
    CsvWriter safety(dir / "safety_matrix.csv",
                     {"method", "seed", "set", "index", "safe"});
    for (const auto& c : m.cells) {
      cells.Row({c.method, static_cast<long long>(c.seed),
                 std::string(c.ok ? "ok" : "failed"), c.train_seconds,
                 Sanitize(c.error)});
      if (!c.ok) continue;
      for (size_t i = 0; i < c.safe.size(); ++i) {
        safety.Row({c.method, static_cast<long long>(c.seed),
                    std::string("lattice"), static_cast<long long>(i),
                    static_cast<long long>(c.safe[i])});
      }
      for (size_t i = 0; i < c.hard.size(); ++i) {
        safety.Row({c.method, static_cast<long long>(c.seed),
                    std::string("hard"), static_cast<long long>(i),
                    static_cast<long long>(c.hard[i])});
      }
    }
  }
  json j;
  j["grid"] = GridJson(m.grid);
  j["hard_grid"] = GridJson(m.hard_grid);
  j["cells"] = json::array();
  for (const auto& c : m.cells) {
    j["cells"].push_back({{"method", c.method},
                          {"seed", c.seed},
                          {"ok", c.ok},
                          {"error", c.error},
                          {"train_seconds", c.train_seconds},
                          {"safe", MaskJson(c.safe)},
                          {"hard", MaskJson(c.hard)}});
  }
  std::ofstream(dir / "safety_matrix.json") << j.dump() << '\n';
}

SafetyMatrix LoadSafetyMatrix(const fs::path& dir) {
  std::ifstream in(dir / "safety_matrix.json");
  if (!in) {
    throw std::runtime_error("no safety_matrix.json in " + dir.string());
  }
  json j = json::parse(in);
  SafetyMatrix m;
  m.grid = GridFromJson(j.at("grid"));
  m.hard_grid = GridFromJson(j.at("hard_grid"));
  for (const auto& c : j.at("cells")) {
    CellResult r;
    r.method = c.at("method").get<std::string>();
    r.seed = c.at("seed").get<int>();
    r.ok = c.at("ok").get<bool>();
    r.error = c.at("error").get<std::string>();
    r.train_seconds = c.at("train_seconds").get<double>();
    r.safe = MaskFromJson(c.at("safe"));
    r.hard = MaskFromJson(c.at("hard"));
    m.cells.push_back(std::move(r));
  }
  m.Validate();
  return m;
}

void WriteReport(const fs::path& dir, const Report& report) {
  fs::create_directories(dir);
  {
    std::vector<std::string> header = {"method", "seed"};
    for (const auto& n : MetricNames()) header.push_back(n);
    CsvWriter out(dir / "metrics.csv", header);
    for (const auto& r : report.rows) {
      std::vector<CsvWriter::Cell> row = {r.method,
                                          static_cast<long long>(r.seed)};
      for (const auto& n : MetricNames()) row.push_back(MetricValue(r, n));
      out.Row(row);
    }
  }
  {
    CsvWriter out(dir / "unique_coverage.csv", {"method", "unique_coverage"});
    for (const auto& [m, v] : report.unique_coverage) out.Row({m, v});
  }
  {
    CsvWriter out(dir / "summary.csv",
                  {"method", "metric", "iqm", "q25", "q75", "n"});
    for (const auto& s : report.summary) {
      out.Row({s.method, s.metric, s.iqm, s.q25, s.q75,
               static_cast<long long>(s.n)});
    }
  }
  json j;
  j["summary"] = json::array();
  for (const auto& s : report.summary) {
    j["summary"].push_back({{"method", s.method},
                            {"metric", s.metric},
                            {"iqm", Num(s.iqm)},
                            {"q25", Num(s.q25)},
                            {"q75", Num(s.q75)},
                            {"n", s.n}});
  }
  j["unique_coverage"] = json::object();
  for (const auto& [m, v] : report.unique_coverage) j["unique_coverage"][m] = v;
  j["failures"] = report.failures;
  std::ofstream(dir / "summary.json") << j.dump(2) << '\n';
}

CellTrainer DefaultCellTrainer(std::ostream* log) {
  return [log](const ExperimentConfig& config, const envs::AvoidEnvironment& env,
               const std::string& method, int seed,
               const fs::path& cell_dir) -> ActionFn {
    fge::TrainerConfig tc = config.trainer;
    tc.method = fge::ParseMethod(method);
    fge::Trainer trainer(env, tc, static_cast<uint64_t>(seed));
    const int every = std::max(1, config.iterations / 10);
    for (int i = 0; i < config.iterations; ++i) {
      const fge::IterationMetrics& m = trainer.Step();
      if ((i + 1) % every == 0 || i + 1 == config.iterations) {
        Log(log, method + " seed " + std::to_string(seed) + " iteration " +
                     std::to_string(i + 1) + "/" +
                     std::to_string(config.iterations) + " safety " +
                     CsvWriter::Format(m.safety_rate) + " feasible " +
                     std::to_string(m.feasible_size));
      }
    }
    trainer.SaveArtifacts(cell_dir);
    return GreedyPolicy(trainer.actor_critic().policy, env);
  };
}

fs::path CellDir(const fs::path& run_dir, const std::string& method, int seed) {
  return run_dir / "cells" / (method + "_seed" + std::to_string(seed));
}

namespace {

// Shared by training and re-evaluation: obtains each cell's controller,
// evaluates it and writes the run directory.
using ControllerFn = std::function<ActionFn(const std::string& method, int seed,
                                            const fs::path& cell_dir)>;

ExperimentResult EvaluateCells(const ExperimentConfig& config,
                               const fs::path& run_dir,
                               const ControllerFn& controller,
                               std::ostream* log) {
  auto env = envs::MakeEnvironment(config.env, config.env_constants);
  ExperimentResult result;
  result.matrix.grid = EvaluationGrid(*env, config.eval);
  result.matrix.hard_grid = HardRegionGrid(*env, config.eval.region_points);
  for (const auto& method : config.methods) {
    for (int seed : config.seeds) {
      CellResult cell;
      cell.method = method;
      cell.seed = seed;
      auto t0 = std::chrono::steady_clock::now();
      try {
        ActionFn act = controller(method, seed, CellDir(run_dir, method, seed));
        cell.train_seconds = std::chrono::duration<double>(
                                 std::chrono::steady_clock::now() - t0)
                                 .count();
        cell.safe = Evaluate(act, *env, result.matrix.grid);
        cell.hard = Evaluate(act, *env, result.matrix.hard_grid);
      } catch (const std::exception& e) {
        cell.ok = false;
        cell.error = e.what();
        cell.safe.clear();
        cell.hard.clear();
        Log(log, method + " seed " + std::to_string(seed) +
                     " failed: " + e.what());
      }
      result.matrix.cells.push_back(std::move(cell));
    }
  }
  result.report = ComputeReport(result.matrix);
  WriteSafetyMatrix(run_dir, result.matrix);
  WriteReport(run_dir, result.report);
  return result;
}

}  // namespace

ExperimentResult RunExperiment(const ExperimentConfig& config,
                               const CellTrainer& trainer, std::ostream* log) {
  config.Validate();
  const fs::path run_dir = config.output_dir;
  fs::create_directories(run_dir);
  std::ofstream(run_dir / "config.json") << ToJson(config).dump(2) << '\n';
  auto env = envs::MakeEnvironment(config.env, config.env_constants);
  return EvaluateCells(
      config, run_dir,
      [&](const std::string& method, int seed, const fs::path& cell_dir) {
        return trainer(config, *env, method, seed, cell_dir);
      },
      log);
}

ExperimentResult EvaluateRunDir(const fs::path& run_dir, std::ostream* log) {
  ExperimentConfig config = LoadExperimentConfig(run_dir / "config.json");
  auto env = envs::MakeEnvironment(config.env, config.env_constants);
  return EvaluateCells(
      config, run_dir,
      [&](const std::string&, int, const fs::path& cell_dir) {
        const fs::path ckpt = cell_dir / "policy.json";
        if (!fs::exists(ckpt)) {
          throw std::runtime_error("missing checkpoint " + ckpt.string());
        }
        rl::Policy policy(nn::LoadCheckpoint(ckpt),
                          rl::ObsNormalizer::ForEnvironment(*env));
        return GreedyPolicy(policy, *env);
      },
      log);
}

}  // namespace fgelab::harness
