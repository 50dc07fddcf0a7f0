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

// Runs the acceptance criteria and prints one PASS/FAIL line per criterion.
// Exit status is the number of failed criteria.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "fgelab/common/rng.h"
#include "fgelab/envs/acc.h"
#include "fgelab/envs/analysis.h"
#include "fgelab/envs/chain.h"
#include "fgelab/envs/registry.h"
#include "fgelab/feasibility/analytics.h"
#include "fgelab/feasibility/classifier.h"
#include "fgelab/fge/trainer.h"
#include "fgelab/harness/config.h"
#include "fgelab/harness/evaluate.h"
#include "fgelab/harness/experiment.h"
#include "fgelab/rl/reinforce.h"
#include "fgelab/saddle/experiments.h"
#include "fgelab/saddle/game.h"
#include "support/fixed_point_oracle.h"

namespace fs = std::filesystem;

namespace fgelab {
namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = false;
  std::string detail;
};

double Seconds(Clock::time_point since) {
  return std::chrono::duration<double>(Clock::now() - since).count();
}

std::string Fmt(const char* format, double a = 0, double b = 0, double c = 0,
                double d = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, format, a, b, c, d);
  return buf;
}

int failures = 0;

// Runs `body`, appends the runtime check and prints the verdict. Exceptions
// count as failures.
void Report(int id, const std::string& name, double limit_seconds,
            const std::function<Outcome()>& body) {
  auto t0 = Clock::now();
  Outcome out;
  try {
    out = body();
  } catch (const std::exception& e) {
    out = {false, std::string("exception: ") + e.what()};
  }
  double secs = Seconds(t0);
  if (limit_seconds > 0 && secs >= limit_seconds) out.pass = false;
  if (!out.pass) ++failures;
  std::printf("%s criterion %d (%s): %s; %.1fs (limit %.0fs)\n",
              out.pass ? "PASS" : "FAIL", id, name.c_str(), out.detail.c_str(),
              secs, limit_seconds);
  std::fflush(stdout);
}

Outcome Bilinear() {
  saddle::BilinearConfig cfg;
  double avg_pi = NAN;
  for (const auto& row : saddle::RunBilinear(cfg)) {
    if (row.method == "ftrl_exact" && row.t == cfg.iterations) avg_pi = row.avg_pi;
  }
  saddle::ScalarGame g = saddle::BilinearGame();
  saddle::Iterate it{0.5, 0.5};
  double r = std::hypot(it.pi, it.theta);
  double worst_drop = 0.0;
  for (int t = 0; t < 1000; ++t) {
    it = saddle::GdaStep(g, it, cfg.eta, /*project=*/false);
    double r2 = std::hypot(it.pi, it.theta);
    worst_drop = std::max(worst_drop, r - r2);
    r = r2;
  }
  bool ok = std::abs(avg_pi) <= 0.05 && worst_drop <= 1e-9;
  return {ok, Fmt("|avg pi| at T=2000 = %.4g, GDA radius %.4g -> %.4g, max drop %.2g",
                  std::abs(avg_pi), std::hypot(0.5, 0.5), r, worst_drop)};
}

Outcome GapDecay() {
  saddle::BilinearConfig cfg;
  double slope = saddle::LogLogSlope(saddle::FtrlGapCurve(cfg, 100, 10000, 12));
  return {slope <= -0.4, Fmt("log-log gap slope %.3f (need <= -0.4)", slope)};
}

Outcome ChainVariance() {
  const double pi = 0.5, gamma = 0.99;
  bool ok = true;
  std::string detail;
  double prev = -INFINITY;
  for (int h : {2, 5, 10, 20, 50, 100}) {
    double v = envs::ComputeChainGradStats(h, pi, gamma).variance;
    ok = ok && v > prev;
    prev = v;
  }
  detail = ok ? "closed form strictly increasing over H" : "closed form not increasing";
  for (int h : {2, 5, 10}) {
    envs::ChainGradStats cf = envs::ComputeChainGradStats(h, pi, gamma);
    // Exact fourth central moment gives the standard error of the unbiased
    // sample variance.
    double m4 = 0.0;
    for (int t = 1; t <= h; ++t) {
      double d = envs::ChainGradSample(t, h, pi, gamma) - cf.mean;
      m4 += envs::ChainTerminationProb(t, h, pi) * d * d * d * d;
    }
    const int n = 100000;
    Rng rng(17, static_cast<uint64_t>(h));
    rl::McGradEstimate mc = rl::ReinforceMcGrad(envs::ChainMdp::Single(h), pi, gamma, n, rng);
    double s4 = cf.variance * cf.variance;
    double se_var = std::sqrt(std::max(0.0, (m4 - s4 * (n - 3.0) / (n - 1.0)) / n));
    double z_var = se_var > 0 ? std::abs(mc.variance - cf.variance) / se_var
                              : (mc.variance == cf.variance ? 0.0 : INFINITY);
    double z_mean = mc.standard_error > 0 ? std::abs(mc.mean - cf.mean) / mc.standard_error
                                          : (mc.mean == cf.mean ? 0.0 : INFINITY);
    ok = ok && z_var <= 3.0 && z_mean <= 3.0;
    detail += Fmt(", H=%g var %.4g vs %.4g (%.2f SE)", h, mc.variance, cf.variance, z_var);
  }
  return {ok, detail};
}

Outcome ClassifierAnalytics() {
  Rng rng(2024, 0);
  const int n = 10000;
  long long bad_zero = 0, bad_equiv = 0, bad_fixed = 0, bad_bound = 0, bound_cases = 0;
  for (int i = 0; i < n; ++i) {
    double a = rng.Uniform(0.01, 0.99), b = rng.Uniform(0.01, 0.99);
    double rho = rng.Uniform(0.01, 3.0), pdf = rng.Uniform(0.01, 3.0);
    double ppi = rng.Uniform();
    if (feasibility::ExactMixtureConditional(a, pdf, rho, 0.0, 0.0) != 0.0) ++bad_zero;
    double cond = feasibility::ExactMixtureConditional(a, pdf, rho, 1.0, ppi);
    bool lhs = ppi >= feasibility::FeasibleThreshold(a, b, rho, pdf);
    if (std::abs(cond - b) > 1e-9 && lhs != (cond >= b)) ++bad_equiv;
  }
  for (int i = 0; i < n; ++i) {
    auto inst = testing::RandomUnclippedInstance(rng, 2 + rng.Below(6));
    auto it = testing::IterateClassifierMap(inst, 1000, 1e-12);
    feasibility::FixedPoint fp = feasibility::FixedPointError(
        inst.alpha, inst.p_df, inst.p_base, inst.p_pi_f0);
    bool match = it.converged;
    for (size_t k = 0; match && k < it.q.size(); ++k) {
      match = std::abs(it.q[k] - fp.q_f0_given_theta[k]) <= 1e-6;
    }
    if (!match) ++bad_fixed;
  }
  // Worst-case policy (always fails): alpha >= (1 - eps) p(theta) / p_Df(theta)
  // keeps the false-infeasible rate at theta below eps.
  for (double eps : {0.1, 0.01}) {
    for (int i = 0; i < n / 2; ++i) {
      size_t m = 2 + rng.Below(8);
      std::vector<double> pb(m), pdf(m);
      double sb = 0, sd = 0;
      for (size_t k = 0; k < m; ++k) {
        pb[k] = rng.Uniform(0.1, 1.0);
        pdf[k] = rng.Uniform(0.1, 1.0);
        sb += pb[k];
        sd += pdf[k];
      }
      for (size_t k = 0; k < m; ++k) {
        pb[k] /= sb;
        pdf[k] /= sd;
      }
      size_t k = rng.Below(m);
      double alpha_min = (1.0 - eps) * pb[k] / pdf[k];
      if (alpha_min >= 1.0) continue;
      ++bound_cases;
      double alpha = rng.Uniform(alpha_min, 1.0);
      auto fp = feasibility::FixedPointError(alpha, pdf, pb, std::vector<double>(m, 1.0));
      if (fp.q_f0_given_theta[k] > eps + 1e-12) ++bad_bound;
    }
  }
  bool ok = bad_zero == 0 && bad_equiv == 0 && bad_fixed == 0 && bad_bound == 0 &&
            bound_cases > 0;
  return {ok, Fmt("mismatches: zero %g, threshold %g, fixed point %g, bound %g",
                  bad_zero, bad_equiv, bad_fixed, bad_bound) +
                  " over " + std::to_string(bound_cases) + " bound cases"};
}

Outcome ValueEquivalence() {
  long long mismatches = 0, points = 0;
  envs::Acc acc(envs::AccConfig{.dt = 0.5, .horizon = 10});
  const auto& b = acc.bounds();
  for (int i = 0; i < 10; ++i) {
    for (int j = 0; j < 10; ++j) {
      envs::ParameterVector th{b.lo[0] + (b.hi[0] - b.lo[0]) * i / 9.0,
                               b.lo[1] + (b.hi[1] - b.lo[1]) * j / 9.0};
      auto v = envs::ComputeBruteForceValues(acc, th, 10);
      mismatches += (v.v_reach <= 0.0) != (v.v_sum == 0.0);
      ++points;
    }
  }
  std::vector<int> lengths;
  for (int h = 2; h <= 11; ++h) lengths.push_back(h);
  envs::ChainMdp chain(lengths);
  for (int p = 1; p <= chain.num_chains(); ++p) {
    auto v = envs::ComputeBruteForceValues(chain, {static_cast<double>(p)}, 12);
    mismatches += (v.v_reach <= 0.0) != (v.v_sum == 0.0);
    ++points;
  }
  return {mismatches == 0, Fmt("%g mismatches over %g parameters", mismatches, points)};
}

Outcome QuarticSensitivity() {
  auto res = saddle::QuarticSensitivity(saddle::SensitivityConfig{});
  bool ok = res.size() == 5;
  std::string medians;
  for (size_t i = 0; i < res.size(); ++i) {
    ok = ok && res[i].cap_hits == 0;
    if (i) ok = ok && res[i].median <= res[i - 1].median;
    medians += (i ? "," : "") + Fmt("%g", res[i].median);
  }
  return {ok, "medians " + medians + " for n = 1,4,16,64,256"};
}

Outcome ToyLevelsComparison(const fs::path& configs, const fs::path& work) {
  harness::ExperimentConfig cfg = harness::LoadExperimentConfig(configs / "toy_levels.json");
  cfg.output_dir = (work / "toy_levels").string();
  harness::ExperimentResult r = harness::RunExperiment(cfg, harness::DefaultCellTrainer(nullptr));
  auto iqm = [&](const char* method, const char* metric) {
    const harness::SummaryRow* row = r.report.Find(method, metric);
    return row ? row->iqm : harness::kUndefined;
  };
  double gain = iqm("fge", "coverage_gain");
  double loss = iqm("fge", "coverage_loss");
  double hard_fge = iqm("fge", "hard_safety_rate");
  double hard_dr = iqm("dr", "hard_safety_rate");
  bool ok = cfg.iterations <= 2000 && cfg.trainer.ppo.n_envs == 256 && cfg.seeds.size() == 3 &&
            r.report.failures.empty() && gain > 0.0 && hard_fge > hard_dr &&
            !harness::IsUndefined(loss) && loss <= 0.05;
  return {ok, Fmt("FGE coverage_gain %.3f, coverage_loss %.3f, hard safety FGE %.3f vs DR %.3f",
                  gain, loss, hard_fge, hard_dr)};
}

Outcome AccClassifier(const fs::path& configs) {
  harness::ExperimentConfig cfg = harness::LoadExperimentConfig(configs / "acc.json");
  auto env = envs::MakeEnvironment(cfg.env, cfg.env_constants);
  const auto* acc = dynamic_cast<const envs::Acc*>(env.get());
  Require(acc != nullptr, "acc config must build an Acc environment");
  fge::TrainerConfig tc = cfg.trainer;
  tc.method = fge::Method::kFGE;
  fge::Trainer trainer(*env, tc, 0);
  trainer.Train(cfg.iterations);
  auto grid = harness::LatticeGrid(env->bounds(), 64);
  long long match = 0;
  for (const auto& theta : grid) {
    match += feasibility::Classify(trainer.classifier(), theta, tc.fge.beta) ==
             envs::AccFeasibilityOracle(*acc, theta);
  }
  double frac = static_cast<double>(match) / grid.size();
  return {frac >= 0.9, Fmt("sign match %.4f on %g points", frac, grid.size())};
}

Outcome Reduction(const fs::path& configs) {
  harness::ExperimentConfig cfg = harness::LoadExperimentConfig(configs / "toy_levels.json");
  auto env = envs::MakeEnvironment(cfg.env, cfg.env_constants);
  fge::TrainerConfig fge_cfg = cfg.trainer;
  fge_cfg.method = fge::Method::kFGE;
  fge_cfg.fge.weights = {1.0, 0.0, 0.0};
  fge_cfg.fge.alpha_mixing = false;
  fge_cfg.record_resets = true;
  fge::TrainerConfig dr_cfg = cfg.trainer;
  dr_cfg.method = fge::Method::kDR;
  dr_cfg.record_resets = true;
  bool ok = true;
  size_t draws = 0;
  for (uint64_t seed : {0, 1, 2}) {
    fge::Trainer a(*env, fge_cfg, seed);
    fge::Trainer b(*env, dr_cfg, seed);
    a.Train(3);
    b.Train(3);
    ok = ok && !b.reset_log().empty() && a.reset_log() == b.reset_log();
    draws += b.reset_log().size();
  }
  return {ok, Fmt("%g reset draws compared over 3 seeds", draws)};
}

}  // namespace
}  // namespace fgelab

int main(int argc, char** argv) {
  using namespace fgelab;
  fs::path configs = argc > 1 ? fs::path(argv[1]) : fs::path(FGELAB_CONFIG_DIR);
  fs::path work = argc > 2 ? fs::path(argv[2]) : fs::temp_directory_path() / "fgelab_acceptance";
  fs::remove_all(work);
  fs::create_directories(work);

  Report(1, "bilinear game", 5, Bilinear);
  Report(2, "duality gap decay", 30, GapDecay);
  Report(3, "chain variance", 30, ChainVariance);
  Report(4, "classifier analytics", 10, ClassifierAnalytics);
  Report(5, "reach and sum value equivalence", 60, ValueEquivalence);
  Report(6, "quartic sensitivity", 120, QuarticSensitivity);

  // Criteria 7 and 8 share one 15 minute budget.
  auto t0 = Clock::now();
  Outcome acc;
  Report(7, "toy levels FGE vs DR", 900, [&] {
    auto t_acc = Clock::now();
    acc = AccClassifier(configs);
    double acc_seconds = Seconds(t_acc);
    Outcome toy = ToyLevelsComparison(configs, work);
    toy.detail += Fmt(" (includes %.1fs ACC training)", acc_seconds);
    return toy;
  });
  double shared = Seconds(t0);
  Report(8, "acc classifier topology", 0, [&] {
    Outcome o = acc;
    if (shared >= 900) o.pass = false;
    o.detail += Fmt("; shared budget %.1fs of 900s", shared);
    return o;
  });
  Report(9, "reduction to DR", 0, [&] { return Reduction(configs); });

  std::printf("%d of 9 criteria failed\n", failures);
  return failures;
}
