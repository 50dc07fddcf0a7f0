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


#include "fgelab/harness/config.h"

#include <fstream>
#include <set>
#include <sstream>

#include "fgelab/common/errors.h"
#include "fgelab/common/json_binder.h"
#include "fgelab/envs/registry.h"

namespace fgelab::harness {
namespace {

using nlohmann::json;

JsonBinder BindBudget(ExperimentConfig& c) {
  JsonBinder b("budget");
  b.Add("iterations", &c.iterations);
  b.Add("n_envs", &c.trainer.ppo.n_envs);
  b.Add("rollout_length", &c.trainer.ppo.rollout_length);
  return b;
}

JsonBinder BindPpo(rl::PpoConfig& p) {
  JsonBinder b("ppo");
  b.Add("gamma", &p.gamma).Add("lambda", &p.lambda).Add("clip", &p.clip);
  b.Add("entropy_coef", &p.entropy_coef).Add("value_coef", &p.value_coef);
  b.Add("policy_lr", &p.policy_lr).Add("value_lr", &p.value_lr);
  b.Add("max_grad_norm", &p.max_grad_norm).Add("epochs", &p.epochs);
  b.Add("minibatch_size", &p.minibatch_size);
  return b;
}

JsonBinder BindNetwork(rl::NetworkSpec& n) {
  JsonBinder b("network");
  b.Add("hidden", &n.hidden).Add("initial_log_std", &n.initial_log_std);
  b.Add(
      "activation",
      [&n](const json& v) {
        Require(v.is_string(), "network: 'activation' must be a string");
        n.activation = nn::ActivationFromString(v.get<std::string>());
      },
      [&n] { return json(nn::ToString(n.activation)); });
  return b;
}

JsonBinder BindClassifier(feasibility::ClassifierConfig& c) {
  JsonBinder b("classifier");
  b.Add("hidden", &c.hidden).Add("lr", &c.lr);
  b.Add("minibatch_size", &c.minibatch_size);
  return b;
}

JsonBinder BindFge(fge::FgeSettings& f) {
  JsonBinder b("fge");
  b.Add("p_base", &f.weights.p_base).Add("p_explore", &f.weights.p_explore);
  b.Add("p_rehearse", &f.weights.p_rehearse);
  b.Add("alpha", &f.alpha).Add("beta", &f.beta);
  b.Add("alpha_mixing", &f.alpha_mixing);
  b.Add("classifier_samples", &f.classifier_samples);
  b.Add("classifier_epochs", &f.classifier_epochs);
  b.Add("policy_classifier_epochs", &f.policy_classifier_epochs);
  b.Add("best_response_candidates", &f.best_response_candidates);
  b.Add("explore_max_tries", &f.explore_max_tries);
  return b;
}

JsonBinder BindVds(fge::VdsSettings& v) {
  JsonBinder b("vds");
  b.Add("ensemble", &v.ensemble).Add("cells_per_dim", &v.cells_per_dim);
  b.Add("samples", &v.samples).Add("epochs", &v.epochs);
  return b;
}

JsonBinder BindPlr(fge::PlrSettings& p) {
  JsonBinder b("plr");
  b.Add("temperature", &p.temperature).Add("staleness", &p.staleness);
  b.Add("replay_prob", &p.replay_prob).Add("capacity", &p.capacity);
  return b;
}

JsonBinder BindRarl(fge::RarlSettings& r) {
  JsonBinder b("rarl");
  b.Add("policy_iterations", &r.policy_iterations);
  b.Add("adversary_iterations", &r.adversary_iterations);
  b.Add("cells_per_dim", &r.cells_per_dim).Add("temperature", &r.temperature);
  b.Add("uniform_mix", &r.uniform_mix);
  return b;
}

JsonBinder BindEval(GridSpec& g) {
  JsonBinder b("eval");
  b.Add("per_dim_1d", &g.per_dim_1d).Add("per_dim_2d", &g.per_dim_2d);
  b.Add("per_dim_nd", &g.per_dim_nd).Add("sampled", &g.sampled);
  b.Add("region_points", &g.region_points);
  b.Add(
      "sample_seed",
      [&g](const json& v) {
        Require(v.is_number_unsigned(), "eval: 'sample_seed' must be >= 0");
        g.sample_seed = v.get<uint64_t>();
      },
      [&g] { return json(g.sample_seed); });
  return b;
}

JsonBinder Bind(ExperimentConfig& c) {
  JsonBinder b("experiment");
  b.Add("env", &c.env).Add("output_dir", &c.output_dir);
  b.Add(
      "env_constants",
      [&c](const json& v) {
        Require(v.is_object(), "experiment: 'env_constants' must be an object");
        c.env_constants = v;
      },
      [&c] { return c.env_constants; });
  b.Add(
      "methods",
      [&c](const json& v) {
        Require(v.is_array(), "experiment: 'methods' must be an array");
        c.methods.clear();
        for (const auto& m : v) {
          Require(m.is_string(), "experiment: methods must be strings");
          c.methods.push_back(m.get<std::string>());
        }
      },
      [&c] { return json(c.methods); });
  b.Add("seeds", &c.seeds);
  b.Add("budget", BindBudget(c));
  b.Add("ppo", BindPpo(c.trainer.ppo));
  b.Add("network", BindNetwork(c.trainer.network));
  b.Add("classifier", BindClassifier(c.trainer.classifier));
  b.Add("feasible_resolution", &c.trainer.feasible_resolution);
  b.Add("record_resets", &c.trainer.record_resets);
  b.Add("fge", BindFge(c.trainer.fge));
  b.Add("vds", BindVds(c.trainer.vds));
  b.Add("plr", BindPlr(c.trainer.plr));
  b.Add("rarl", BindRarl(c.trainer.rarl));
  b.Add("eval", BindEval(c.eval));
  return b;
}

}  // namespace

void ExperimentConfig::Validate() const {
  Require(!methods.empty(), "experiment needs at least one method");
  std::set<std::string> seen;
  for (const auto& m : methods) {
    fge::ParseMethod(m);
    Require(seen.insert(m).second, "experiment: duplicate method '" + m + "'");
  }
  Require(!seeds.empty(), "experiment needs at least one seed");
  for (int s : seeds) Require(s >= 0, "experiment seeds must be nonnegative");
  Require(iterations >= 1, "experiment needs at least one iteration");
  Require(!output_dir.empty(), "experiment needs an output directory");
  trainer.Validate();
  envs::MakeEnvironment(env, env_constants);  // checks id and constants
}

ExperimentConfig ParseExperimentConfig(const json& j) {
  ExperimentConfig c;
  Bind(c).Apply(j);
  c.Validate();
  return c;
}

ExperimentConfig LoadExperimentConfig(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ContractViolation(path.string() + ": " + e.what());
  }
  return ParseExperimentConfig(j);
}

json ToJson(const ExperimentConfig& config) {
  ExperimentConfig copy = config;
  return Bind(copy).Dump();
}

}  // namespace fgelab::harness
