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

#include "fgelab/envs/registry.h"

#include <map>

#include "fgelab/common/errors.h"
#include "fgelab/common/json_binder.h"
#include "fgelab/envs/acc.h"
#include "fgelab/envs/chain.h"
#include "fgelab/envs/dubins.h"
#include "fgelab/envs/toy_levels.h"

namespace fgelab::envs {
namespace {

using nlohmann::json;

using Binder = JsonBinder;

Binder Bind(AccConfig& c) {
  Binder b("acc");
  b.Add("dt", &c.dt).Add("p0", &c.p0).Add("horizon", &c.horizon);
  b.Add("a_max_lo", &c.a_max_lo).Add("a_max_hi", &c.a_max_hi);
  b.Add("dv0_lo", &c.dv0_lo).Add("dv0_hi", &c.dv0_hi);
  return b;
}

Binder Bind(ToyLevelsConfig& c) {
  Binder b("toy_levels");
  b.Add("width", &c.width).Add("spawn_height", &c.spawn_height);
  b.Add("shift", &c.shift).Add("disturbance", &c.disturbance);
  b.Add("easy_lo", &c.easy_lo).Add("easy_hi", &c.easy_hi);
  b.Add("hard_lo", &c.hard_lo).Add("hard_hi", &c.hard_hi);
  b.Add("p_easy", &c.p_easy).Add("p_hard", &c.p_hard);
  b.Add("p_infeasible", &c.p_infeasible);
  b.Add("wall_lo", &c.wall_lo).Add("corridor_lo", &c.corridor_lo);
  b.Add("corridor_rows", &c.corridor_rows);
  return b;
}

Binder Bind(DubinsConfig& c) {
  Binder b("dubins");
  b.Add("r_inner", &c.r_inner).Add("w_lane", &c.w_lane).Add("eps", &c.eps);
  b.Add("car_radius", &c.car_radius).Add("v_min", &c.v_min);
  b.Add("v_max", &c.v_max).Add("v0", &c.v0).Add("acc_max", &c.acc_max);
  b.Add("dt", &c.dt).Add("horizon", &c.horizon);
  b.Add("omega_lo", &c.omega_lo).Add("omega_hi", &c.omega_hi);
  b.Add("phase1", &c.phase1).Add("phase2", &c.phase2);
  return b;
}

std::vector<int> ChainLengths(const json& constants) {
  std::vector<int> lengths = {10};
  Require(constants.is_object(), "chain: constants must be an object");
  for (const auto& [key, value] : constants.items()) {
    if (key != "lengths") {
      throw ContractViolation("chain: unknown constant '" + key + "'");
    }
    Require(value.is_array() && !value.empty(),
            "chain: 'lengths' must be a nonempty array");
    lengths = value.get<std::vector<int>>();
  }
  return lengths;
}

}  // namespace

std::unique_ptr<AvoidEnvironment> MakeEnvironment(const std::string& id,
                                                  const json& constants) {
  if (id == "chain") return std::make_unique<ChainMdp>(ChainLengths(constants));
  if (id == "acc") {
    AccConfig c;
    Bind(c).Apply(constants);
    return std::make_unique<Acc>(c);
  }
  if (id == "toy_levels") {
    ToyLevelsConfig c;
    Bind(c).Apply(constants);
    return std::make_unique<ToyLevels>(c);
  }
  if (id == "dubins") {
    DubinsConfig c;
    Bind(c).Apply(constants);
    return std::make_unique<Dubins>(c);
  }
  throw ContractViolation("unknown environment id '" + id + "'");
}

json DefaultConstants(const std::string& id) {
  if (id == "chain") return json{{"lengths", {10}}};
  if (id == "acc") {
    AccConfig c;
    return Bind(c).Dump();
  }
  if (id == "toy_levels") {
    ToyLevelsConfig c;
    return Bind(c).Dump();
  }
  if (id == "dubins") {
    DubinsConfig c;
    return Bind(c).Dump();
  }
  throw ContractViolation("unknown environment id '" + id + "'");
}

}  // namespace fgelab::envs
