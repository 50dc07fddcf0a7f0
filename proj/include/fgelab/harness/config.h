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


#ifndef FGELAB_HARNESS_CONFIG_H_
#define FGELAB_HARNESS_CONFIG_H_

#include <filesystem>
#include <string>
#include <vector>

#include "fgelab/fge/trainer.h"
#include "fgelab/harness/evaluate.h"
#include "json.hpp"

namespace fgelab::harness {

// Everything one experiment needs. JSON keys mirror the field names; see
// README.md for the schema. Unknown keys are rejected at every level.
struct ExperimentConfig {
  std::string env = "toy_levels";
  nlohmann::json env_constants = nlohmann::json::object();
  std::vector<std::string> methods = {"fge", "dr"};
  std::vector<int> seeds = {0, 1, 2};
  int iterations = 150;
  // Method and seed are filled per cell; n_envs and rollout_length live in
  // trainer.ppo.
  fge::TrainerConfig trainer;
  GridSpec eval;
  std::string output_dir = "runs/experiment";

  void Validate() const;
};

ExperimentConfig ParseExperimentConfig(const nlohmann::json& j);
ExperimentConfig LoadExperimentConfig(const std::filesystem::path& path);
nlohmann::json ToJson(const ExperimentConfig& config);

}  // namespace fgelab::harness

#endif  // FGELAB_HARNESS_CONFIG_H_
