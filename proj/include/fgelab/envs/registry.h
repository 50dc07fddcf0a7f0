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

#ifndef FGELAB_ENVS_REGISTRY_H_
#define FGELAB_ENVS_REGISTRY_H_

#include <memory>
#include <string>

#include "fgelab/envs/environment.h"
#include "json.hpp"

namespace fgelab::envs {

// Builds an environment by id ("chain", "acc", "toy_levels", "dubins"),
// overriding default constants from `constants`. Unknown ids or keys throw
// ContractViolation.
std::unique_ptr<AvoidEnvironment> MakeEnvironment(
    const std::string& id,
    const nlohmann::json& constants = nlohmann::json::object());

// Default constants for `id` as a JSON object.
nlohmann::json DefaultConstants(const std::string& id);

}  // namespace fgelab::envs

#endif  // FGELAB_ENVS_REGISTRY_H_
