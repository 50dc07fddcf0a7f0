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


#ifndef FGELAB_COMMON_JSON_BINDER_H_
#define FGELAB_COMMON_JSON_BINDER_H_

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "fgelab/common/errors.h"
#include "json.hpp"

namespace fgelab {

// Binds JSON object keys to struct fields. Apply() rejects unknown keys and
// mistyped values; Dump() writes the current field values back out.
class JsonBinder {
 public:
  using json = nlohmann::json;

  explicit JsonBinder(std::string context) : context_(std::move(context)) {}

  JsonBinder& Add(const std::string& key, double* field) {
    return Bind(key, [where = Where(key), field](const json& v) {
      Require(v.is_number(), where + " must be a number");
      *field = v.get<double>();
    }, [field] { return json(*field); });
  }
  JsonBinder& Add(const std::string& key, int* field) {
    return Bind(key, [where = Where(key), field](const json& v) {
      Require(v.is_number_integer(), where + " must be an integer");
      *field = v.get<int>();
    }, [field] { return json(*field); });
  }
  JsonBinder& Add(const std::string& key, bool* field) {
    return Bind(key, [where = Where(key), field](const json& v) {
      Require(v.is_boolean(), where + " must be a boolean");
      *field = v.get<bool>();
    }, [field] { return json(*field); });
  }
  JsonBinder& Add(const std::string& key, std::string* field) {
    return Bind(key, [where = Where(key), field](const json& v) {
      Require(v.is_string(), where + " must be a string");
      *field = v.get<std::string>();
    }, [field] { return json(*field); });
  }
  JsonBinder& Add(const std::string& key, std::vector<int>* field) {
    return Bind(key, [where = Where(key), field](const json& v) {
      Require(v.is_array(), where + " must be an array");
      for (const auto& e : v) {
        Require(e.is_number_integer(), where + " must hold integers");
      }
      *field = v.get<std::vector<int>>();
    }, [field] { return json(*field); });
  }
  // Nested object handled by a child binder.
  JsonBinder& Add(const std::string& key, JsonBinder child) {
    auto shared = std::make_shared<JsonBinder>(std::move(child));
    return Bind(key, [shared](const json& v) { shared->Apply(v); },
                [shared] { return shared->Dump(); });
  }
  // Arbitrary value with a custom parser and printer.
  JsonBinder& Add(const std::string& key, std::function<void(const json&)> set,
                  std::function<json()> get) {
    return Bind(key, std::move(set), std::move(get));
  }

  void Apply(const json& object) const {
    Require(object.is_object(), context_ + " must be an object");
    for (const auto& [key, value] : object.items()) {
      auto it = setters_.find(key);
      if (it == setters_.end()) {
        throw ContractViolation(context_ + ": unknown key '" + key + "'");
      }
      it->second(value);
    }
  }

  json Dump() const {
    json out = json::object();
    for (const auto& [key, get] : getters_) out[key] = get();
    return out;
  }

 private:
  JsonBinder& Bind(const std::string& key, std::function<void(const json&)> set,
                   std::function<json()> get) {
    setters_[key] = std::move(set);
    getters_[key] = std::move(get);
    return *this;
  }
  std::string Where(const std::string& key) const {
    return context_ + ": '" + key + "'";
  }

  std::string context_;
  std::map<std::string, std::function<void(const json&)>> setters_;
  std::map<std::string, std::function<json()>> getters_;
};

}  // namespace fgelab

#endif  // FGELAB_COMMON_JSON_BINDER_H_
