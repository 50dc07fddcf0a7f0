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

#ifndef FGELAB_COMMON_ERRORS_H_
#define FGELAB_COMMON_ERRORS_H_

#include <cmath>
#include <span>
#include <stdexcept>
#include <string>

namespace fgelab {

// Thrown when a caller breaks a documented precondition (shape mismatch,
// out-of-bounds parameter, invalid configuration).
class ContractViolation : public std::logic_error {
 public:
  explicit ContractViolation(const std::string& what)
      : std::logic_error(what) {}
};

// Thrown when a computation produces or receives non-finite values.
class NumericError : public std::runtime_error {
 public:
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

inline void Require(bool condition, const char* message) {
  if (!condition) throw ContractViolation(message);
}
inline void Require(bool condition, const std::string& message) {
  if (!condition) throw ContractViolation(message);
}

inline bool AllFinite(std::span<const double> values) {
  for (double v : values) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

}  // namespace fgelab

#endif  // FGELAB_COMMON_ERRORS_H_
