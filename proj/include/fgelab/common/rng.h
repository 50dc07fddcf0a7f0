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

#ifndef FGELAB_COMMON_RNG_H_
#define FGELAB_COMMON_RNG_H_

#include <cmath>
#include <cstdint>
#include <numbers>

namespace fgelab {

// Counter-based generator: output i of stream (seed, stream) is a SplitMix64
// finalization of a key derived from both plus the counter. Streams with
// different ids never share state, so per-environment and per-subsystem
// streams can be derived from one master seed without coordination.
class Rng {
 public:
  Rng() : Rng(0, 0) {}
  Rng(uint64_t seed, uint64_t stream)
      : key_(Mix(seed ^ Mix(stream + 0x632be59bd9b4e019ULL))), counter_(0) {}

  uint64_t NextU64() { return Mix(key_ + (++counter_) * kGolden); }

  // Uniform in [0, 1) with 53 bits of resolution.
  double Uniform() {
    return static_cast<double>(NextU64() >> 11) * 0x1.0p-53;
  }
  double Uniform(double lo, double hi) { return lo + (hi - lo) * Uniform(); }

  // Uniform integer in [0, n).
  uint64_t Below(uint64_t n) {
    // Lemire's multiply-shift; the bias is below 2^-64 * n and irrelevant here.
    return static_cast<uint64_t>(
        (static_cast<__uint128_t>(NextU64()) * n) >> 64);
  }

  // Standard normal via Box-Muller; uses two draws per call so that the
  // stream position does not depend on call history.
  double Normal() {
    double u1 = Uniform();
    double u2 = Uniform();
    if (u1 < 1e-300) u1 = 1e-300;
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * std::numbers::pi * u2);
  }

  bool Bernoulli(double p) { return Uniform() < p; }

  uint64_t counter() const { return counter_; }

 private:
  static constexpr uint64_t kGolden = 0x9e3779b97f4a7c15ULL;
  static uint64_t Mix(uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  uint64_t key_;
  uint64_t counter_;
};

// Stream ids reserved for subsystems; per-environment action streams start at
// kEnvStreamBase.
namespace streams {
inline constexpr uint64_t kInit = 1;
inline constexpr uint64_t kResetTheta = 2;
inline constexpr uint64_t kResetBranch = 3;
inline constexpr uint64_t kMinibatch = 4;
inline constexpr uint64_t kClassifier = 5;
inline constexpr uint64_t kPolicyClassifier = 6;
inline constexpr uint64_t kBestResponse = 7;
inline constexpr uint64_t kBaseline = 8;
inline constexpr uint64_t kEval = 9;
inline constexpr uint64_t kEnvStreamBase = 1000;
}  // namespace streams

}  // namespace fgelab

#endif  // FGELAB_COMMON_RNG_H_
