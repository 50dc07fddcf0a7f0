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

#include "fgelab/feasibility/feasible_set.h"

#include <cmath>
#include <fstream>

#include "fgelab/common/errors.h"
#include "json.hpp"

namespace fgelab::feasibility {

namespace {
constexpr const char* kFormat = "fgelab.feasible_set";
constexpr int kVersion = 1;
}  // namespace

size_t FeasibleSet::CellHash::operator()(const Cell& c) const {
  uint64_t h = 0x9e3779b97f4a7c15ULL;
  for (int64_t v : c) {
    h ^= static_cast<uint64_t>(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return static_cast<size_t>(h);
}

FeasibleSet::FeasibleSet(envs::ParamBounds bounds, int resolution)
    : bounds_(std::move(bounds)), resolution_(resolution) {
  Require(resolution_ >= 1, "FeasibleSet: resolution >= 1");
  for (double w : bounds_.Width()) {
    // Degenerate dimensions get unit cells; all their points coincide anyway.
    delta_.push_back(w > 0.0 ? w / resolution_ : 1.0);
  }
}

FeasibleSet::Cell FeasibleSet::CellOf(const envs::ParameterVector& theta) const {
  Cell c(theta.size());
  for (size_t i = 0; i < theta.size(); ++i) {
    c[i] = static_cast<int64_t>(std::floor((theta[i] - bounds_.lo[i]) / delta_[i]));
  }
  return c;
}

bool FeasibleSet::Duplicate(const envs::ParameterVector& a,
                            const envs::ParameterVector& b) const {
  for (size_t i = 0; i < a.size(); ++i) {
    if (std::abs(a[i] - b[i]) >= delta_[i] * (1.0 - 1e-9)) return false;
  }
  return true;
}

bool FeasibleSet::ContainsNear(const envs::ParameterVector& theta) const {
  Require(theta.size() == bounds_.dim(), "FeasibleSet: dimension mismatch");
  const Cell center = CellOf(theta);
  const size_t d = center.size();
  Cell probe(d);
  // Visit the 3^d neighboring cells.
  size_t combos = 1;
  for (size_t i = 0; i < d; ++i) combos *= 3;
  for (size_t k = 0; k < combos; ++k) {
    size_t r = k;
    for (size_t i = 0; i < d; ++i) {
      probe[i] = center[i] + static_cast<int64_t>(r % 3) - 1;
      r /= 3;
    }
    auto it = grid_.find(probe);
    if (it == grid_.end()) continue;
    for (size_t idx : it->second) {
      if (Duplicate(points_[idx], theta)) return true;
    }
  }
  return false;
}

bool FeasibleSet::Record(const envs::ParameterVector& theta) {
  if (ContainsNear(theta)) return false;
  grid_[CellOf(theta)].push_back(points_.size());
  points_.push_back(theta);
  return true;
}

std::string FeasibleSet::ToJsonString() const {
  nlohmann::json j;
  j["format"] = kFormat;
  j["version"] = kVersion;
  j["lo"] = bounds_.lo;
  j["hi"] = bounds_.hi;
  j["resolution"] = resolution_;
  nlohmann::json pts = nlohmann::json::array();
  for (const auto& p : points_) pts.push_back(p.values);
  j["points"] = std::move(pts);
  return j.dump();
}

FeasibleSet FeasibleSet::FromJsonString(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  Require(j.value("format", "") == kFormat, "FeasibleSet: unknown format");
  Require(j.value("version", 0) == kVersion, "FeasibleSet: unsupported version");
  envs::ParamBounds b{j["lo"].get<std::vector<double>>(),
                      j["hi"].get<std::vector<double>>()};
  FeasibleSet set(b, j["resolution"].get<int>());
  for (const auto& p : j["points"]) {
    set.Record(envs::ParameterVector(p.get<std::vector<double>>()));
  }
  return set;
}

void FeasibleSet::Save(const std::filesystem::path& path) const {
  std::ofstream out(path);
  Require(static_cast<bool>(out), "cannot write " + path.string());
  out << ToJsonString() << '\n';
}

PmixDraw DrawPmix(const FeasibleSet& set,
                  const std::vector<rl::EpisodeOutcome>& episodes,
                  double alpha, int n, Rng& rng) {
  Require(alpha >= 0.0 && alpha <= 1.0, "DrawPmix: alpha in [0, 1]");
  Require(n >= 0, "DrawPmix: n >= 0");
  PmixDraw out;
  out.fell_back = set.empty();
  if (set.empty() && episodes.empty()) return out;
  const size_t window = std::min(set.size(), kPositiveReplayCap);
  const size_t first = set.size() - window;
  out.samples.reserve(n);
  for (int k = 0; k < n; ++k) {
    bool positive = !set.empty() && (episodes.empty() || rng.Uniform() < alpha);
    if (positive) {
      const auto& theta = set.points()[first + rng.Below(window)];
      out.samples.push_back({theta, 1, SampleSource::kMeasuredFeasible});
    } else {
      const auto& ep = episodes[rng.Below(episodes.size())];
      out.samples.push_back({ep.theta, ep.safe ? 1 : 0, SampleSource::kOnPolicy});
    }
  }
  return out;
}

}  // namespace fgelab::feasibility
