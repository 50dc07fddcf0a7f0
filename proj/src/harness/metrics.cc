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


#include "fgelab/harness/metrics.h"

#include <algorithm>
#include <cmath>

#include "fgelab/common/errors.h"

namespace fgelab::harness {
namespace {

void RequireSameSize(const Mask& a, const Mask& b) {
  Require(a.size() == b.size(), "metric masks differ in length");
}

// Conditional frequency of `event` over the points where `given` holds.
template <typename Event, typename Given>
double Conditional(size_t n, Event event, Given given) {
  long long hits = 0, total = 0;
  for (size_t i = 0; i < n; ++i) {
    if (!given(i)) continue;
    ++total;
    hits += event(i) ? 1 : 0;
  }
  if (total == 0) return kUndefined;
  return static_cast<double>(hits) / static_cast<double>(total);
}

std::vector<double> Defined(const std::vector<double>& values) {
  std::vector<double> out;
  for (double v : values) {
    if (!IsUndefined(v)) out.push_back(v);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

bool IsUndefined(double v) { return std::isnan(v); }

Mask Union(const std::vector<Mask>& masks) {
  Require(!masks.empty(), "union of no masks");
  Mask out(masks.front().size(), false);
  for (const Mask& m : masks) {
    RequireSameSize(out, m);
    for (size_t i = 0; i < m.size(); ++i) out[i] = out[i] || m[i];
  }
  return out;
}

double SafetyRate(const Mask& s_m, const Mask& s_any) {
  RequireSameSize(s_m, s_any);
  return Conditional(s_m.size(), [&](size_t i) { return s_m[i]; },
                     [&](size_t i) { return s_any[i]; });
}

double CoverageGain(const Mask& s_m, const Mask& dr_union, const Mask& s_any) {
  RequireSameSize(s_m, dr_union);
  RequireSameSize(s_m, s_any);
  return Conditional(s_m.size(), [&](size_t i) { return s_m[i]; },
                     [&](size_t i) { return s_any[i] && !dr_union[i]; });
}

double CoverageLoss(const Mask& s_m, const Mask& dr_union) {
  RequireSameSize(s_m, dr_union);
  return Conditional(s_m.size(), [&](size_t i) { return !s_m[i]; },
                     [&](size_t i) { return dr_union[i]; });
}

std::vector<double> UniqueCoverage(const std::vector<Mask>& methods) {
  Require(methods.size() >= 2, "unique coverage needs two or more methods");
  Mask any = Union(methods);
  std::vector<double> raw(methods.size(), 0.0);
  for (size_t m = 0; m < methods.size(); ++m) {
    raw[m] = Conditional(
        any.size(),
        [&](size_t i) {
          if (!methods[m][i]) return false;
          for (size_t o = 0; o < methods.size(); ++o) {
            if (o != m && methods[o][i]) return false;
          }
          return true;
        },
        [&](size_t i) { return any[i]; });
    if (IsUndefined(raw[m])) raw[m] = 0.0;
  }
  double total = 0.0;
  for (double r : raw) total += r;
  if (total > 0.0) {
    for (double& r : raw) r /= total;
  }
  return raw;
}

double InterquartileMean(std::vector<double> values) {
  std::vector<double> v = Defined(values);
  if (v.empty()) return kUndefined;
  size_t trim = v.size() / 4;
  double sum = 0.0;
  for (size_t i = trim; i < v.size() - trim; ++i) sum += v[i];
  return sum / static_cast<double>(v.size() - 2 * trim);
}

double Quantile(std::vector<double> values, double q) {
  Require(q >= 0.0 && q <= 1.0, "quantile level must lie in [0, 1]");
  std::vector<double> v = Defined(values);
  if (v.empty()) return kUndefined;
  double pos = q * static_cast<double>(v.size() - 1);
  size_t lo = static_cast<size_t>(std::floor(pos));
  size_t hi = std::min(lo + 1, v.size() - 1);
  return v[lo] + (pos - static_cast<double>(lo)) * (v[hi] - v[lo]);
}

}  // namespace fgelab::harness
