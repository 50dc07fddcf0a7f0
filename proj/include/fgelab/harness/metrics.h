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


#ifndef FGELAB_HARNESS_METRICS_H_
#define FGELAB_HARNESS_METRICS_H_

#include <limits>
#include <string>
#include <vector>

namespace fgelab::harness {

// One boolean per evaluation point.
using Mask = std::vector<bool>;

// Returned when a conditioning set is empty.
inline constexpr double kUndefined = std::numeric_limits<double>::quiet_NaN();
bool IsUndefined(double v);

// Elementwise OR; all masks must share a length.
Mask Union(const std::vector<Mask>& masks);

// p(s_m = 1 | s_any = 1).
double SafetyRate(const Mask& s_m, const Mask& s_any);
// p(s_m = 1 | s_any = 1, dr_union = 0).
double CoverageGain(const Mask& s_m, const Mask& dr_union, const Mask& s_any);
// p(s_m = 0 | dr_union = 1).
double CoverageLoss(const Mask& s_m, const Mask& dr_union);
// Fraction of points each method alone makes safe, normalized to sum to 1
// (all zero when no method has a unique point). Needs at least two methods.
std::vector<double> UniqueCoverage(const std::vector<Mask>& methods);

// Mean of the values left after dropping floor(n / 4) from each end of the
// sorted list. Undefined entries are ignored.
double InterquartileMean(std::vector<double> values);
// Linear-interpolation quantile, q in [0, 1]. Undefined entries are ignored.
double Quantile(std::vector<double> values, double q);

}  // namespace fgelab::harness

#endif  // FGELAB_HARNESS_METRICS_H_
