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

#include "fgelab/feasibility/analytics.h"

#include <algorithm>
#include <limits>

#include "fgelab/common/errors.h"

namespace fgelab::feasibility {

double ExactMixtureConditional(double alpha, double p_df, double rho,
                               double p_star, double p_pi) {
  Require(alpha >= 0.0 && alpha <= 1.0, "ExactMixtureConditional: alpha");
  Require(p_df >= 0.0 && rho >= 0.0 && p_star >= 0.0 && p_pi >= 0.0,
          "ExactMixtureConditional: densities must be nonnegative");
  double den = alpha * p_df + (1.0 - alpha) * rho;
  Require(den > 0.0, "ExactMixtureConditional: zero denominator");
  return (alpha * p_star * p_df + (1.0 - alpha) * p_pi * rho) / den;
}

double FeasibleThreshold(double alpha, double beta, double rho, double p_df) {
  Require(alpha > 0.0 && alpha < 1.0 && beta > 0.0 && beta < 1.0,
          "FeasibleThreshold: alpha, beta in (0, 1)");
  Require(p_df > 0.0 && rho >= 0.0, "FeasibleThreshold: densities");
  if (rho == 0.0) return -std::numeric_limits<double>::infinity();
  return beta - (1.0 - beta) * alpha * p_df / ((1.0 - alpha) * rho);
}

FixedPoint FixedPointError(double alpha, const std::vector<double>& p_df,
                           const std::vector<double>& p_base,
                           const std::vector<double>& p_pi_f0) {
  const size_t n = p_base.size();
  Require(p_df.size() == n && p_pi_f0.size() == n && n > 0,
          "FixedPointError: grids must have equal nonzero length");
  double p_f0 = 0.0;
  for (size_t i = 0; i < n; ++i) {
    Require(p_base[i] > 0.0, "FixedPointError: p(theta) = 0 on the grid");
    p_f0 += p_pi_f0[i] * p_base[i];
  }
  FixedPoint out;
  out.q_f0_given_theta.resize(n);
  for (size_t i = 0; i < n; ++i) {
    out.q_f0_given_theta[i] =
        std::max(0.0, p_pi_f0[i] - alpha * p_df[i] * p_f0 / p_base[i]);
  }
  out.q_f0 = (1.0 - alpha) * p_f0;
  return out;
}

}  // namespace fgelab::feasibility
