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

#ifndef FGELAB_FEASIBILITY_ANALYTICS_H_
#define FGELAB_FEASIBILITY_ANALYTICS_H_

#include <vector>

namespace fgelab::feasibility {

// Optimal classifier under the mixture target:
//   (a p* p_Df + (1 - a) p_pi rho) / (a p_Df + (1 - a) rho).
double ExactMixtureConditional(double alpha, double p_df, double rho,
                               double p_star, double p_pi);

// Minimum p_pi(f = 1 | theta) for which a feasible theta is classified
// feasible at threshold beta: beta - (1 - beta) a p_Df / ((1 - a) rho).
// Returns -infinity when rho = 0.
double FeasibleThreshold(double alpha, double beta, double rho, double p_df);

struct FixedPoint {
  std::vector<double> q_f0_given_theta;
  double q_f0 = 0.0;
};

// Closed-form limit of alternating classifier fits and rejection sampling on
// a discrete grid, for a fixed policy with failure probabilities
// p_pi_f0[i] = p_pi(f = 0 | theta_i).
FixedPoint FixedPointError(double alpha, const std::vector<double>& p_df,
                           const std::vector<double>& p_base,
                           const std::vector<double>& p_pi_f0);

}  // namespace fgelab::feasibility

#endif  // FGELAB_FEASIBILITY_ANALYTICS_H_
