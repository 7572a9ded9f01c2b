// Copyright 2026 The modnoise Authors
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

#ifndef MODNOISE_PROBLEMS_H_
#define MODNOISE_PROBLEMS_H_

#include <string>
#include <vector>

#include "modnoise/milp.h"
#include "modnoise/neighborhood.h"
#include "modnoise/pmf.h"

namespace modnoise {

// Largest joint support the exact solvers accept.
inline constexpr int kMaxSupportSize = 4096;

// Accuracy side-constraint for the min-delta formulation.
struct AccuracyTarget {
  enum class Kind { kErrorRate, kMse };
  Kind kind = Kind::kErrorRate;
  double value = 0.0;

  static AccuracyTarget MaxErrorRate(double rho);
  static AccuracyTarget MaxMse(double mse);
};

// Minimize sum w_eta f(eta) over noise PMFs subject to the per-offset
// leakage budget delta: variables f plus, per distinct offset, the
// linearization pair (y, u) with u binary. Weights default to 1 on
// every nonzero support point. dims = 1 yields the scalar program.
MixedIntegerProgram BuildMinErrorMilp(int n, int dims,
                                      const NeighborhoodSpec& nbhd,
                                      double eps, double delta,
                                      const std::vector<double>& weights = {});

// delta = 0 reduction: no binaries, only the circular ratio rows.
LinearProgram BuildZeroDeltaLp(int n, int dims, const NeighborhoodSpec& nbhd,
                               double eps);

// Minimize delta (the last variable) at fixed accuracy: f(0) >= 1 - rho
// or sum eta^2 f(eta) <= mse. Scalar supports only.
MixedIntegerProgram BuildMinDeltaMilp(int n, const NeighborhoodSpec& nbhd,
                                      double eps,
                                      const AccuracyTarget& target);

// Per-eta squared-magnitude weights for the MSE objective variant.
std::vector<double> MseWeights(int n);

struct OptimalPmfResult {
  NoisePmf pmf;
  SolveResult solve;
  std::string method;  // "lp" or "milp"
};

// Solves the exact formulation and reshapes the f block into a PMF.
// Dispatches delta = 0 to the LP reduction. Throws InfeasibleError when
// no mechanism attains f(0) >= 0.5 at this budget.
OptimalPmfResult SolveOptimalPmf(int n, int dims,
                                 const NeighborhoodSpec& nbhd, double eps,
                                 double delta,
                                 const std::vector<double>& weights = {});

struct MinDeltaResult {
  double delta = 0.0;
  NoisePmf pmf;
  SolveResult solve;
};

// Smallest delta attaining the accuracy target at the given eps.
MinDeltaResult SolveMinDelta(int n, const NeighborhoodSpec& nbhd, double eps,
                             const AccuracyTarget& target);

}  // namespace modnoise

#endif  // MODNOISE_PROBLEMS_H_
