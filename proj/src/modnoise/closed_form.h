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

#ifndef MODNOISE_CLOSED_FORM_H_
#define MODNOISE_CLOSED_FORM_H_

#include <vector>

#include "modnoise/pmf.h"

namespace modnoise {

// One alternating pair of regions of the optimal error rate as a
// function of delta: the linear interval (linear_lo, linear_hi) where
// rho* decreases, followed by the flat interval [flat_lo, flat_hi]
// where it is constant. Section 0 has no linear part.
struct RegionSegment {
  int k = 0;  // section index; BD sections use k = (h-1)h/2 + j
  int h = 0;
  int j = 0;
  double linear_lo = 0.0;
  double linear_hi = 0.0;
  double flat_lo = 0.0;
  double flat_hi = 0.0;
};

// Breakpoint structure of rho*(delta) for a fixed eps.
struct RegionMap {
  enum class Kind { kSd, kBd };
  Kind kind = Kind::kSd;
  int n = 0;
  int mu = 0;
  double eps = 0.0;
  int b = 0;  // BD decomposition n = b*mu_bar + r
  int r = 0;
  std::vector<RegionSegment> segments;
  // BD only: the terminal segment (final_lo, 1] where f*(0) = delta.
  double final_lo = 1.0;
};

// Step-function form of a BD-optimal PMF: group i spans
// group_lengths[i] consecutive support points with mass
// group_values[i].
struct StaircaseDescriptor {
  std::vector<int> group_lengths;
  std::vector<double> group_values;
  int k = 0;
  bool flat = true;
};

// Closed-form construction plus the region that produced it.
struct ClosedFormPmf {
  NoisePmf pmf;
  int region_index = 0;
  bool flat = true;
  bool final_segment = false;
};

// Order in which sorted masses are assigned to support positions for a
// single-distance neighborhood: h -> h * mu_hat mod (n+1). Covers the
// full support when (mu_hat, n+1) are coprime and the N-point sublattice
// otherwise.
std::vector<int> SdAssignmentOrder(int n, int mu_hat);

// Size of that lattice: (n+1) / gcd(n+1, mu_hat).
int SdLatticeSize(int n, int mu_hat);

// Optimal PMF at delta = 0: geometric decay e^{-k eps} along the
// assignment order, zero off-lattice. Throws InfeasibleError when the
// resulting f(0) < 0.5.
NoisePmf SdZeroDeltaPmf(int n, int mu_hat, double eps);

// Flat/linear breakpoints of rho*(delta) for the single-distance case
// (coprime form; callers handle the lattice reduction).
RegionMap SdRegionMap(int n, double eps);

// Optimal PMF for any delta in [0,1]; region boundaries resolve to the
// flat formula.
ClosedFormPmf SdOptimalPmf(int n, int mu_hat, double eps, double delta);

// Optimal PMF for the bounded-difference neighborhood at delta = 0:
// staircase with steps (1, mu_bar x b, r) and values phi0 e^{-i eps}.
NoisePmf BdZeroDeltaPmf(int n, int mu_bar, double eps);

// f*(0) normalization constant of Lemma-style staircases; exposed for
// curve and region computations.
double BdPhiZero(int n, int mu_bar, double eps);

// Region map for the bounded-difference case. Requires b + r < mu_bar;
// throws UnsupportedClosedFormError otherwise.
RegionMap BdRegionMap(int n, int mu_bar, double eps);

// Optimal PMF for the bounded-difference neighborhood at any delta.
// Serves [0, phi0 e^{-(b-1) eps}] from the delta = 0 staircase for every
// (n, mu_bar); the remaining staircase regions require b + r < mu_bar;
// the terminal f*(0) = delta segment additionally works for b = 1.
ClosedFormPmf BdOptimalPmf(int n, int mu_bar, double eps, double delta);

// Group structure underlying BdOptimalPmf for staircase regions.
StaircaseDescriptor BdStaircase(int n, int mu_bar, double eps, double delta);

// One piece of the (eps, delta) level curve at fixed error rate.
struct TradeoffSegment {
  double eps_lo = 0.0;  // inclusive; 0 for the terminal constant piece
  double eps_hi = 0.0;  // exclusive; +inf for the delta = 0 piece
  int k = 0;
  int h = 0;
  int j = 0;
  bool zero_delta = false;
  bool constant_tail = false;
};

struct TradeoffCurve {
  RegionMap::Kind kind = RegionMap::Kind::kSd;
  int n = 0;
  int mu = 0;
  double rho_star = 0.0;
  int b = 0;
  std::vector<TradeoffSegment> segments;  // ordered by decreasing eps
};

// Level curve delta(eps) at fixed rho_star in (0, 0.5); breakpoints are
// found by bisection to 1e-10. BD requires b + r < mu_bar.
TradeoffCurve SdTradeoffCurve(int n, int mu_hat, double rho_star);
TradeoffCurve BdTradeoffCurve(int n, int mu_bar, double rho_star);

// Evaluates the level curve at eps (> 0).
double EvalTradeoffDelta(const TradeoffCurve& curve, double eps);

// n -> infinity limit of the optimal error rate at delta = 0.
enum class NeighborhoodKind { kSd, kBd };
double AsymptoticErrorRate(NeighborhoodKind kind, double eps, int mu_bar = 1);

}  // namespace modnoise

#endif  // MODNOISE_CLOSED_FORM_H_
