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

#ifndef MODNOISE_MECHANISMS_H_
#define MODNOISE_MECHANISMS_H_

#include <map>
#include <string>
#include <vector>

#include "modnoise/neighborhood.h"
#include "modnoise/pmf.h"
#include "modnoise/privacy.h"

namespace modnoise {

// Infinite-support additive noise truncated to a window [-W, W] whose
// discarded tail mass is below 1e-12, then renormalized.
struct InfiniteNoiseSpec {
  enum class Family { kTwoSidedGeometric, kDiscreteGaussian };
  Family family = Family::kTwoSidedGeometric;
  double parameter = 0.5;  // alpha, or sigma^2
  int window = 0;
  std::vector<double> masses;  // index k + window

  double Mass(int k) const {
    if (k < -window || k > window) return 0.0;
    return masses[k + window];
  }
  // Pr(noise <= k) over the truncated support.
  double Cdf(int k) const;
};

// Two-sided geometric masses (1-alpha)/(1+alpha) alpha^{|k|} restricted
// to [-W..W] and renormalized.
std::map<int, double> GeometricMasses(double alpha, int window);
// Discrete Gaussian masses proportional to e^{-k^2/(2 sigma^2)} on the
// window, normalized.
std::map<int, double> DiscreteGaussianMasses(double sigma2, int window);

// Window chosen automatically from the tail bound.
InfiniteNoiseSpec MakeTwoSidedGeometric(double alpha);
InfiniteNoiseSpec MakeDiscreteGaussian(double sigma2);

double NoiseErrorRate(const InfiniteNoiseSpec& noise);
double NoiseMse(const InfiniteNoiseSpec& noise);

// Leakage of the untruncated additive mechanism on the integers,
// evaluated over ordered pairs at distances +-mu for mu in the offset
// set.
double UnclampedLeakage(const InfiniteNoiseSpec& noise, double eps,
                        const NeighborhoodSpec& nbhd);

// Channel of the clamped mechanism: row q puts F(-q) on 0, f(k - q) on
// interior k, and Pr(noise >= n - q) = 1 - F(n - q - 1) on n.
QueryChannel ClampChannel(const InfiniteNoiseSpec& noise, int n);

// Data-independent baseline: f(0) = 1 - rho, f(eta) = rho / n.
NoisePmf UniformTailPmf(int n, double rho);

enum class AccuracyKind { kErrorRate, kMse };

// Bisection on the mechanism parameter until the exact accuracy
// functional matches the target within 1e-6. Throws
// std::invalid_argument for targets outside the attainable range.
double CalibrateGeometric(AccuracyKind kind, double target);
double CalibrateGaussian(AccuracyKind kind, double target);

struct CompareRow {
  std::string mechanism;
  double eps = 0.0;
  double delta = 0.0;
};

struct CompareSpec {
  int n = 0;
  NeighborhoodSpec nbhd;
  AccuracyKind matched_kind = AccuracyKind::kErrorRate;
  double matched_value = 0.0;
  std::vector<double> eps_grid;
};

// Calibrates each baseline to the matched accuracy and tabulates
// delta(eps) for: the exact optimal mechanism (min-delta MILP), the
// geometric and Gaussian baselines both unclamped and clamped, and the
// uniform-tail PMF when matching an error rate.
std::vector<CompareRow> CompareTradeoffs(const CompareSpec& spec);

}  // namespace modnoise

#endif  // MODNOISE_MECHANISMS_H_
