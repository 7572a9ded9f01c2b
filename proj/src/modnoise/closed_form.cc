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

#include "modnoise/closed_form.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include "modnoise/errors.h"

namespace modnoise {
namespace {

constexpr double kHalfMassTolerance = 1e-9;
constexpr double kBisectLo = 1e-6;
constexpr double kBisectHi = 50.0;
constexpr double kBisectTol = 1e-10;

void CheckScalarParams(int n, int mu, double eps) {
  if (n < 1) throw std::invalid_argument("closed form: n must be >= 1");
  if (mu < 1 || mu > n) {
    throw std::invalid_argument("closed form: mu must lie in [1..n]");
  }
  if (!(eps > 0.0)) throw std::invalid_argument("closed form: eps must be > 0");
}

void CheckDelta(double delta) {
  if (delta < 0.0 || delta > 1.0) {
    throw std::invalid_argument("closed form: delta must lie in [0,1]");
  }
}

void CheckFeasible(double f0, const std::string& what) {
  if (f0 < 0.5 - kHalfMassTolerance) {
    throw InfeasibleError(what + ": optimal f(0) = " + std::to_string(f0) +
                          " < 0.5; no mechanism meets the mass constraint");
  }
}

// f(0) of the flat section k on an m+1 point lattice:
// (1 - e^-eps) / (1 - e^-(m-k+1) eps), evaluated via expm1.
double SdFlatMassAtZero(int m, int k, double eps) {
  return std::expm1(-eps) / std::expm1(-(static_cast<double>(m - k) + 1.0) *
                                       eps);
}

// Lower flat boundary of section k (Theorem-style; section 0 is pinned
// to zero by the caller when building the region map).
double SdDeltaLower(int m, int k, double eps) {
  return SdFlatMassAtZero(m, k, eps) *
         std::exp(-(static_cast<double>(m - k)) * eps);
}

// Sorted masses for delta inside section k.
std::vector<double> SdSortedMasses(int m, int k, double eps, double delta,
                                   bool flat) {
  std::vector<double> sorted(m + 1, 0.0);
  if (flat) {
    const double f0 = SdFlatMassAtZero(m, k, eps);
    for (int h = 0; h <= m - k; ++h) {
      sorted[h] = f0 * std::exp(-static_cast<double>(h) * eps);
    }
    return sorted;
  }
  // Head: f_(h) = delta e^{(m-k-h) eps}, grown iteratively so no
  // intermediate exceeds f_(0).
  sorted[m - k] = delta;
  const double exp_eps = std::exp(eps);
  for (int h = m - k - 1; h >= 0; --h) sorted[h] = sorted[h + 1] * exp_eps;
  // Tail: the dying masses, zero at delta = delta_lower(k).
  const double delta_lower = SdDeltaLower(m, k, eps);
  const double scale = -std::expm1(eps) / std::expm1(-static_cast<double>(k) *
                                                     eps) *
                       (1.0 - delta / delta_lower);
  for (int h = m - k + 1; h <= m; ++h) {
    sorted[h] = scale * std::exp(static_cast<double>(m - h - k) * eps);
  }
  return sorted;
}

struct SdLocation {
  int k = 0;
  bool flat = true;
};

SdLocation SdLocate(int m, double eps, double delta) {
  if (delta >= 1.0) return {m, true};
  // Boundaries increase with k; boundary points resolve to the flat
  // region they open.
  for (int k = 0; k <= m; ++k) {
    const double flat_lo = (k == 0) ? 0.0 : SdDeltaLower(m, k, eps);
    const double flat_hi =
        (k == m) ? 1.0
                 : SdFlatMassAtZero(m, k, eps) *
                       std::exp(-(static_cast<double>(m - k) - 1.0) * eps);
    if (delta < flat_lo) return {k, false};
    if (delta <= flat_hi) return {k, true};
  }
  return {m, true};
}

double Bisect(const std::function<double(double)>& fn, double lo, double hi) {
  // fn is increasing; returns eps with |fn(eps)| <= resolution kBisectTol
  // on the bracket.
  double f_lo = fn(lo);
  if (f_lo >= 0.0) return lo;
  if (fn(hi) <= 0.0) return hi;
  while (hi - lo > kBisectTol) {
    const double mid = 0.5 * (lo + hi);
    if (fn(mid) < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

struct BdShape {
  int b = 0;
  int r = 0;
};

BdShape BdDecompose(int n, int mu_bar) {
  BdShape shape;
  shape.b = n / mu_bar;
  shape.r = n - shape.b * mu_bar;
  return shape;
}

// Group lengths of the flat region (h, j); (0, 0) gives the delta = 0
// staircase.
std::vector<int> BdFlatLengths(const BdShape& s, int mu_bar, int h, int j) {
  const int split = s.b - h + j + 1;
  const int u = (j != h) ? 1 : 0;
  std::vector<int> lengths(s.b + 2, 0);
  lengths[0] = 1;
  for (int i = 1; i <= s.b - h; ++i) lengths[i] = mu_bar;
  for (int i = s.b - h + 1; i <= s.b; ++i) {
    lengths[i] = (i == split) ? mu_bar : mu_bar - 1;
  }
  lengths[s.b + 1] = s.r + h - u;
  return lengths;
}

// Group lengths of the linear region (h, j); the singleton at index
// b-h+j+1 carries the dying mass.
std::vector<int> BdLinearLengths(const BdShape& s, int mu_bar, int h, int j) {
  const int split = s.b - h + j + 1;
  std::vector<int> lengths(s.b + 3, 0);
  lengths[0] = 1;
  for (int i = 1; i <= s.b - h; ++i) lengths[i] = mu_bar;
  for (int i = s.b - h + 1; i <= s.b + 1; ++i) {
    lengths[i] = (i == split) ? 1 : mu_bar - 1;
  }
  lengths[s.b + 2] = s.r + h - 1;
  return lengths;
}

double PhiZeroFromLengths(const std::vector<int>& lengths, double eps) {
  double sum = 0.0;
  for (int i = 0; i < static_cast<int>(lengths.size()); ++i) {
    sum += lengths[i] * std::exp(-static_cast<double>(i) * eps);
  }
  return 1.0 / sum;
}

// xi_a = sum_{i=0}^{a-1} e^{-i eps}.
double Xi(int a, double eps) {
  double sum = 0.0;
  for (int i = 0; i < a; ++i) sum += std::exp(-static_cast<double>(i) * eps);
  return sum;
}

NoisePmf ExpandStaircase(int n, const std::vector<int>& lengths,
                         const std::vector<double>& values) {
  std::vector<double> masses;
  masses.reserve(n + 1);
  for (int i = 0; i < static_cast<int>(lengths.size()); ++i) {
    for (int count = 0; count < lengths[i]; ++count) {
      masses.push_back(values[i]);
    }
  }
  if (static_cast<int>(masses.size()) != n + 1) {
    throw std::logic_error("staircase: group lengths do not cover [0..n]");
  }
  return MakeScalarPmf(n, std::move(masses));
}

StaircaseDescriptor BdFlatStaircase(int n, int mu_bar, double eps, int h,
                                    int j) {
  const BdShape s = BdDecompose(n, mu_bar);
  StaircaseDescriptor stairs;
  stairs.k = (h - 1) * h / 2 + j;
  stairs.flat = true;
  stairs.group_lengths = BdFlatLengths(s, mu_bar, h, j);
  const double phi0 = PhiZeroFromLengths(stairs.group_lengths, eps);
  for (int i = 0; i < static_cast<int>(stairs.group_lengths.size()); ++i) {
    stairs.group_values.push_back(phi0 *
                                  std::exp(-static_cast<double>(i) * eps));
  }
  return stairs;
}

StaircaseDescriptor BdLinearStaircase(int n, int mu_bar, double eps, int h,
                                      int j, double delta) {
  const BdShape s = BdDecompose(n, mu_bar);
  StaircaseDescriptor stairs;
  stairs.k = (h - 1) * h / 2 + j;
  stairs.flat = false;
  stairs.group_lengths = BdLinearLengths(s, mu_bar, h, j);
  const int split = s.b - h + j + 1;
  const double xi_j = Xi(j, eps);
  const int group_count = static_cast<int>(stairs.group_lengths.size());
  stairs.group_values.assign(group_count, 0.0);
  double assigned = 0.0;
  for (int i = 0; i < group_count; ++i) {
    if (i == split) continue;
    const int shift = (i < split) ? 0 : 1;
    stairs.group_values[i] =
        delta * std::exp(static_cast<double>(s.b - h - i + shift) * eps) /
        xi_j;
    assigned += stairs.group_lengths[i] * stairs.group_values[i];
  }
  stairs.group_values[split] = 1.0 - assigned;
  return stairs;
}

struct BdLocation {
  bool final_segment = false;
  bool flat = true;
  int h = 0;
  int j = 0;
  int k = 0;
};

BdLocation BdLocate(const RegionMap& map, double delta) {
  for (const RegionSegment& segment : map.segments) {
    if (segment.k > 0 && delta < segment.flat_lo) {
      return {false, false, segment.h, segment.j, segment.k};
    }
    if (delta <= segment.flat_hi) {
      return {false, true, segment.h, segment.j, segment.k};
    }
  }
  BdLocation loc;
  loc.final_segment = true;
  loc.k = map.segments.empty() ? 1 : map.segments.back().k + 1;
  return loc;
}

}  // namespace

int SdLatticeSize(int n, int mu_hat) {
  CheckScalarParams(n, mu_hat, 1.0);
  return (n + 1) / std::gcd(n + 1, mu_hat);
}

std::vector<int> SdAssignmentOrder(int n, int mu_hat) {
  const int lattice = SdLatticeSize(n, mu_hat);
  std::vector<int> order(lattice);
  for (int h = 0; h < lattice; ++h) {
    order[h] = static_cast<int>((static_cast<long long>(h) * mu_hat) %
                                (n + 1));
  }
  return order;
}

NoisePmf SdZeroDeltaPmf(int n, int mu_hat, double eps) {
  return SdOptimalPmf(n, mu_hat, eps, 0.0).pmf;
}

RegionMap SdRegionMap(int n, double eps) {
  if (n < 1) throw std::invalid_argument("region map: n must be >= 1");
  if (!(eps > 0.0)) throw std::invalid_argument("region map: eps must be > 0");
  RegionMap map;
  map.kind = RegionMap::Kind::kSd;
  map.n = n;
  map.eps = eps;
  map.segments.resize(n + 1);
  double previous_hi = 0.0;
  for (int k = 0; k <= n; ++k) {
    RegionSegment& segment = map.segments[k];
    segment.k = k;
    segment.flat_lo = (k == 0) ? 0.0 : SdDeltaLower(n, k, eps);
    segment.flat_hi =
        (k == n) ? 1.0
                 : SdFlatMassAtZero(n, k, eps) *
                       std::exp(-(static_cast<double>(n - k) - 1.0) * eps);
    if (k > 0) {
      segment.linear_lo = previous_hi;
      segment.linear_hi = segment.flat_lo;
    }
    previous_hi = segment.flat_hi;
  }
  return map;
}

ClosedFormPmf SdOptimalPmf(int n, int mu_hat, double eps, double delta) {
  CheckScalarParams(n, mu_hat, eps);
  CheckDelta(delta);
  const int lattice = SdLatticeSize(n, mu_hat);
  const int m = lattice - 1;
  const SdLocation loc = SdLocate(m, eps, delta);
  const std::vector<double> sorted =
      SdSortedMasses(m, loc.k, eps, delta, loc.flat);
  CheckFeasible(sorted[0], "sd pmf");

  const std::vector<int> order = SdAssignmentOrder(n, mu_hat);
  std::vector<double> masses(n + 1, 0.0);
  for (int h = 0; h <= m; ++h) masses[order[h]] = sorted[h];

  ClosedFormPmf result;
  result.pmf = MakeScalarPmf(n, std::move(masses));
  result.region_index = loc.k;
  result.flat = loc.flat;
  return result;
}

double BdPhiZero(int n, int mu_bar, double eps) {
  CheckScalarParams(n, mu_bar, eps);
  const BdShape s = BdDecompose(n, mu_bar);
  return PhiZeroFromLengths(BdFlatLengths(s, mu_bar, 0, 0), eps);
}

NoisePmf BdZeroDeltaPmf(int n, int mu_bar, double eps) {
  return BdOptimalPmf(n, mu_bar, eps, 0.0).pmf;
}

RegionMap BdRegionMap(int n, int mu_bar, double eps) {
  CheckScalarParams(n, mu_bar, eps);
  const BdShape s = BdDecompose(n, mu_bar);
  if (s.b + s.r >= mu_bar) {
    throw UnsupportedClosedFormError(
        "bd region map: b + r >= mu_bar (n = " + std::to_string(n) +
        ", mu_bar = " + std::to_string(mu_bar) +
        "); use the MILP path for this instance");
  }
  RegionMap map;
  map.kind = RegionMap::Kind::kBd;
  map.n = n;
  map.mu = mu_bar;
  map.eps = eps;
  map.b = s.b;
  map.r = s.r;

  RegionSegment first;
  first.k = 0;
  first.flat_lo = 0.0;
  first.flat_hi = BdPhiZero(n, mu_bar, eps) *
                  std::exp(-(static_cast<double>(s.b) - 1.0) * eps);
  map.segments.push_back(first);

  double previous_hi = first.flat_hi;
  for (int h = 1; h <= s.b - 1; ++h) {
    for (int j = 1; j <= h; ++j) {
      const double phi0 =
          PhiZeroFromLengths(BdFlatLengths(s, mu_bar, h, j), eps);
      RegionSegment segment;
      segment.k = (h - 1) * h / 2 + j;
      segment.h = h;
      segment.j = j;
      segment.linear_lo = previous_hi;
      segment.flat_lo =
          phi0 * std::exp(-static_cast<double>(s.b - h) * eps) * Xi(j, eps);
      segment.linear_hi = segment.flat_lo;
      segment.flat_hi =
          (j < h)
              ? phi0 * std::exp(-static_cast<double>(s.b - h) * eps) *
                    Xi(j + 1, eps)
              : phi0 * std::exp(-(static_cast<double>(s.b - h) - 1.0) * eps);
      map.segments.push_back(segment);
      previous_hi = segment.flat_hi;
    }
  }
  map.final_lo = previous_hi;
  return map;
}

StaircaseDescriptor BdStaircase(int n, int mu_bar, double eps, double delta) {
  CheckScalarParams(n, mu_bar, eps);
  CheckDelta(delta);
  const BdShape s = BdDecompose(n, mu_bar);
  const double first_flat_hi =
      BdPhiZero(n, mu_bar, eps) *
      std::exp(-(static_cast<double>(s.b) - 1.0) * eps);
  if (delta <= first_flat_hi) return BdFlatStaircase(n, mu_bar, eps, 0, 0);
  const RegionMap map = BdRegionMap(n, mu_bar, eps);
  const BdLocation loc = BdLocate(map, delta);
  if (loc.final_segment) {
    throw std::invalid_argument(
        "bd staircase: terminal segment has no staircase form");
  }
  return loc.flat ? BdFlatStaircase(n, mu_bar, eps, loc.h, loc.j)
                  : BdLinearStaircase(n, mu_bar, eps, loc.h, loc.j, delta);
}

ClosedFormPmf BdOptimalPmf(int n, int mu_bar, double eps, double delta) {
  CheckScalarParams(n, mu_bar, eps);
  CheckDelta(delta);
  const BdShape s = BdDecompose(n, mu_bar);

  // The first flat region [0, phi0 e^{-(b-1) eps}] reuses the delta = 0
  // staircase and needs no hypothesis on b + r.
  const double first_flat_hi =
      BdPhiZero(n, mu_bar, eps) *
      std::exp(-(static_cast<double>(s.b) - 1.0) * eps);
  if (delta <= first_flat_hi) {
    const StaircaseDescriptor stairs = BdFlatStaircase(n, mu_bar, eps, 0, 0);
    CheckFeasible(stairs.group_values[0], "bd pmf");
    ClosedFormPmf result;
    result.pmf = ExpandStaircase(n, stairs.group_lengths, stairs.group_values);
    result.region_index = 0;
    result.flat = true;
    return result;
  }

  const auto terminal = [&](int region_index) {
    CheckFeasible(delta, "bd pmf");
    std::vector<double> masses(n + 1, (1.0 - delta) / n);
    masses[0] = delta;
    ClosedFormPmf result;
    result.pmf = MakeScalarPmf(n, std::move(masses));
    result.region_index = region_index;
    result.flat = false;
    result.final_segment = true;
    return result;
  };

  // delta = 1 always admits the point mass, independent of the
  // staircase hypothesis.
  if (delta >= 1.0) return terminal((s.b - 1) * s.b / 2 + 1);

  // With b = 1 there are no staircase sections between the first flat
  // region and the terminal segment.
  if (s.b == 1) return terminal(1);

  const RegionMap map = BdRegionMap(n, mu_bar, eps);
  const BdLocation loc = BdLocate(map, delta);
  if (loc.final_segment) return terminal(loc.k);

  const StaircaseDescriptor stairs =
      loc.flat ? BdFlatStaircase(n, mu_bar, eps, loc.h, loc.j)
               : BdLinearStaircase(n, mu_bar, eps, loc.h, loc.j, delta);
  CheckFeasible(stairs.group_values[0], "bd pmf");
  ClosedFormPmf result;
  result.pmf = ExpandStaircase(n, stairs.group_lengths, stairs.group_values);
  result.region_index = loc.k;
  result.flat = loc.flat;
  return result;
}

TradeoffCurve SdTradeoffCurve(int n, int mu_hat, double rho_star) {
  CheckScalarParams(n, mu_hat, 1.0);
  if (!(rho_star > 0.0 && rho_star < 0.5)) {
    throw InfeasibleError("tradeoff curve: rho_star must lie in (0, 0.5)");
  }
  const int m = SdLatticeSize(n, mu_hat) - 1;
  TradeoffCurve curve;
  curve.kind = RegionMap::Kind::kSd;
  curve.n = n;
  curve.mu = mu_hat;
  curve.rho_star = rho_star;
  curve.b = m;

  const double target = 1.0 - rho_star;
  std::vector<double> breakpoints;  // eps_k for k in [0..m-1]
  for (int k = 0; k <= m - 1; ++k) {
    breakpoints.push_back(Bisect(
        [&](double eps) { return SdFlatMassAtZero(m, k, eps) - target; },
        kBisectLo, kBisectHi));
  }

  TradeoffSegment head;
  head.k = 0;
  head.zero_delta = true;
  head.eps_lo = breakpoints[0];
  head.eps_hi = std::numeric_limits<double>::infinity();
  curve.segments.push_back(head);
  for (int k = 1; k <= m - 1; ++k) {
    TradeoffSegment segment;
    segment.k = k;
    segment.eps_lo = breakpoints[k];
    segment.eps_hi = breakpoints[k - 1];
    curve.segments.push_back(segment);
  }
  TradeoffSegment tail;
  tail.k = m;
  tail.constant_tail = true;
  tail.eps_lo = 0.0;
  tail.eps_hi = breakpoints[m - 1];
  curve.segments.push_back(tail);
  return curve;
}

TradeoffCurve BdTradeoffCurve(int n, int mu_bar, double rho_star) {
  CheckScalarParams(n, mu_bar, 1.0);
  if (!(rho_star > 0.0 && rho_star < 0.5)) {
    throw InfeasibleError("tradeoff curve: rho_star must lie in (0, 0.5)");
  }
  const BdShape s = BdDecompose(n, mu_bar);
  if (s.b + s.r >= mu_bar) {
    throw UnsupportedClosedFormError(
        "bd tradeoff curve: b + r >= mu_bar; use the MILP path");
  }
  TradeoffCurve curve;
  curve.kind = RegionMap::Kind::kBd;
  curve.n = n;
  curve.mu = mu_bar;
  curve.rho_star = rho_star;
  curve.b = s.b;

  const double target = 1.0 - rho_star;
  const auto solve_for = [&](int h, int j) {
    return Bisect(
        [&](double eps) {
          return PhiZeroFromLengths(BdFlatLengths(s, mu_bar, h, j), eps) -
                 target;
        },
        kBisectLo, kBisectHi);
  };

  TradeoffSegment head;
  head.k = 0;
  head.zero_delta = true;
  head.eps_lo = solve_for(0, 0);
  head.eps_hi = std::numeric_limits<double>::infinity();
  curve.segments.push_back(head);

  double previous_lo = head.eps_lo;
  for (int h = 1; h <= s.b - 1; ++h) {
    for (int j = 1; j <= h; ++j) {
      TradeoffSegment segment;
      segment.k = (h - 1) * h / 2 + j;
      segment.h = h;
      segment.j = j;
      segment.eps_lo = solve_for(h, j);
      segment.eps_hi = previous_lo;
      curve.segments.push_back(segment);
      previous_lo = segment.eps_lo;
    }
  }
  TradeoffSegment tail;
  tail.k = curve.segments.back().k + 1;
  tail.constant_tail = true;
  tail.eps_lo = 0.0;
  tail.eps_hi = previous_lo;
  curve.segments.push_back(tail);
  return curve;
}

double EvalTradeoffDelta(const TradeoffCurve& curve, double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("tradeoff: eps must be > 0");
  for (const TradeoffSegment& segment : curve.segments) {
    if (eps < segment.eps_lo) continue;
    if (segment.zero_delta) return 0.0;
    if (segment.constant_tail) return 1.0 - curve.rho_star;
    if (curve.kind == RegionMap::Kind::kSd) {
      return std::exp(-static_cast<double>(curve.b - segment.k) * eps) *
             (1.0 - curve.rho_star);
    }
    return Xi(segment.j, eps) *
           std::exp(-static_cast<double>(curve.b - segment.h) * eps) *
           (1.0 - curve.rho_star);
  }
  return 1.0 - curve.rho_star;
}

double AsymptoticErrorRate(NeighborhoodKind kind, double eps, int mu_bar) {
  if (!(eps > 0.0)) throw std::invalid_argument("asymptotics: eps must be > 0");
  if (kind == NeighborhoodKind::kSd) {
    return eps <= std::log(2.0) ? 0.5 : std::exp(-eps);
  }
  if (mu_bar < 1) throw std::invalid_argument("asymptotics: mu_bar must be >= 1");
  if (eps <= std::log1p(static_cast<double>(mu_bar))) return 0.5;
  const double decayed = mu_bar * std::exp(-eps);
  return decayed / (decayed - std::expm1(-eps));
}

}  // namespace modnoise
