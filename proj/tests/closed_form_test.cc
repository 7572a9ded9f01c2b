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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "modnoise/closed_form.h"
#include "modnoise/errors.h"
#include "modnoise/pmf.h"
#include "modnoise/privacy.h"

namespace modnoise {
namespace {

TEST_CASE("sd assignment order") {
  CHECK(SdAssignmentOrder(7, 3) ==
        std::vector<int>{0, 3, 6, 1, 4, 7, 2, 5});
  CHECK(SdAssignmentOrder(7, 2) == std::vector<int>{0, 2, 4, 6});
  CHECK(SdAssignmentOrder(5, 1) == std::vector<int>{0, 1, 2, 3, 4, 5});
}

TEST_CASE("sd zero-delta pmf, coprime case") {
  // n=7, mu=3, eps=0.75: f(0) = (1-e^-0.75)/(1-e^-6), geometric decay
  // along the order 0,3,6,1,4,7,2,5.
  const NoisePmf pmf = SdZeroDeltaPmf(7, 3, 0.75);
  CHECK(pmf.masses[0] == doctest::Approx(0.528944).epsilon(1e-5));
  const std::vector<int> order = SdAssignmentOrder(7, 3);
  for (int h = 0; h < 8; ++h) {
    CHECK(pmf.masses[order[h]] ==
          doctest::Approx(pmf.masses[0] * std::exp(-0.75 * h)));
  }
}

TEST_CASE("sd zero-delta pmf, non-coprime case") {
  const NoisePmf pmf = SdZeroDeltaPmf(7, 2, 0.75);
  const std::vector<double> expected = {0.555280, 0, 0.262295, 0,
                                        0.123900, 0, 0.058526, 0};
  for (int eta = 0; eta <= 7; ++eta) {
    CHECK(pmf.masses[eta] == doctest::Approx(expected[eta]).epsilon(1e-4));
  }
}

TEST_CASE("sd zero-delta pmf approaches 1 - e^-eps") {
  const NoisePmf pmf = SdZeroDeltaPmf(4000, 1, std::log(2.0));
  CHECK(pmf.masses[0] == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("sd region boundaries") {
  const RegionMap map = SdRegionMap(7, 0.75);
  REQUIRE(map.segments.size() == 8);
  CHECK(map.segments[0].flat_lo == 0.0);
  CHECK(map.segments[0].flat_hi == doctest::Approx(0.005876).epsilon(1e-4));
  CHECK(map.segments[7].flat_hi == 1.0);
  for (int k = 1; k <= 6; ++k) {
    CHECK(map.segments[k].flat_hi ==
          doctest::Approx(std::exp(0.75) * map.segments[k].flat_lo));
    CHECK(map.segments[k].linear_lo ==
          doctest::Approx(map.segments[k - 1].flat_hi));
    CHECK(map.segments[k].linear_hi ==
          doctest::Approx(map.segments[k].flat_lo));
  }
}

TEST_CASE("sd optimal pmf endpoints") {
  const ClosedFormPmf at_zero = SdOptimalPmf(7, 3, 0.75, 0.0);
  const NoisePmf direct = SdZeroDeltaPmf(7, 3, 0.75);
  for (int eta = 0; eta <= 7; ++eta) {
    CHECK(at_zero.pmf.masses[eta] == doctest::Approx(direct.masses[eta]));
  }
  CHECK(at_zero.region_index == 0);
  CHECK(at_zero.flat);

  const ClosedFormPmf at_one = SdOptimalPmf(7, 3, 0.75, 1.0);
  CHECK(at_one.pmf.masses[0] == doctest::Approx(1.0));
  CHECK(ErrorRate(at_one.pmf) == doctest::Approx(0.0));
}

TEST_CASE("sd pmf is sorted non-increasing along the assignment order") {
  for (double delta : {0.0, 0.01, 0.05, 0.2, 0.5, 0.9}) {
    const ClosedFormPmf result = SdOptimalPmf(7, 3, 0.9, delta);
    const std::vector<int> order = SdAssignmentOrder(7, 3);
    for (size_t h = 0; h + 1 < order.size(); ++h) {
      CHECK(result.pmf.masses[order[h]] >=
            result.pmf.masses[order[h + 1]] - 1e-12);
    }
  }
}

TEST_CASE("sd pmf ratio constraints and leakage stay within delta") {
  for (double delta : {0.0, 0.003, 0.01, 0.04, 0.1, 0.3, 0.7}) {
    const ClosedFormPmf result = SdOptimalPmf(7, 3, 0.9, delta);
    const std::vector<int> order = SdAssignmentOrder(7, 3);
    for (size_t h = 0; h + 1 < order.size(); ++h) {
      const double lhs = result.pmf.masses[order[h]];
      const double rhs = std::exp(0.9) * result.pmf.masses[order[h + 1]];
      if (lhs > rhs + 1e-9) {
        // Strict violations must be funded by the leakage budget.
        CHECK(lhs <= delta + 1e-9);
      }
    }
    const LeakageReport report = PrivacyProfile(
        result.pmf, 0.9, NeighborhoodSpec::SingleDistance(3));
    CHECK(report.delta_actual <= delta + 1e-9);
  }
}

TEST_CASE("sd rho is continuous and non-increasing in delta") {
  double previous = 2.0;
  for (int i = 0; i <= 400; ++i) {
    const double delta = i / 400.0;
    const double rho = ErrorRate(SdOptimalPmf(9, 2, 0.8, delta).pmf);
    CHECK(rho <= previous + 1e-12);
    previous = rho;
  }
  // Spot-check continuity across a region boundary.
  const RegionMap map = SdRegionMap(9, 0.8);
  const double boundary = map.segments[3].flat_lo;
  const double below = ErrorRate(SdOptimalPmf(9, 1, 0.8, boundary * (1 - 1e-9)).pmf);
  const double at = ErrorRate(SdOptimalPmf(9, 1, 0.8, boundary).pmf);
  CHECK(std::abs(below - at) < 1e-6);
}

TEST_CASE("sd infeasible when f(0) cannot reach one half") {
  // n=9, mu=1, eps=0.5 gives f(0) = 0.396 at delta = 0.
  CHECK_THROWS_AS(SdOptimalPmf(9, 1, 0.5, 0.0), InfeasibleError);
  // Large delta restores feasibility through the terminal regions.
  CHECK_NOTHROW(SdOptimalPmf(9, 1, 0.5, 0.6));
}

TEST_CASE("bd zero-delta staircase fixtures") {
  const NoisePmf table = BdZeroDeltaPmf(8, 3, 1.5);
  const std::vector<double> expected = {0.5432, 0.1212, 0.1212, 0.1212,
                                        0.0270, 0.0270, 0.0270, 0.0060,
                                        0.0060};
  for (int eta = 0; eta <= 8; ++eta) {
    CHECK(table.masses[eta] == doctest::Approx(expected[eta]).epsilon(5e-3));
  }

  const NoisePmf scalar = BdZeroDeltaPmf(4, 2, 1.5);
  const std::vector<double> paper = {0.6469, 0.1443, 0.1443, 0.0322, 0.0322};
  for (int eta = 0; eta <= 4; ++eta) {
    CHECK(scalar.masses[eta] == doctest::Approx(paper[eta]).epsilon(5e-3));
  }

  // mu = n: single step of e^-eps below f(0).
  const NoisePmf single = BdZeroDeltaPmf(5, 5, 2.0);
  for (int eta = 1; eta <= 5; ++eta) {
    CHECK(single.masses[eta] ==
          doctest::Approx(single.masses[0] * std::exp(-2.0)));
  }
}

TEST_CASE("bd staircase group structure sums to the support") {
  for (double delta : {0.0, 0.05, 0.11, 0.3}) {
    const StaircaseDescriptor stairs = BdStaircase(9, 4, 1.5, delta);
    int total = 0;
    double mass = 0.0;
    for (size_t i = 0; i < stairs.group_lengths.size(); ++i) {
      total += stairs.group_lengths[i];
      mass += stairs.group_lengths[i] * stairs.group_values[i];
    }
    CHECK(total == 10);
    CHECK(mass == doctest::Approx(1.0));
  }
}

TEST_CASE("bd region boundaries for n=9 mu=4 eps=1.5") {
  // b = 2, r = 1, so b + r < mu and one (h, j) = (1, 1) section exists.
  const RegionMap map = BdRegionMap(9, 4, 1.5);
  const double phi0 = BdPhiZero(9, 4, 1.5);
  CHECK(phi0 == doctest::Approx(0.475562).epsilon(1e-5));
  REQUIRE(map.segments.size() == 2);
  CHECK(map.segments[0].flat_hi == doctest::Approx(phi0 * std::exp(-1.5)));
  CHECK(map.segments[1].h == 1);
  CHECK(map.segments[1].j == 1);
  // delta_low(1,1) = phi0^1 e^{-(b-h) eps} xi_1.
  CHECK(map.segments[1].flat_lo ==
        doctest::Approx(map.segments[1].flat_hi * std::exp(-1.5)));
  CHECK(map.final_lo == doctest::Approx(map.segments[1].flat_hi));
}

TEST_CASE("bd delta lower boundary follows the phi ratio identity") {
  const RegionMap map = BdRegionMap(13, 6, 1.2);  // b=2, r=1 < 6
  REQUIRE(map.segments.size() >= 2);
  const double phi0_prev = BdPhiZero(13, 6, 1.2);
  const double phi0_k =
      1.0 / (1.0 + 6 * std::exp(-1.2) + 5 * std::exp(-2.4) +
             2 * std::exp(-3.6));
  CHECK(map.segments[1].flat_lo ==
        doctest::Approx(map.segments[0].flat_hi * phi0_k / phi0_prev));
}

TEST_CASE("bd region map refuses b + r >= mu") {
  CHECK_THROWS_AS(BdRegionMap(8, 3, 1.5), UnsupportedClosedFormError);
}

TEST_CASE("bd optimal pmf endpoints and terminal segment") {
  const ClosedFormPmf at_zero = BdOptimalPmf(9, 4, 1.5, 0.0);
  const NoisePmf direct = BdZeroDeltaPmf(9, 4, 1.5);
  for (int eta = 0; eta <= 9; ++eta) {
    CHECK(at_zero.pmf.masses[eta] == doctest::Approx(direct.masses[eta]));
  }

  const ClosedFormPmf terminal = BdOptimalPmf(8, 3, 1.5, 0.9);
  CHECK(terminal.final_segment);
  CHECK(terminal.pmf.masses[0] == doctest::Approx(0.9));
  for (int eta = 1; eta <= 8; ++eta) {
    CHECK(terminal.pmf.masses[eta] == doctest::Approx(0.0125));
  }

  const ClosedFormPmf point = BdOptimalPmf(8, 3, 1.5, 1.0);
  CHECK(point.pmf.masses[0] == doctest::Approx(1.0));
}

TEST_CASE("bd first flat region is served for every shape") {
  // n=8, mu=3 has b+r >= mu, yet [0, phi0 e^{-(b-1) eps}] still reuses
  // the Lemma staircase; Table I lists delta = 0.1212 with the delta=0
  // column.
  const double delta_bar = 0.5432 * std::exp(-1.5);
  const ClosedFormPmf low = BdOptimalPmf(8, 3, 1.5, delta_bar * 0.99);
  const NoisePmf zero_delta_pmf = BdZeroDeltaPmf(8, 3, 1.5);
  for (int eta = 0; eta <= 8; ++eta) {
    CHECK(low.pmf.masses[eta] == doctest::Approx(zero_delta_pmf.masses[eta]));
  }
  CHECK_THROWS_AS(BdOptimalPmf(8, 3, 1.5, 0.14), UnsupportedClosedFormError);
}

TEST_CASE("bd flat regions decay by e^-eps between groups") {
  const double eps = 1.5;
  const RegionMap map = BdRegionMap(9, 4, eps);
  for (const RegionSegment& segment : map.segments) {
    const double delta = 0.5 * (segment.flat_lo + segment.flat_hi);
    const StaircaseDescriptor stairs = BdStaircase(9, 4, eps, delta);
    CHECK(stairs.flat);
    for (size_t i = 0; i + 1 < stairs.group_values.size(); ++i) {
      if (stairs.group_lengths[i + 1] == 0) continue;
      CHECK(stairs.group_values[i + 1] ==
            doctest::Approx(stairs.group_values[i] * std::exp(-eps)));
    }
  }
}

TEST_CASE("bd leakage stays within the budget across regions") {
  for (double delta : {0.0, 0.05, 0.107, 0.108, 0.2, 0.49, 0.6, 0.95}) {
    ClosedFormPmf result;
    try {
      result = BdOptimalPmf(9, 4, 1.5, delta);
    } catch (const InfeasibleError&) {
      continue;
    }
    const LeakageReport report = PrivacyProfile(
        result.pmf, 1.5, NeighborhoodSpec::BoundedDifference(4));
    CHECK(report.delta_actual <= delta + 1e-9);
  }
}

TEST_CASE("sd tradeoff curve structure") {
  const TradeoffCurve curve = SdTradeoffCurve(7, 3, 0.3);
  REQUIRE(!curve.segments.empty());
  CHECK(curve.segments.front().zero_delta);
  CHECK(curve.segments.back().constant_tail);
  // Above the largest breakpoint delta vanishes.
  const double eps0 = curve.segments.front().eps_lo;
  CHECK(EvalTradeoffDelta(curve, eps0 + 0.1) == 0.0);
  CHECK(EvalTradeoffDelta(curve, eps0 - 1e-9) > 0.0);
  // Within segment k the decay rate is exactly (n - k).
  for (const TradeoffSegment& segment : curve.segments) {
    if (segment.zero_delta || segment.constant_tail) continue;
    const double eps_a = segment.eps_lo + 1e-4;
    const double eps_b =
        std::min(segment.eps_hi - 1e-4, segment.eps_lo + 0.05);
    if (eps_b <= eps_a) continue;
    const double slope =
        (std::log(EvalTradeoffDelta(curve, eps_b)) -
         std::log(EvalTradeoffDelta(curve, eps_a))) /
        (eps_b - eps_a);
    CHECK(slope == doctest::Approx(-(7.0 - segment.k)).epsilon(1e-6));
  }
  CHECK_THROWS_AS(SdTradeoffCurve(7, 3, 0.6), InfeasibleError);
}

TEST_CASE("bd tradeoff curve matches the closed-form level sets") {
  const TradeoffCurve curve = BdTradeoffCurve(9, 4, 0.3);
  CHECK(curve.segments.front().zero_delta);
  CHECK(curve.segments.back().constant_tail);
  CHECK_THROWS_AS(BdTradeoffCurve(8, 3, 0.3), UnsupportedClosedFormError);

  // The level curve must invert the rho*(delta) map: at each grid eps,
  // rho*(delta(eps)) == rho_star whenever delta(eps) > 0.
  for (double eps = 0.8; eps <= 3.0; eps += 0.1377) {
    const double delta = EvalTradeoffDelta(curve, eps);
    if (delta == 0.0) continue;
    if (curve.segments.back().eps_hi > eps) continue;  // constant tail
    const double rho = ErrorRate(BdOptimalPmf(9, 4, eps, delta).pmf);
    CHECK(rho == doctest::Approx(0.3).epsilon(1e-7));
  }
}

TEST_CASE("asymptotic error rates") {
  CHECK(AsymptoticErrorRate(NeighborhoodKind::kSd, std::log(2.0)) ==
        doctest::Approx(0.5));
  CHECK(AsymptoticErrorRate(NeighborhoodKind::kSd, 2.0) ==
        doctest::Approx(std::exp(-2.0)));
  // mu = 1 reduces BD to SD.
  CHECK(AsymptoticErrorRate(NeighborhoodKind::kBd, 1.0, 1) ==
        doctest::Approx(std::exp(-1.0)));
  // mu = 3, eps = 3: 3 e^-3 / (3 e^-3 + 1 - e^-3) = 3 / (2 + e^3).
  CHECK(AsymptoticErrorRate(NeighborhoodKind::kBd, 3.0, 3) ==
        doctest::Approx(3.0 / (2.0 + std::exp(3.0))).epsilon(1e-12));
  // The cap binds below ln(1 + mu).
  CHECK(AsymptoticErrorRate(NeighborhoodKind::kBd, 1.0, 3) == 0.5);
}

}  // namespace
}  // namespace modnoise
