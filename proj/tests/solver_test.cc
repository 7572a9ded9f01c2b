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
#include <random>
#include <sstream>

#include "doctest.h"
#include "modnoise/closed_form.h"
#include "modnoise/errors.h"
#include "modnoise/milp.h"
#include "modnoise/privacy.h"
#include "modnoise/problems.h"
#include "oracles.h"

namespace modnoise {
namespace {

LinearProgram SingleVarLp(double objective, double row_coef, double rhs,
                          double lo, double hi) {
  LinearProgram lp;
  lp.objective = {objective};
  lp.rows = {{row_coef}};
  lp.senses = {RowSense::kLessEqual};
  lp.rhs = {rhs};
  lp.lower = {lo};
  lp.upper = {hi};
  return lp;
}

TEST_CASE("simplex solves the one-variable examples") {
  // max x s.t. x <= 1, x in [0,2], written as min -x.
  const SolveResult up = SolveLp(SingleVarLp(-1.0, 1.0, 1.0, 0.0, 2.0));
  CHECK(up.status == SolveStatus::kOptimal);
  CHECK(up.x[0] == doctest::Approx(1.0));

  // Infeasible pair x <= 0, x >= 1.
  LinearProgram infeasible = SingleVarLp(0.0, 1.0, 0.0, 0.0, 2.0);
  infeasible.rows.push_back({-1.0});
  infeasible.senses.push_back(RowSense::kLessEqual);
  infeasible.rhs.push_back(-1.0);
  CHECK(SolveLp(infeasible).status == SolveStatus::kInfeasible);
}

TEST_CASE("simplex handles equality rows and upper-bounded variables") {
  // min x0 + 2 x1 s.t. x0 + x1 = 1, x1 <= 0.3.
  LinearProgram lp;
  lp.objective = {1.0, 2.0};
  lp.rows = {{1.0, 1.0}};
  lp.senses = {RowSense::kEqual};
  lp.rhs = {1.0};
  lp.lower = {0.0, 0.0};
  lp.upper = {1.0, 0.3};
  const SolveResult result = SolveLp(lp);
  CHECK(result.status == SolveStatus::kOptimal);
  CHECK(result.x[0] == doctest::Approx(1.0));
  CHECK(result.objective == doctest::Approx(1.0));
}

TEST_CASE("simplex agrees with vertex enumeration on random tiny LPs") {
  std::mt19937_64 rng(2024);
  int feasible_seen = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const int vars = 2 + static_cast<int>(rng() % 4);
    const int rows = 1 + static_cast<int>(rng() % 5);
    LinearProgram lp;
    lp.lower.assign(vars, 0.0);
    lp.upper.assign(vars, 1.0);
    for (int j = 0; j < vars; ++j) {
      lp.objective.push_back(
          -2.0 + 4.0 * (static_cast<double>(rng() >> 11) * 0x1.0p-53));
    }
    for (int i = 0; i < rows; ++i) {
      std::vector<double> row(vars);
      for (double& v : row) {
        v = -2.0 + 4.0 * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
      }
      lp.rows.push_back(row);
      const bool equality = (rng() % 4) == 0;
      lp.senses.push_back(equality ? RowSense::kEqual : RowSense::kLessEqual);
      lp.rhs.push_back(-1.0 + 2.0 * (static_cast<double>(rng() >> 11) *
                                     0x1.0p-53));
    }
    const SolveResult simplex = SolveLp(lp);
    const testing::OracleResult oracle = testing::EnumerateVertices(lp);
    if (oracle.feasible) {
      ++feasible_seen;
      REQUIRE(simplex.status == SolveStatus::kOptimal);
      CHECK(simplex.objective ==
            doctest::Approx(oracle.objective).epsilon(1e-6));
    } else {
      CHECK(simplex.status == SolveStatus::kInfeasible);
    }
  }
  CHECK(feasible_seen > 50);
}

TEST_CASE("solved LPs satisfy their constraints to tolerance") {
  const NeighborhoodSpec nbhd = NeighborhoodSpec::BoundedDifference(3);
  const LinearProgram lp = BuildZeroDeltaLp(8, 1, nbhd, 1.5);
  const SolveResult result = SolveLp(lp);
  REQUIRE(result.status == SolveStatus::kOptimal);
  for (int i = 0; i < lp.num_rows(); ++i) {
    double dot = 0.0;
    for (int j = 0; j < lp.num_vars(); ++j) dot += lp.rows[i][j] * result.x[j];
    if (lp.senses[i] == RowSense::kEqual) {
      CHECK(std::abs(dot - lp.rhs[i]) <= 1e-8);
    } else {
      CHECK(dot <= lp.rhs[i] + 1e-8);
    }
  }
}

TEST_CASE("zero-delta LP reproduces the SD closed form") {
  const LinearProgram lp =
      BuildZeroDeltaLp(7, 1, NeighborhoodSpec::SingleDistance(3), 0.75);
  const SolveResult result = SolveLp(lp);
  REQUIRE(result.status == SolveStatus::kOptimal);
  CHECK(result.objective == doctest::Approx(1.0 - 0.528944).epsilon(1e-5));
}

TEST_CASE("zero-delta LP reproduces the BD staircase fixtures") {
  const SolveResult scalar =
      SolveLp(BuildZeroDeltaLp(4, 1, NeighborhoodSpec::BoundedDifference(2),
                               1.5));
  REQUIRE(scalar.status == SolveStatus::kOptimal);
  const std::vector<double> paper = {0.6469, 0.1443, 0.1443, 0.0322, 0.0322};
  for (int eta = 0; eta <= 4; ++eta) {
    CHECK(scalar.x[eta] == doctest::Approx(paper[eta]).epsilon(2e-3));
  }

  const SolveResult table =
      SolveLp(BuildZeroDeltaLp(8, 1, NeighborhoodSpec::BoundedDifference(3),
                               1.5));
  REQUIRE(table.status == SolveStatus::kOptimal);
  CHECK(table.x[0] == doctest::Approx(0.5432).epsilon(1e-3));

  // eps = 50 leaves the ratio constraints nearly vacuous.
  const SolveResult loose =
      SolveLp(BuildZeroDeltaLp(6, 1, NeighborhoodSpec::BoundedDifference(2),
                               50.0));
  REQUIRE(loose.status == SolveStatus::kOptimal);
  CHECK(loose.x[0] >= 0.5);
}

TEST_CASE("branch and bound reduces to the LP when binaries are fixed") {
  MixedIntegerProgram milp;
  milp.lp = SingleVarLp(-1.0, 1.0, 1.0, 0.0, 2.0);
  const SolveResult result = SolveMilp(milp);
  CHECK(result.status == SolveStatus::kOptimal);
  CHECK(result.objective == doctest::Approx(-1.0));
  CHECK(result.node_count == 1);
}

TEST_CASE("branch and bound solves a two-binary knapsack") {
  // max 3a + 2b s.t. 2a + 2b <= 3  ->  optimum a=1, b=0.
  MixedIntegerProgram milp;
  milp.lp.objective = {-3.0, -2.0};
  milp.lp.rows = {{2.0, 2.0}};
  milp.lp.senses = {RowSense::kLessEqual};
  milp.lp.rhs = {3.0};
  milp.lp.lower = {0.0, 0.0};
  milp.lp.upper = {1.0, 1.0};
  milp.binary_indices = {0, 1};
  const SolveResult result = SolveMilp(milp);
  CHECK(result.status == SolveStatus::kOptimal);
  CHECK(result.objective == doctest::Approx(-3.0));
  CHECK(result.x[0] == doctest::Approx(1.0));
  CHECK(result.x[1] == doctest::Approx(0.0).epsilon(1e-6));
}

TEST_CASE("min-error MILP reproduces the Table I columns") {
  const NeighborhoodSpec nbhd = NeighborhoodSpec::BoundedDifference(3);
  const std::vector<std::pair<double, std::vector<double>>> columns = {
      {0.1238,
       {0.5548, 0.1238, 0.1238, 0.1238, 0.0276, 0.0276, 0.0062, 0.0062,
        0.0062}},
  };
  for (const auto& [delta, expected] : columns) {
    const OptimalPmfResult solved = SolveOptimalPmf(8, 1, nbhd, 1.5, delta);
    CHECK(solved.method == "milp");
    for (int eta = 0; eta <= 8; ++eta) {
      CHECK(solved.pmf.masses[eta] ==
            doctest::Approx(expected[eta]).epsilon(0.0).scale(0.0).epsilon(
                1e-3));
    }
  }
}

TEST_CASE("min-error MILP equals brute-force pattern enumeration") {
  for (const auto& [n, mu, eps, delta] :
       std::vector<std::tuple<int, int, double, double>>{
           {3, 1, 0.9, 0.05},
           {4, 2, 1.2, 0.1},
           {5, 2, 0.8, 0.15},
       }) {
    const testing::OracleResult oracle =
        testing::BruteForceMinError(n, mu, eps, delta);
    const NeighborhoodSpec nbhd = NeighborhoodSpec::SingleDistance(mu);
    if (!oracle.feasible) {
      CHECK_THROWS_AS(SolveOptimalPmf(n, 1, nbhd, eps, delta),
                      InfeasibleError);
      continue;
    }
    const OptimalPmfResult solved = SolveOptimalPmf(n, 1, nbhd, eps, delta);
    CHECK(ErrorRate(solved.pmf) ==
          doctest::Approx(oracle.objective).epsilon(1e-9));
  }
}

TEST_CASE("MILP variable and constraint counts match the formulation") {
  const MixedIntegerProgram sd =
      BuildMinErrorMilp(7, 1, NeighborhoodSpec::SingleDistance(3), 1.0, 0.1);
  CHECK(sd.lp.num_vars() == 3 * 8);
  CHECK(static_cast<int>(sd.binary_indices.size()) == 8);

  const MixedIntegerProgram bd =
      BuildMinErrorMilp(7, 1, NeighborhoodSpec::BoundedDifference(3), 1.0,
                        0.1);
  // Per offset: 2 (n+1) shift rows plus 3 (n+1) linearization rows and
  // one budget row; plus the two mass rows.
  CHECK(bd.lp.num_rows() == 2 + 3 * (5 * 8 + 1));
  CHECK(bd.lp.num_vars() == 8 + 3 * 16);
}

TEST_CASE("delta = 1 frees the point mass") {
  const OptimalPmfResult solved = SolveOptimalPmf(
      6, 1, NeighborhoodSpec::BoundedDifference(2), 1.0, 1.0);
  CHECK(solved.pmf.masses[0] == doctest::Approx(1.0));
}

TEST_CASE("linearization keeps y equal to u times f at the optimum") {
  const NeighborhoodSpec nbhd = NeighborhoodSpec::BoundedDifference(3);
  const MixedIntegerProgram milp = BuildMinErrorMilp(8, 1, nbhd, 1.5, 0.1238);
  const SolveResult result = SolveMilp(milp);
  REQUIRE(result.status == SolveStatus::kOptimal);
  const int support = 9;
  const int offsets = 3;
  for (int block = 0; block < offsets; ++block) {
    const int y_base = support + block * 2 * support;
    const int u_base = y_base + support;
    for (int eta = 0; eta < support; ++eta) {
      const double y = result.x[y_base + eta];
      const double u = result.x[u_base + eta];
      const double f = result.x[eta];
      CHECK(std::abs(y - u * f) <= 1e-8);
    }
  }
}

TEST_CASE("min-delta MILP matches the SD level curve") {
  const TradeoffCurve curve = SdTradeoffCurve(7, 3, 0.3);
  const AccuracyTarget target = AccuracyTarget::MaxErrorRate(0.3);
  const NeighborhoodSpec nbhd = NeighborhoodSpec::SingleDistance(3);
  for (double eps : {0.5, 0.8, 1.1, 1.3, 2.0}) {
    const MinDeltaResult solved = SolveMinDelta(7, nbhd, eps, target);
    const double expected = EvalTradeoffDelta(curve, eps);
    CHECK(solved.delta == doctest::Approx(expected).epsilon(0.0).scale(1.0));
    CHECK(std::abs(solved.delta - expected) <= 1e-6);
  }
}

TEST_CASE("min-delta MILP hits zero for generous budgets") {
  const MinDeltaResult solved =
      SolveMinDelta(7, NeighborhoodSpec::BoundedDifference(1), 8.0,
                    AccuracyTarget::MaxErrorRate(0.3));
  CHECK(solved.delta <= 1e-9);
}

TEST_CASE("vector solve matches the paper joint PMF example") {
  std::vector<std::vector<int>> offsets;
  for (int a = 0; a <= 2; ++a) {
    for (int b = 0; b <= 2; ++b) {
      if (a == 0 && b == 0) continue;
      offsets.push_back({a, b});
    }
  }
  const NeighborhoodSpec nbhd = NeighborhoodSpec::VectorArbitrary(offsets);
  const OptimalPmfResult solved = SolveOptimalPmf(4, 2, nbhd, 3.0, 0.0);
  CHECK(solved.method == "lp");
  const NoisePmf& joint = solved.pmf;
  REQUIRE(joint.size() == 25);

  const auto at = [&](int a, int b) { return joint.masses[a * 5 + b]; };
  CHECK(at(0, 0) == doctest::Approx(0.6954).epsilon(2e-3));
  for (const auto& [a, b] : offsets) {
    CHECK(at(a, b) == doctest::Approx(0.0346).epsilon(2e-2));
  }
  CHECK(at(3, 3) == doctest::Approx(0.0017).epsilon(5e-2));

  std::vector<double> marginal(5, 0.0);
  for (int a = 0; a <= 4; ++a) {
    for (int b = 0; b <= 4; ++b) marginal[a] += at(a, b);
  }
  const std::vector<double> expected = {0.7681, 0.1073, 0.1073, 0.0086,
                                        0.0086};
  for (int a = 0; a <= 4; ++a) {
    CHECK(marginal[a] == doctest::Approx(expected[a]).epsilon(2e-3));
  }

  // The joint optimum is not the product of its marginals.
  double largest_gap = 0.0;
  for (int a = 0; a <= 4; ++a) {
    for (int b = 0; b <= 4; ++b) {
      largest_gap =
          std::max(largest_gap, std::abs(at(a, b) - marginal[a] * marginal[b]));
    }
  }
  CHECK(largest_gap > 0.05);
}

TEST_CASE("scalar vector path builds the identical program") {
  const NeighborhoodSpec nbhd = NeighborhoodSpec::BoundedDifference(2);
  const MixedIntegerProgram a = BuildMinErrorMilp(6, 1, nbhd, 1.2, 0.07);
  const MixedIntegerProgram b = BuildMinErrorMilp(6, 1, nbhd, 1.2, 0.07);
  CHECK(a.lp.objective == b.lp.objective);
  CHECK(a.lp.rows == b.lp.rows);
  CHECK(a.lp.rhs == b.lp.rhs);
  CHECK(a.binary_indices == b.binary_indices);
}

TEST_CASE("support size guard") {
  const NeighborhoodSpec nbhd =
      NeighborhoodSpec::VectorArbitrary({{1, 1, 1}});
  CHECK_THROWS_AS(SolveOptimalPmf(20, 3, nbhd, 1.0, 0.0),
                  std::invalid_argument);
}

TEST_CASE("lemma-style dominance of the BD cover") {
  std::mt19937_64 rng(404);
  for (int trial = 0; trial < 8; ++trial) {
    const int n = 5 + static_cast<int>(rng() % 4);
    std::vector<int> offsets;
    for (int m = 1; m <= n; ++m) {
      if ((rng() & 1u) != 0u) offsets.push_back(m);
    }
    if (offsets.empty()) offsets.push_back(1 + static_cast<int>(rng() % n));
    const double eps = 1.0 + 0.2 * static_cast<double>(rng() % 6);
    const double delta = 0.05 * static_cast<double>(rng() % 4);

    const NeighborhoodSpec arbitrary = NeighborhoodSpec::Arbitrary(offsets);
    const NeighborhoodSpec cover = NeighborhoodSpec::BoundedDifference(
        BoundedDifferenceCover(arbitrary));
    double rho_arbitrary;
    double rho_cover;
    try {
      rho_cover = ErrorRate(SolveOptimalPmf(n, 1, cover, eps, delta).pmf);
    } catch (const InfeasibleError&) {
      continue;  // the cover may be infeasible while the subset is not
    }
    try {
      rho_arbitrary =
          ErrorRate(SolveOptimalPmf(n, 1, arbitrary, eps, delta).pmf);
    } catch (const InfeasibleError&) {
      FAIL("subset infeasible although the BD cover is feasible");
      continue;
    }
    CHECK(rho_arbitrary <= rho_cover + 1e-9);
  }
}

TEST_CASE("problem dump lists constraints with named variables") {
  const MixedIntegerProgram milp =
      BuildMinErrorMilp(2, 1, NeighborhoodSpec::SingleDistance(1), 1.0, 0.1);
  std::ostringstream out;
  DumpProblem(milp, out);
  const std::string text = out.str();
  CHECK(text.find("f0") != std::string::npos);
  CHECK(text.find("y_1_0") != std::string::npos);
  CHECK(text.find("binary u_1_2") != std::string::npos);
  CHECK(text.find(" <= ") != std::string::npos);
  CHECK(text.find(" = ") != std::string::npos);
}

}  // namespace
}  // namespace modnoise
