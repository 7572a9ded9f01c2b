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

#include "modnoise/problems.h"

#include <cmath>
#include <stdexcept>
#include <utility>

#include "modnoise/errors.h"

namespace modnoise {
namespace {

constexpr double kHalfMassBoundaryTol = 1e-9;

int PowInt(int base, int exp) {
  int result = 1;
  for (int i = 0; i < exp; ++i) result *= base;
  return result;
}

std::string OffsetLabel(const std::vector<int>& offset) {
  std::string label;
  for (size_t d = 0; d < offset.size(); ++d) {
    if (d > 0) label += '.';
    label += std::to_string(offset[d]);
  }
  return label;
}

void CheckBuildParams(int n, int dims, double eps) {
  if (n < 1) throw std::invalid_argument("builder: n must be >= 1");
  if (dims < 1) throw std::invalid_argument("builder: dims must be >= 1");
  if (!(eps > 0.0)) throw std::invalid_argument("builder: eps must be > 0");
  double size = 1.0;
  for (int d = 0; d < dims; ++d) size *= n + 1;
  if (size > kMaxSupportSize) {
    throw std::invalid_argument("builder: support (n+1)^dims exceeds " +
                                std::to_string(kMaxSupportSize));
  }
}

std::vector<double> ResolveWeights(int support, int /*n*/,
                                   const std::vector<double>& weights) {
  if (weights.empty()) {
    std::vector<double> unit(support, 1.0);
    unit[0] = 0.0;
    return unit;
  }
  if (static_cast<int>(weights.size()) != support) {
    throw std::invalid_argument("builder: weight vector size mismatch");
  }
  return weights;
}

// Shared scaffolding: objective over f, the mass rows, and per-offset
// constraint blocks appended by the callers.
struct ProgramBuilder {
  LinearProgram lp;

  void AddVariables(int count, double lo, double hi) {
    lp.objective.resize(lp.objective.size() + count, 0.0);
    lp.lower.resize(lp.lower.size() + count, lo);
    lp.upper.resize(lp.upper.size() + count, hi);
  }

  int AddRow(RowSense sense, double rhs) {
    lp.rows.emplace_back(lp.objective.size(), 0.0);
    lp.senses.push_back(sense);
    lp.rhs.push_back(rhs);
    return static_cast<int>(lp.rows.size()) - 1;
  }
};

void AddMassRows(ProgramBuilder& builder, int support) {
  const int normalization = builder.AddRow(RowSense::kEqual, 1.0);
  for (int eta = 0; eta < support; ++eta) {
    builder.lp.rows[normalization][eta] = 1.0;
  }
  const int half = builder.AddRow(RowSense::kLessEqual, 0.5);
  for (int eta = 1; eta < support; ++eta) builder.lp.rows[half][eta] = 1.0;
}

// The circular leakage block of one offset: y - u <= 0, u + f - y <= 1,
// u - f + y <= 1, f(eta) - e^eps f(eta+mu) - u <= 0 and
// e^eps f(eta+mu) - f(eta) + e^eps u <= e^eps, plus the budget row
// sum_eta y <= delta (or <= delta_var when delta_var >= 0).
void AddOffsetBlock(ProgramBuilder& builder, int support, int side, int dims,
                    const std::vector<int>& offset, double exp_eps,
                    int y_base, int u_base, double delta, int delta_var) {
  const int budget = builder.AddRow(RowSense::kLessEqual,
                                    delta_var >= 0 ? 0.0 : delta);
  for (int eta = 0; eta < support; ++eta) {
    builder.lp.rows[budget][y_base + eta] = 1.0;
  }
  if (delta_var >= 0) builder.lp.rows[budget][delta_var] = -1.0;

  for (int eta = 0; eta < support; ++eta) {
    const int shifted = ShiftIndex(eta, offset, side, dims);
    const int y = y_base + eta;
    const int u = u_base + eta;

    int row = builder.AddRow(RowSense::kLessEqual, 0.0);
    builder.lp.rows[row][y] = 1.0;
    builder.lp.rows[row][u] = -1.0;

    row = builder.AddRow(RowSense::kLessEqual, 1.0);
    builder.lp.rows[row][u] = 1.0;
    builder.lp.rows[row][eta] = 1.0;
    builder.lp.rows[row][y] = -1.0;

    row = builder.AddRow(RowSense::kLessEqual, 1.0);
    builder.lp.rows[row][u] = 1.0;
    builder.lp.rows[row][eta] = -1.0;
    builder.lp.rows[row][y] = 1.0;

    row = builder.AddRow(RowSense::kLessEqual, 0.0);
    builder.lp.rows[row][eta] += 1.0;
    builder.lp.rows[row][shifted] -= exp_eps;
    builder.lp.rows[row][u] = -1.0;

    row = builder.AddRow(RowSense::kLessEqual, exp_eps);
    builder.lp.rows[row][shifted] += exp_eps;
    builder.lp.rows[row][eta] -= 1.0;
    builder.lp.rows[row][u] = exp_eps;
  }
}

void NameSupportVars(ProgramBuilder& builder, int support) {
  for (int eta = 0; eta < support; ++eta) {
    builder.lp.names.push_back("f" + std::to_string(eta));
  }
}

}  // namespace

AccuracyTarget AccuracyTarget::MaxErrorRate(double rho) {
  if (!(rho > 0.0 && rho < 0.5)) {
    throw InfeasibleError("accuracy target: rho must lie in (0, 0.5)");
  }
  return {Kind::kErrorRate, rho};
}

AccuracyTarget AccuracyTarget::MaxMse(double mse) {
  if (!(mse > 0.0)) {
    throw std::invalid_argument("accuracy target: mse must be > 0");
  }
  return {Kind::kMse, mse};
}

std::vector<double> MseWeights(int n) {
  std::vector<double> weights(n + 1, 0.0);
  for (int eta = 1; eta <= n; ++eta) {
    weights[eta] = static_cast<double>(eta) * eta;
  }
  return weights;
}

MixedIntegerProgram BuildMinErrorMilp(int n, int dims,
                                      const NeighborhoodSpec& nbhd,
                                      double eps, double delta,
                                      const std::vector<double>& weights) {
  CheckBuildParams(n, dims, eps);
  if (delta < 0.0 || delta > 1.0) {
    throw std::invalid_argument("builder: delta must lie in [0,1]");
  }
  nbhd.Validate(n, dims);
  const int side = n + 1;
  const int support = PowInt(side, dims);
  const std::vector<std::vector<int>> offsets = nbhd.OffsetTuples();
  const std::vector<double> w = ResolveWeights(support, n, weights);
  const double exp_eps = std::exp(eps);

  MixedIntegerProgram milp;
  ProgramBuilder builder;
  builder.AddVariables(support, 0.0, 1.0);
  NameSupportVars(builder, support);
  for (int eta = 0; eta < support; ++eta) builder.lp.objective[eta] = w[eta];

  std::vector<std::pair<int, int>> blocks;  // (y_base, u_base) per offset
  for (const std::vector<int>& offset : offsets) {
    const int y_base = static_cast<int>(builder.lp.objective.size());
    builder.AddVariables(support, 0.0, 1.0);
    const int u_base = static_cast<int>(builder.lp.objective.size());
    builder.AddVariables(support, 0.0, 1.0);
    const std::string label = OffsetLabel(offset);
    for (int eta = 0; eta < support; ++eta) {
      builder.lp.names.push_back("y_" + label + "_" + std::to_string(eta));
    }
    for (int eta = 0; eta < support; ++eta) {
      builder.lp.names.push_back("u_" + label + "_" + std::to_string(eta));
      milp.binary_indices.push_back(u_base + eta);
    }
    blocks.emplace_back(y_base, u_base);
  }

  AddMassRows(builder, support);
  for (size_t i = 0; i < offsets.size(); ++i) {
    AddOffsetBlock(builder, support, side, dims, offsets[i], exp_eps,
                   blocks[i].first, blocks[i].second, delta, -1);
  }
  milp.lp = std::move(builder.lp);
  return milp;
}

LinearProgram BuildZeroDeltaLp(int n, int dims, const NeighborhoodSpec& nbhd,
                               double eps) {
  CheckBuildParams(n, dims, eps);
  nbhd.Validate(n, dims);
  const int side = n + 1;
  const int support = PowInt(side, dims);
  const double exp_eps = std::exp(eps);

  ProgramBuilder builder;
  builder.AddVariables(support, 0.0, 1.0);
  NameSupportVars(builder, support);
  for (int eta = 1; eta < support; ++eta) builder.lp.objective[eta] = 1.0;
  AddMassRows(builder, support);
  for (const std::vector<int>& offset : nbhd.OffsetTuples()) {
    for (int eta = 0; eta < support; ++eta) {
      const int shifted = ShiftIndex(eta, offset, side, dims);
      const int row = builder.AddRow(RowSense::kLessEqual, 0.0);
      builder.lp.rows[row][eta] += 1.0;
      builder.lp.rows[row][shifted] -= exp_eps;
    }
  }
  return std::move(builder.lp);
}

MixedIntegerProgram BuildMinDeltaMilp(int n, const NeighborhoodSpec& nbhd,
                                      double eps,
                                      const AccuracyTarget& target) {
  CheckBuildParams(n, 1, eps);
  nbhd.Validate(n, 1);
  const int side = n + 1;
  const int support = side;
  const std::vector<std::vector<int>> offsets = nbhd.OffsetTuples();
  const double exp_eps = std::exp(eps);

  MixedIntegerProgram milp;
  ProgramBuilder builder;
  builder.AddVariables(support, 0.0, 1.0);
  NameSupportVars(builder, support);

  std::vector<std::pair<int, int>> blocks;
  for (const std::vector<int>& offset : offsets) {
    const int y_base = static_cast<int>(builder.lp.objective.size());
    builder.AddVariables(support, 0.0, 1.0);
    const int u_base = static_cast<int>(builder.lp.objective.size());
    builder.AddVariables(support, 0.0, 1.0);
    const std::string label = OffsetLabel(offset);
    for (int eta = 0; eta < support; ++eta) {
      builder.lp.names.push_back("y_" + label + "_" + std::to_string(eta));
    }
    for (int eta = 0; eta < support; ++eta) {
      builder.lp.names.push_back("u_" + label + "_" + std::to_string(eta));
      milp.binary_indices.push_back(u_base + eta);
    }
    blocks.emplace_back(y_base, u_base);
  }
  const int delta_var = static_cast<int>(builder.lp.objective.size());
  builder.AddVariables(1, 0.0, 1.0);
  builder.lp.names.push_back("delta");
  builder.lp.objective[delta_var] = 1.0;

  AddMassRows(builder, support);
  if (target.kind == AccuracyTarget::Kind::kErrorRate) {
    const int row = builder.AddRow(RowSense::kLessEqual,
                                   -(1.0 - target.value));
    builder.lp.rows[row][0] = -1.0;  // f(0) >= 1 - rho
  } else {
    const int row = builder.AddRow(RowSense::kLessEqual, target.value);
    for (int eta = 1; eta <= n; ++eta) {
      builder.lp.rows[row][eta] = static_cast<double>(eta) * eta;
    }
  }
  for (size_t i = 0; i < offsets.size(); ++i) {
    AddOffsetBlock(builder, support, side, 1, offsets[i], exp_eps,
                   blocks[i].first, blocks[i].second, 0.0, delta_var);
  }
  milp.lp = std::move(builder.lp);
  return milp;
}

namespace {

NoisePmf ExtractPmf(int n, int dims, int support,
                    const std::vector<double>& x) {
  std::vector<double> masses(x.begin(), x.begin() + support);
  for (double& mass : masses) {
    if (mass < 0.0) mass = 0.0;
    if (mass > 1.0) mass = 1.0;
  }
  return MakePmf(n, dims, std::move(masses));
}

bool AtHalfMassBoundary(const NoisePmf& pmf) {
  return std::abs(0.5 - pmf.masses[0]) <= kHalfMassBoundaryTol;
}

}  // namespace

OptimalPmfResult SolveOptimalPmf(int n, int dims,
                                 const NeighborhoodSpec& nbhd, double eps,
                                 double delta,
                                 const std::vector<double>& weights) {
  const int support = PowInt(n + 1, dims);
  OptimalPmfResult result;
  if (delta == 0.0) {
    // The MILP collapses to the linear program when no leakage budget
    // exists; every indicator can be taken zero.
    LinearProgram lp = BuildZeroDeltaLp(n, dims, nbhd, eps);
    if (!weights.empty()) {
      for (int eta = 0; eta < support; ++eta) lp.objective[eta] = weights[eta];
    }
    result.solve = SolveLp(lp);
    result.method = "lp";
  } else {
    const MixedIntegerProgram milp =
        BuildMinErrorMilp(n, dims, nbhd, eps, delta, weights);
    result.solve = SolveMilp(milp);
    result.method = "milp";
  }
  if (result.solve.status == SolveStatus::kInfeasible) {
    throw InfeasibleError("optimal pmf: no mechanism attains f(0) >= 0.5 at "
                          "this (eps, delta) budget");
  }
  if (result.solve.status == SolveStatus::kIterationLimit) {
    throw std::runtime_error("optimal pmf: solver iteration limit");
  }
  result.pmf = ExtractPmf(n, dims, support, result.solve.x);
  result.solve.at_half_mass_boundary = AtHalfMassBoundary(result.pmf);
  return result;
}

MinDeltaResult SolveMinDelta(int n, const NeighborhoodSpec& nbhd, double eps,
                             const AccuracyTarget& target) {
  const MixedIntegerProgram milp = BuildMinDeltaMilp(n, nbhd, eps, target);
  MinDeltaResult result;
  result.solve = SolveMilp(milp);
  if (result.solve.status == SolveStatus::kInfeasible) {
    throw InfeasibleError("min delta: accuracy target infeasible");
  }
  if (result.solve.status == SolveStatus::kIterationLimit) {
    throw std::runtime_error("min delta: solver iteration limit");
  }
  result.pmf = ExtractPmf(n, 1, n + 1, result.solve.x);
  result.delta = result.solve.objective;
  result.solve.at_half_mass_boundary = AtHalfMassBoundary(result.pmf);
  return result;
}

}  // namespace modnoise
