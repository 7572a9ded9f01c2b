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

#include "modnoise/lp.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace modnoise {
namespace {

constexpr double kFeasTol = 1e-9;
constexpr double kCostTol = 1e-9;
constexpr double kZeroPivot = 1e-9;
constexpr double kPhase1Tol = 1e-8;
constexpr double kDegenerateStep = 1e-12;
constexpr long kMaxPivots = 1000000;
constexpr int kBlandTrigger = 40;
constexpr double kInf = std::numeric_limits<double>::infinity();

enum class ColStatus { kBasic, kAtLower, kAtUpper };

// Dense bounded-variable simplex working state. Columns are the
// structural variables followed by one slack per row and any phase-1
// artificials.
struct Tableau {
  int m = 0;
  int cols = 0;
  std::vector<double> a;  // m x cols, row-major
  std::vector<double> xb;
  std::vector<int> basis;
  std::vector<ColStatus> status;
  std::vector<double> lo;
  std::vector<double> hi;
  std::vector<double> dj;
  long pivots = 0;

  double& at(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
  double at(int i, int j) const {
    return a[static_cast<size_t>(i) * cols + j];
  }

  double ColumnValue(int j) const {
    switch (status[j]) {
      case ColStatus::kAtLower:
        return lo[j];
      case ColStatus::kAtUpper:
        return hi[j];
      case ColStatus::kBasic:
        for (int i = 0; i < m; ++i) {
          if (basis[i] == j) return xb[i];
        }
    }
    return 0.0;
  }
};

void ComputeReducedCosts(Tableau& t, const std::vector<double>& cost) {
  t.dj.assign(t.cols, 0.0);
  for (int j = 0; j < t.cols; ++j) t.dj[j] = cost[j];
  for (int i = 0; i < t.m; ++i) {
    const double cb = cost[t.basis[i]];
    if (cb == 0.0) continue;
    for (int j = 0; j < t.cols; ++j) t.dj[j] -= cb * t.at(i, j);
  }
}

enum class PhaseStatus { kOptimal, kIterationLimit };

// Runs the simplex to optimality for the cost vector already priced
// into t.dj. Entering variables use Dantzig pricing; a stretch of
// degenerate steps switches to Bland's rule until progress resumes.
PhaseStatus RunSimplex(Tableau& t) {
  int degenerate_streak = 0;
  bool bland = false;
  while (true) {
    if (t.pivots >= kMaxPivots) return PhaseStatus::kIterationLimit;

    // Entering column.
    int entering = -1;
    double best_score = kCostTol;
    for (int j = 0; j < t.cols; ++j) {
      if (t.status[j] == ColStatus::kBasic) continue;
      if (t.hi[j] - t.lo[j] <= 0.0) continue;  // fixed
      const double d = t.dj[j];
      const bool eligible = (t.status[j] == ColStatus::kAtLower && d < -kCostTol) ||
                            (t.status[j] == ColStatus::kAtUpper && d > kCostTol);
      if (!eligible) continue;
      if (bland) {
        entering = j;
        break;
      }
      if (std::abs(d) > best_score) {
        best_score = std::abs(d);
        entering = j;
      }
    }
    if (entering == -1) return PhaseStatus::kOptimal;
    const double sigma =
        (t.status[entering] == ColStatus::kAtLower) ? 1.0 : -1.0;

    // Ratio test: the entering variable moves by step >= 0; basic
    // variable i changes at rate -sigma * a[i][entering].
    double step = t.hi[entering] - t.lo[entering];  // bound flip
    int leave_row = -1;
    bool leave_at_lower = true;
    for (int i = 0; i < t.m; ++i) {
      const double alpha = t.at(i, entering);
      if (std::abs(alpha) <= kZeroPivot) continue;
      const double rate = sigma * alpha;  // positive: basic decreases
      double limit;
      bool hits_lower;
      if (rate > 0.0) {
        limit = (t.xb[i] - t.lo[t.basis[i]]) / rate;
        hits_lower = true;
      } else {
        if (t.hi[t.basis[i]] == kInf) continue;
        limit = (t.xb[i] - t.hi[t.basis[i]]) / rate;
        hits_lower = false;
      }
      if (limit < 0.0) limit = 0.0;
      bool take = false;
      if (limit < step - 1e-12) {
        take = true;
      } else if (limit <= step + 1e-12 && leave_row != -1) {
        if (bland) {
          take = t.basis[i] < t.basis[leave_row];
        } else {
          take = std::abs(alpha) > std::abs(t.at(leave_row, entering));
        }
      } else if (limit <= step + 1e-12 && leave_row == -1 && bland) {
        // Tie against the bound flip: Bland prefers the smaller index.
        take = t.basis[i] < entering;
      }
      if (take) {
        step = std::min(step, limit);
        leave_row = i;
        leave_at_lower = hits_lower;
      }
    }
    if (step == kInf) {
      throw std::logic_error("simplex: unbounded direction despite bounds");
    }

    // Track degeneracy and toggle Bland's rule.
    if (step <= kDegenerateStep) {
      if (++degenerate_streak >= kBlandTrigger) bland = true;
    } else {
      degenerate_streak = 0;
      bland = false;
    }

    ++t.pivots;
    if (leave_row == -1) {
      // Bound flip, basis unchanged.
      for (int i = 0; i < t.m; ++i) {
        t.xb[i] -= sigma * t.at(i, entering) * step;
      }
      t.status[entering] = (t.status[entering] == ColStatus::kAtLower)
                               ? ColStatus::kAtUpper
                               : ColStatus::kAtLower;
      continue;
    }

    const int leaving = t.basis[leave_row];
    const double entering_value =
        (sigma > 0.0) ? t.lo[entering] + step : t.hi[entering] - step;
    for (int i = 0; i < t.m; ++i) {
      if (i == leave_row) continue;
      t.xb[i] -= sigma * t.at(i, entering) * step;
    }
    t.xb[leave_row] = entering_value;

    // Row elimination.
    const double pivot = t.at(leave_row, entering);
    const double inv = 1.0 / pivot;
    double* prow = &t.a[static_cast<size_t>(leave_row) * t.cols];
    for (int j = 0; j < t.cols; ++j) prow[j] *= inv;
    for (int i = 0; i < t.m; ++i) {
      if (i == leave_row) continue;
      const double factor = t.at(i, entering);
      if (factor == 0.0) continue;
      double* row = &t.a[static_cast<size_t>(i) * t.cols];
      for (int j = 0; j < t.cols; ++j) row[j] -= factor * prow[j];
    }
    const double dfactor = t.dj[entering];
    if (dfactor != 0.0) {
      for (int j = 0; j < t.cols; ++j) t.dj[j] -= dfactor * prow[j];
    }

    t.basis[leave_row] = entering;
    t.status[entering] = ColStatus::kBasic;
    t.status[leaving] =
        leave_at_lower ? ColStatus::kAtLower : ColStatus::kAtUpper;
  }
}

}  // namespace

void ValidateLp(const LinearProgram& lp) {
  const int n = lp.num_vars();
  if (static_cast<int>(lp.lower.size()) != n ||
      static_cast<int>(lp.upper.size()) != n) {
    throw std::invalid_argument("lp: bound vectors sized differently");
  }
  if (lp.rows.size() != lp.senses.size() || lp.rows.size() != lp.rhs.size()) {
    throw std::invalid_argument("lp: row arrays sized differently");
  }
  for (const std::vector<double>& row : lp.rows) {
    if (static_cast<int>(row.size()) != n) {
      throw std::invalid_argument("lp: ragged constraint row");
    }
  }
  for (int j = 0; j < n; ++j) {
    if (!std::isfinite(lp.lower[j]) || !std::isfinite(lp.upper[j])) {
      throw std::invalid_argument("lp: variable bounds must be finite");
    }
    if (lp.lower[j] > lp.upper[j] + kFeasTol) {
      throw std::invalid_argument("lp: lower bound above upper bound");
    }
  }
}

SolveResult SolveLp(const LinearProgram& lp) {
  ValidateLp(lp);
  const int n = lp.num_vars();
  const int m = lp.num_rows();

  // Row equilibration keeps pivoting well scaled when constraints carry
  // e^eps factors.
  std::vector<double> scale(m, 1.0);
  for (int i = 0; i < m; ++i) {
    double max_abs = 0.0;
    for (double v : lp.rows[i]) max_abs = std::max(max_abs, std::abs(v));
    if (max_abs > 0.0) scale[i] = 1.0 / max_abs;
  }

  Tableau t;
  t.m = m;

  // Columns: structurals, slacks, then artificials as needed.
  std::vector<double> nonbasic_value(n);
  for (int j = 0; j < n; ++j) nonbasic_value[j] = lp.lower[j];

  std::vector<double> residual(m);
  std::vector<int> artificial_rows;
  for (int i = 0; i < m; ++i) {
    double dot = 0.0;
    for (int j = 0; j < n; ++j) dot += lp.rows[i][j] * nonbasic_value[j];
    residual[i] = (lp.rhs[i] - dot) * scale[i];
    const bool needs_artificial =
        (lp.senses[i] == RowSense::kEqual)
            ? std::abs(residual[i]) > 0.0
            : residual[i] < 0.0;
    if (needs_artificial) artificial_rows.push_back(i);
  }
  const int num_artificial = static_cast<int>(artificial_rows.size());
  t.cols = n + m + num_artificial;
  t.a.assign(static_cast<size_t>(m) * t.cols, 0.0);
  t.lo.assign(t.cols, 0.0);
  t.hi.assign(t.cols, 0.0);
  t.status.assign(t.cols, ColStatus::kAtLower);
  t.basis.assign(m, -1);
  t.xb.assign(m, 0.0);

  for (int j = 0; j < n; ++j) {
    t.lo[j] = lp.lower[j];
    t.hi[j] = lp.upper[j];
    t.status[j] = ColStatus::kAtLower;
  }
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) t.at(i, j) = lp.rows[i][j] * scale[i];
    const int slack = n + i;
    t.at(i, slack) = 1.0;
    t.lo[slack] = 0.0;
    t.hi[slack] = (lp.senses[i] == RowSense::kLessEqual) ? kInf : 0.0;
    t.status[slack] = ColStatus::kAtLower;
  }
  int next_artificial = n + m;
  std::vector<int> artificial_cols;
  for (int i = 0; i < m; ++i) {
    const bool has_artificial =
        std::find(artificial_rows.begin(), artificial_rows.end(), i) !=
        artificial_rows.end();
    if (!has_artificial) {
      // Slack absorbs the residual.
      t.basis[i] = n + i;
      t.status[n + i] = ColStatus::kBasic;
      t.xb[i] = residual[i];
      continue;
    }
    const int col = next_artificial++;
    artificial_cols.push_back(col);
    t.at(i, col) = (residual[i] >= 0.0) ? 1.0 : -1.0;
    t.lo[col] = 0.0;
    t.hi[col] = kInf;
    t.basis[i] = col;
    t.status[col] = ColStatus::kBasic;
    t.xb[i] = std::abs(residual[i]);
  }

  SolveResult result;

  if (num_artificial > 0) {
    std::vector<double> phase1_cost(t.cols, 0.0);
    for (int col : artificial_cols) phase1_cost[col] = 1.0;
    ComputeReducedCosts(t, phase1_cost);
    if (RunSimplex(t) == PhaseStatus::kIterationLimit) {
      result.status = SolveStatus::kIterationLimit;
      result.pivot_count = t.pivots;
      return result;
    }
    double infeasibility = 0.0;
    for (int col : artificial_cols) infeasibility += t.ColumnValue(col);
    if (infeasibility > kPhase1Tol) {
      result.status = SolveStatus::kInfeasible;
      result.pivot_count = t.pivots;
      return result;
    }
    // Pin artificials at zero for phase 2.
    for (int col : artificial_cols) t.hi[col] = 0.0;
  }

  std::vector<double> cost(t.cols, 0.0);
  for (int j = 0; j < n; ++j) cost[j] = lp.objective[j];
  ComputeReducedCosts(t, cost);
  if (RunSimplex(t) == PhaseStatus::kIterationLimit) {
    result.status = SolveStatus::kIterationLimit;
    result.pivot_count = t.pivots;
    return result;
  }

  result.status = SolveStatus::kOptimal;
  result.x.assign(n, 0.0);
  for (int j = 0; j < n; ++j) {
    switch (t.status[j]) {
      case ColStatus::kAtLower:
        result.x[j] = t.lo[j];
        break;
      case ColStatus::kAtUpper:
        result.x[j] = t.hi[j];
        break;
      case ColStatus::kBasic:
        break;
    }
  }
  for (int i = 0; i < m; ++i) {
    if (t.basis[i] < n) result.x[t.basis[i]] = t.xb[i];
  }
  double objective = 0.0;
  for (int j = 0; j < n; ++j) objective += lp.objective[j] * result.x[j];
  result.objective = objective;
  result.node_count = 1;
  result.pivot_count = t.pivots;
  return result;
}

}  // namespace modnoise
