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

#ifndef MODNOISE_LP_H_
#define MODNOISE_LP_H_

#include <string>
#include <vector>

namespace modnoise {

enum class RowSense { kLessEqual, kEqual };

// Dense linear program: min c'x subject to row constraints and finite
// variable bounds.
struct LinearProgram {
  std::vector<double> objective;
  std::vector<std::vector<double>> rows;
  std::vector<RowSense> senses;
  std::vector<double> rhs;
  std::vector<double> lower;
  std::vector<double> upper;
  std::vector<std::string> names;  // optional, used by DumpProblem

  int num_vars() const { return static_cast<int>(objective.size()); }
  int num_rows() const { return static_cast<int>(rows.size()); }
};

// Throws std::invalid_argument on inconsistent dimensions or
// non-finite bounds.
void ValidateLp(const LinearProgram& lp);

enum class SolveStatus { kOptimal, kInfeasible, kIterationLimit };

struct SolveResult {
  SolveStatus status = SolveStatus::kInfeasible;
  double objective = 0.0;
  std::vector<double> x;
  long node_count = 0;   // branch-and-bound nodes (1 for a plain LP)
  long pivot_count = 0;  // simplex pivots across all nodes
  double gap = 0.0;      // certified absolute optimality gap
  // Set by the problem layer when the mass constraint
  // sum_{eta != 0} f = 0.5 is active at the optimum.
  bool at_half_mass_boundary = false;
};

// Bounded-variable primal simplex: two phases, row equilibration,
// Dantzig pricing with Bland's anti-cycling rule on degenerate
// stretches, feasibility tolerance 1e-9, at most 10^6 pivots.
SolveResult SolveLp(const LinearProgram& lp);

}  // namespace modnoise

#endif  // MODNOISE_LP_H_
