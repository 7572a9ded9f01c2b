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

#ifndef MODNOISE_MILP_H_
#define MODNOISE_MILP_H_

#include <iosfwd>

#include "modnoise/lp.h"

namespace modnoise {

struct MixedIntegerProgram {
  LinearProgram lp;
  std::vector<int> binary_indices;
};

void ValidateMilp(const MixedIntegerProgram& milp);

struct MilpOptions {
  double abs_gap = 1e-9;
  double integrality_tol = 1e-6;
  long max_nodes = 1000000;
};

// Branch and bound over the binary variables: best-bound node
// selection, branching on the most fractional binary with ties broken
// by lowest index, deterministic lexicographic incumbent tie-breaking.
SolveResult SolveMilp(const MixedIntegerProgram& milp,
                      const MilpOptions& options = MilpOptions());

// Plain-text dump: objective, then one line per constraint in
// `coef*var ... SENSE rhs` form, then bounds and binary declarations.
void DumpProblem(const MixedIntegerProgram& milp, std::ostream& out);
void DumpProblem(const LinearProgram& lp, std::ostream& out);

}  // namespace modnoise

#endif  // MODNOISE_MILP_H_
