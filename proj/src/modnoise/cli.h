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

#ifndef MODNOISE_CLI_H_
#define MODNOISE_CLI_H_

#include <string>
#include <vector>

#include "modnoise/neighborhood.h"

namespace modnoise {

// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInfeasible = 2;
inline constexpr int kExitUnsupportedClosedForm = 3;
inline constexpr int kExitIoError = 4;

struct RunConfig {
  std::string subcommand;
  int n = 8;
  int dims = 1;
  std::string mode = "bd";  // sd | bd | arbitrary | vector
  int mu = 1;
  std::string offsets_text;
  double eps = 1.0;
  double delta = 0.0;
  double rho = 0.3;
  double match_er = -1.0;
  double match_mse = -1.0;
  std::string delta_grid;
  std::string eps_grid;
  std::string method = "auto";  // closed | milp | auto
  std::string out_path = "-";
  std::string summary_path;
  std::string pmf_path;
  std::string data_path;
  int levels = 11;
  std::string aggregation = "sum";
  std::string dump_path;
  // verify grid
  int n_min = 4;
  int n_max = 9;
  int mu_max = 3;
  std::string eps_set = "0.5,1,1.5,2";
  std::string verify_delta_grid = "0:0.2:0.05";
  double tol = 1e-6;
  bool perturb_closed_form = false;  // verification self-test hook
};

// Builds the neighborhood described by mode/mu/offsets.
NeighborhoodSpec MakeNeighborhood(const RunConfig& cfg);

// Flat/linear transition detection on a piecewise-linear rho(delta)
// sample: returns the grid deltas where the finite-difference slope
// jumps by more than `threshold`.
std::vector<double> DetectBreakpoints(const std::vector<double>& deltas,
                                      const std::vector<double>& rhos,
                                      double threshold);

// Outcome of a closed-form vs MILP equivalence run over a parameter
// grid; cells without a closed form are skipped.
struct VerifyReport {
  long cells = 0;
  long compared = 0;
  long skipped = 0;
  long mismatches = 0;
  std::vector<std::string> failures;
};

VerifyReport VerifyClosedVsMilp(const std::vector<int>& n_values,
                                const std::vector<int>& mu_values,
                                const std::vector<double>& eps_values,
                                const std::vector<double>& delta_values,
                                double tol, bool perturb = false);

int CmdPmf(const RunConfig& cfg);
int CmdSweep(const RunConfig& cfg);
int CmdCurve(const RunConfig& cfg);
int CmdCompare(const RunConfig& cfg);
int CmdEval(const RunConfig& cfg);
int CmdDataset(const RunConfig& cfg);
int CmdVerify(const RunConfig& cfg);

// Parses argv, dispatches, and maps exceptions to exit codes.
int RunCli(int argc, const char* const* argv);

}  // namespace modnoise

#endif  // MODNOISE_CLI_H_
