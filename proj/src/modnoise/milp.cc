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

#include "modnoise/milp.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <ostream>
#include <queue>
#include <stdexcept>
#include <vector>

namespace modnoise {
namespace {

constexpr double kIncumbentTieTol = 1e-12;

struct Node {
  long id = 0;
  double bound = 0.0;
  std::vector<double> lower;
  std::vector<double> upper;
  std::vector<double> x;
  int branch_var = -1;  // most fractional binary, -1 when integral
};

struct NodeOrder {
  bool operator()(const std::shared_ptr<Node>& a,
                  const std::shared_ptr<Node>& b) const {
    if (a->bound != b->bound) return a->bound > b->bound;
    return a->id > b->id;
  }
};

int MostFractionalBinary(const std::vector<double>& x,
                         const std::vector<int>& binaries, double tol) {
  int best = -1;
  double best_score = tol;
  for (int j : binaries) {
    const double score = std::min(x[j], 1.0 - x[j]);
    if (score > best_score) {
      best_score = score;
      best = j;
    }
  }
  return best;
}

bool LexSmaller(const std::vector<double>& a, const std::vector<double>& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

}  // namespace

void ValidateMilp(const MixedIntegerProgram& milp) {
  ValidateLp(milp.lp);
  for (int j : milp.binary_indices) {
    if (j < 0 || j >= milp.lp.num_vars()) {
      throw std::invalid_argument("milp: binary index out of range");
    }
  }
}

SolveResult SolveMilp(const MixedIntegerProgram& milp,
                      const MilpOptions& options) {
  ValidateMilp(milp);

  LinearProgram relaxation = milp.lp;
  long next_id = 0;
  long nodes_solved = 0;
  long pivots_total = 0;

  bool have_incumbent = false;
  double incumbent_obj = std::numeric_limits<double>::infinity();
  std::vector<double> incumbent_x;
  double pruned_bound_min = std::numeric_limits<double>::infinity();

  std::priority_queue<std::shared_ptr<Node>, std::vector<std::shared_ptr<Node>>,
                      NodeOrder>
      open;

  SolveResult result;

  // Solves the relaxation under the node's bounds; returns nullptr for
  // infeasible children. Integral solutions update the incumbent and
  // are not enqueued.
  const auto make_node = [&](std::vector<double> lower,
                             std::vector<double> upper)
      -> std::shared_ptr<Node> {
    relaxation.lower = lower;
    relaxation.upper = upper;
    const SolveResult lp_result = SolveLp(relaxation);
    ++nodes_solved;
    pivots_total += lp_result.pivot_count;
    if (lp_result.status == SolveStatus::kIterationLimit) {
      throw std::runtime_error("milp: node LP hit the pivot limit");
    }
    if (lp_result.status == SolveStatus::kInfeasible) return nullptr;
    auto node = std::make_shared<Node>();
    node->id = next_id++;
    node->bound = lp_result.objective;
    node->lower = std::move(lower);
    node->upper = std::move(upper);
    node->x = lp_result.x;
    node->branch_var = MostFractionalBinary(node->x, milp.binary_indices,
                                            options.integrality_tol);
    if (node->branch_var == -1) {
      if (node->bound < incumbent_obj - kIncumbentTieTol ||
          (std::abs(node->bound - incumbent_obj) <= kIncumbentTieTol &&
           (!have_incumbent || LexSmaller(node->x, incumbent_x)))) {
        have_incumbent = true;
        incumbent_obj = node->bound;
        incumbent_x = node->x;
      }
      return nullptr;
    }
    return node;
  };

  auto root = make_node(milp.lp.lower, milp.lp.upper);
  if (root != nullptr) open.push(std::move(root));

  while (!open.empty()) {
    if (nodes_solved >= options.max_nodes) {
      result.status = SolveStatus::kIterationLimit;
      result.node_count = nodes_solved;
      result.pivot_count = pivots_total;
      if (have_incumbent) {
        result.objective = incumbent_obj;
        result.x = incumbent_x;
        result.gap = std::max(0.0, incumbent_obj - open.top()->bound);
      }
      return result;
    }
    const std::shared_ptr<Node> node = open.top();
    open.pop();
    if (have_incumbent && node->bound >= incumbent_obj - options.abs_gap) {
      pruned_bound_min = std::min(pruned_bound_min, node->bound);
      continue;
    }
    const int var = node->branch_var;
    for (const double fixed : {0.0, 1.0}) {
      std::vector<double> lower = node->lower;
      std::vector<double> upper = node->upper;
      lower[var] = fixed;
      upper[var] = fixed;
      auto child = make_node(std::move(lower), std::move(upper));
      if (child == nullptr) continue;
      if (have_incumbent && child->bound >= incumbent_obj - options.abs_gap) {
        pruned_bound_min = std::min(pruned_bound_min, child->bound);
        continue;
      }
      open.push(std::move(child));
    }
  }

  result.node_count = nodes_solved;
  result.pivot_count = pivots_total;
  if (!have_incumbent) {
    result.status = SolveStatus::kInfeasible;
    return result;
  }
  result.status = SolveStatus::kOptimal;
  result.objective = incumbent_obj;
  result.x = incumbent_x;
  result.gap = (pruned_bound_min == std::numeric_limits<double>::infinity())
                   ? 0.0
                   : std::max(0.0, incumbent_obj - pruned_bound_min);
  return result;
}

namespace {

void DumpObjectiveAndRows(const LinearProgram& lp,
                          const std::vector<std::string>& names,
                          std::ostream& out) {
  out << "min:";
  for (int j = 0; j < lp.num_vars(); ++j) {
    if (lp.objective[j] == 0.0) continue;
    out << " " << lp.objective[j] << "*" << names[j];
  }
  out << "\n";
  for (int i = 0; i < lp.num_rows(); ++i) {
    bool first = true;
    for (int j = 0; j < lp.num_vars(); ++j) {
      if (lp.rows[i][j] == 0.0) continue;
      if (!first) out << " ";
      out << lp.rows[i][j] << "*" << names[j];
      first = false;
    }
    out << (lp.senses[i] == RowSense::kEqual ? " = " : " <= ") << lp.rhs[i]
        << "\n";
  }
  for (int j = 0; j < lp.num_vars(); ++j) {
    out << lp.lower[j] << " <= " << names[j] << " <= " << lp.upper[j] << "\n";
  }
}

std::vector<std::string> NamesOrDefault(const LinearProgram& lp) {
  if (static_cast<int>(lp.names.size()) == lp.num_vars()) return lp.names;
  std::vector<std::string> names;
  for (int j = 0; j < lp.num_vars(); ++j) {
    names.push_back("x" + std::to_string(j));
  }
  return names;
}

}  // namespace

void DumpProblem(const LinearProgram& lp, std::ostream& out) {
  DumpObjectiveAndRows(lp, NamesOrDefault(lp), out);
}

void DumpProblem(const MixedIntegerProgram& milp, std::ostream& out) {
  const std::vector<std::string> names = NamesOrDefault(milp.lp);
  DumpObjectiveAndRows(milp.lp, names, out);
  for (int j : milp.binary_indices) out << "binary " << names[j] << "\n";
}

}  // namespace modnoise
