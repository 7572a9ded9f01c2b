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

#include "modnoise/cli.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "modnoise/closed_form.h"
#include "modnoise/errors.h"
#include "modnoise/io.h"
#include "modnoise/mechanisms.h"
#include "modnoise/milp.h"
#include "modnoise/privacy.h"
#include "modnoise/problems.h"

namespace modnoise {
namespace {

using nlohmann::json;

std::vector<double> ParseNumberList(const std::string& text) {
  std::vector<double> values;
  std::stringstream stream(text);
  std::string field;
  while (std::getline(stream, field, ',')) {
    values.push_back(std::stod(field));
  }
  return values;
}

std::vector<std::vector<int>> ParseOffsetTuples(const std::string& text) {
  std::vector<std::vector<int>> tuples;
  std::stringstream stream(text);
  std::string group;
  while (std::getline(stream, group, ';')) {
    std::vector<int> tuple;
    std::stringstream inner(group);
    std::string field;
    while (std::getline(inner, field, ',')) tuple.push_back(std::stoi(field));
    if (!tuple.empty()) tuples.push_back(std::move(tuple));
  }
  return tuples;
}

void WriteTextOutput(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream out(path);
  if (!out) throw IoError("cannot write '" + path + "'");
  out << content;
}

void WriteSummary(const std::string& path, const json& summary) {
  WriteTextOutput(path.empty() ? "-" : path, summary.dump(2) + "\n");
}

// Result of resolving one (eps, delta) instance through the requested
// method, with the fallback chain applied.
struct ResolvedPmf {
  NoisePmf pmf;
  std::string method;  // "closed", "milp", "lp"
  int region_index = -1;
  bool flat = false;
};

bool HasClosedForm(const RunConfig& cfg) {
  return cfg.mode == "sd" || cfg.mode == "bd";
}

ResolvedPmf ResolveClosed(const RunConfig& cfg, double delta) {
  if (!HasClosedForm(cfg)) {
    throw UnsupportedClosedFormError(
        "no closed form for '" + cfg.mode +
        "' neighborhoods; use --method milp");
  }
  ResolvedPmf resolved;
  if (cfg.mode == "sd") {
    ClosedFormPmf closed = SdOptimalPmf(cfg.n, cfg.mu, cfg.eps, delta);
    resolved.pmf = std::move(closed.pmf);
    resolved.region_index = closed.region_index;
    resolved.flat = closed.flat;
  } else {
    ClosedFormPmf closed = BdOptimalPmf(cfg.n, cfg.mu, cfg.eps, delta);
    resolved.pmf = std::move(closed.pmf);
    resolved.region_index = closed.region_index;
    resolved.flat = closed.flat;
  }
  resolved.method = "closed";
  return resolved;
}

ResolvedPmf ResolveMilp(const RunConfig& cfg, const NeighborhoodSpec& nbhd,
                        double delta) {
  OptimalPmfResult solved =
      SolveOptimalPmf(cfg.n, cfg.dims, nbhd, cfg.eps, delta);
  ResolvedPmf resolved;
  resolved.pmf = std::move(solved.pmf);
  resolved.method = solved.method;
  return resolved;
}

ResolvedPmf ResolvePmf(const RunConfig& cfg, const NeighborhoodSpec& nbhd,
                       double delta) {
  if (cfg.method == "closed") return ResolveClosed(cfg, delta);
  if (cfg.method == "milp") return ResolveMilp(cfg, nbhd, delta);
  if (cfg.method != "auto") {
    throw std::invalid_argument("unknown method '" + cfg.method + "'");
  }
  if (HasClosedForm(cfg)) {
    try {
      return ResolveClosed(cfg, delta);
    } catch (const UnsupportedClosedFormError&) {
      // fall through to the solver
    }
  }
  return ResolveMilp(cfg, nbhd, delta);
}

json OffsetJson(const std::vector<int>& offset) {
  return json(offset);
}

json ProfileJson(const LeakageReport& report) {
  json per_offset = json::array();
  for (const OffsetLeakage& entry : report.per_offset) {
    per_offset.push_back(
        {{"offset", OffsetJson(entry.offset)}, {"leakage", entry.leakage}});
  }
  return {{"delta_actual", report.delta_actual},
          {"worst_offset", OffsetJson(report.worst_offset)},
          {"per_offset", per_offset}};
}

}  // namespace

NeighborhoodSpec MakeNeighborhood(const RunConfig& cfg) {
  NeighborhoodSpec nbhd;
  if (cfg.mode == "sd") {
    nbhd = NeighborhoodSpec::SingleDistance(cfg.mu);
  } else if (cfg.mode == "bd") {
    nbhd = NeighborhoodSpec::BoundedDifference(cfg.mu);
  } else if (cfg.mode == "arbitrary") {
    std::vector<int> offsets;
    for (double value : ParseNumberList(cfg.offsets_text)) {
      offsets.push_back(static_cast<int>(std::llround(value)));
    }
    nbhd = NeighborhoodSpec::Arbitrary(std::move(offsets));
  } else if (cfg.mode == "vector") {
    nbhd = NeighborhoodSpec::VectorArbitrary(ParseOffsetTuples(cfg.offsets_text));
  } else {
    throw std::invalid_argument("unknown mode '" + cfg.mode + "'");
  }
  nbhd.Validate(cfg.n, cfg.mode == "vector" ? cfg.dims : 1);
  return nbhd;
}

std::vector<double> DetectBreakpoints(const std::vector<double>& deltas,
                                      const std::vector<double>& rhos,
                                      double threshold) {
  const int count = static_cast<int>(deltas.size());
  if (count < 3) return {};
  std::vector<double> slopes(count - 1);
  for (int i = 0; i + 1 < count; ++i) {
    slopes[i] = (rhos[i + 1] - rhos[i]) / (deltas[i + 1] - deltas[i]);
  }
  std::vector<double> breakpoints;
  int run_best = -1;
  double run_best_jump = 0.0;
  for (int i = 1; i < count - 1; ++i) {
    const double jump = std::abs(slopes[i] - slopes[i - 1]);
    if (jump > threshold) {
      if (run_best == -1 || jump > run_best_jump) {
        run_best = i;
        run_best_jump = jump;
      }
    } else if (run_best != -1) {
      breakpoints.push_back(deltas[run_best]);
      run_best = -1;
      run_best_jump = 0.0;
    }
  }
  if (run_best != -1) breakpoints.push_back(deltas[run_best]);
  return breakpoints;
}

int CmdPmf(const RunConfig& cfg) {
  const NeighborhoodSpec nbhd = MakeNeighborhood(cfg);
  const ResolvedPmf resolved = ResolvePmf(cfg, nbhd, cfg.delta);
  const LeakageReport profile = PrivacyProfile(resolved.pmf, cfg.eps, nbhd);

  std::ostringstream csv;
  WritePmfCsv(csv, resolved.pmf);
  WriteTextOutput(cfg.out_path, csv.str());

  json summary = {
      {"n", cfg.n},
      {"dims", cfg.dims},
      {"mode", cfg.mode},
      {"eps", cfg.eps},
      {"delta", cfg.delta},
      {"method", resolved.method},
      {"f0", resolved.pmf.masses[0]},
      {"error_rate", ErrorRate(resolved.pmf)},
      {"delta_actual", profile.delta_actual},
      {"worst_offset", OffsetJson(profile.worst_offset)},
  };
  if (resolved.pmf.dims == 1) {
    summary["mse"] = MeanSquaredError(resolved.pmf);
  }
  if (resolved.method == "closed") {
    summary["region_index"] = resolved.region_index;
    summary["flat"] = resolved.flat;
  }
  WriteSummary(cfg.summary_path, summary);

  if (!cfg.dump_path.empty()) {
    std::ofstream dump(cfg.dump_path);
    if (!dump) throw IoError("cannot write '" + cfg.dump_path + "'");
    DumpProblem(BuildMinErrorMilp(cfg.n, cfg.dims, nbhd, cfg.eps, cfg.delta),
                dump);
  }
  return kExitOk;
}

int CmdSweep(const RunConfig& cfg) {
  const NeighborhoodSpec nbhd = MakeNeighborhood(cfg);
  const std::vector<double> deltas = GridSpec::Parse(cfg.delta_grid).Points();
  const int count = static_cast<int>(deltas.size());

  struct Cell {
    bool ok = false;
    bool infeasible = false;
    std::string error;
    double rho = 0.0;
    double f0 = 0.0;
    std::string method;
  };
  std::vector<Cell> cells(count);
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < count; ++i) {
    try {
      RunConfig point = cfg;
      const ResolvedPmf resolved = ResolvePmf(point, nbhd, deltas[i]);
      cells[i].ok = true;
      cells[i].f0 = resolved.pmf.masses[0];
      cells[i].rho = ErrorRate(resolved.pmf);
      cells[i].method = resolved.method;
    } catch (const InfeasibleError&) {
      cells[i].infeasible = true;
    } catch (const std::exception& e) {
      cells[i].error = e.what();
    }
  }
  for (const Cell& cell : cells) {
    if (!cell.ok && !cell.infeasible) {
      throw UnsupportedClosedFormError(cell.error);
    }
  }

  std::vector<SweepPoint> rows;
  std::vector<double> feasible_deltas;
  std::vector<double> feasible_rhos;
  json infeasible = json::array();
  for (int i = 0; i < count; ++i) {
    if (!cells[i].ok) {
      infeasible.push_back(deltas[i]);
      continue;
    }
    rows.push_back({deltas[i], cells[i].rho, cells[i].f0});
    feasible_deltas.push_back(deltas[i]);
    feasible_rhos.push_back(cells[i].rho);
  }
  std::ostringstream csv;
  WriteSweepCsv(csv, rows);
  WriteTextOutput(cfg.out_path, csv.str());

  json summary = {
      {"n", cfg.n},
      {"mode", cfg.mode},
      {"eps", cfg.eps},
      {"rows", rows.size()},
      {"infeasible_deltas", infeasible},
      {"breakpoints", DetectBreakpoints(feasible_deltas, feasible_rhos, 0.5)},
  };
  if (!rows.empty()) {
    summary["f0"] = rows.front().f0;
    summary["error_rate"] = rows.front().rho;
  }
  WriteSummary(cfg.summary_path, summary);
  return kExitOk;
}

int CmdCurve(const RunConfig& cfg) {
  const NeighborhoodSpec nbhd = MakeNeighborhood(cfg);
  const std::vector<double> grid = GridSpec::Parse(cfg.eps_grid).Points();
  std::vector<CurvePoint> points(grid.size());
  json summary = {{"n", cfg.n}, {"mode", cfg.mode}, {"rho_star", cfg.rho}};

  bool closed_available = HasClosedForm(cfg);
  TradeoffCurve curve;
  if (closed_available && cfg.method != "milp") {
    try {
      curve = (cfg.mode == "sd") ? SdTradeoffCurve(cfg.n, cfg.mu, cfg.rho)
                                 : BdTradeoffCurve(cfg.n, cfg.mu, cfg.rho);
    } catch (const UnsupportedClosedFormError&) {
      if (cfg.method == "closed") throw;
      closed_available = false;
    }
  } else if (cfg.method == "closed") {
    throw UnsupportedClosedFormError("no closed-form curve for mode '" +
                                     cfg.mode + "'");
  } else {
    closed_available = false;
  }

  if (closed_available) {
    for (size_t i = 0; i < grid.size(); ++i) {
      points[i] = {grid[i], EvalTradeoffDelta(curve, grid[i])};
    }
    json segments = json::array();
    json breakpoints = json::array();
    for (const TradeoffSegment& segment : curve.segments) {
      segments.push_back({{"eps_lo", segment.eps_lo},
                          {"eps_hi", std::isinf(segment.eps_hi)
                                         ? json()
                                         : json(segment.eps_hi)},
                          {"k", segment.k},
                          {"zero_delta", segment.zero_delta},
                          {"constant_tail", segment.constant_tail}});
      if (!segment.constant_tail) breakpoints.push_back(segment.eps_lo);
    }
    summary["method"] = "closed";
    summary["segments"] = segments;
    summary["breakpoints"] = breakpoints;
  } else {
    const AccuracyTarget target = AccuracyTarget::MaxErrorRate(cfg.rho);
    const int count = static_cast<int>(grid.size());
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < count; ++i) {
      points[i] = {grid[i], SolveMinDelta(cfg.n, nbhd, grid[i], target).delta};
    }
    summary["method"] = "milp";
  }

  std::ostringstream csv;
  WriteCurveCsv(csv, points);
  WriteTextOutput(cfg.out_path, csv.str());
  WriteSummary(cfg.summary_path, summary);
  return kExitOk;
}

int CmdCompare(const RunConfig& cfg) {
  if ((cfg.match_er >= 0.0) == (cfg.match_mse >= 0.0)) {
    throw std::invalid_argument(
        "compare: exactly one of --match-er / --match-mse is required");
  }
  CompareSpec spec;
  spec.n = cfg.n;
  spec.nbhd = MakeNeighborhood(cfg);
  spec.matched_kind = (cfg.match_er >= 0.0) ? AccuracyKind::kErrorRate
                                            : AccuracyKind::kMse;
  spec.matched_value = (cfg.match_er >= 0.0) ? cfg.match_er : cfg.match_mse;
  spec.eps_grid = GridSpec::Parse(cfg.eps_grid).Points();

  const std::vector<CompareRow> rows = CompareTradeoffs(spec);
  std::ostringstream csv;
  WriteCompareCsv(csv, rows);
  WriteTextOutput(cfg.out_path, csv.str());

  json summary = {
      {"n", cfg.n},
      {"matched", cfg.match_er >= 0.0 ? "error_rate" : "mse"},
      {"target", spec.matched_value},
      {"alpha", CalibrateGeometric(spec.matched_kind, spec.matched_value)},
      {"sigma2", CalibrateGaussian(spec.matched_kind, spec.matched_value)},
  };
  WriteSummary(cfg.summary_path, summary);
  return kExitOk;
}

int CmdEval(const RunConfig& cfg) {
  const NoisePmf pmf = ReadPmfFile(cfg.pmf_path);
  RunConfig local = cfg;
  local.n = pmf.n;
  local.dims = pmf.dims;
  const NeighborhoodSpec nbhd = MakeNeighborhood(local);
  const LeakageReport profile = PrivacyProfile(pmf, cfg.eps, nbhd);

  json report = ProfileJson(profile);
  report["n"] = pmf.n;
  report["dims"] = pmf.dims;
  report["eps"] = cfg.eps;
  report["error_rate"] = ErrorRate(pmf);
  if (pmf.dims == 1) report["mse"] = MeanSquaredError(pmf);
  WriteTextOutput(cfg.out_path, report.dump(2) + "\n");
  return kExitOk;
}

int CmdDataset(const RunConfig& cfg) {
  const std::vector<double> records = ReadNumericFile(cfg.data_path);
  if (cfg.levels < 2) {
    throw std::invalid_argument("dataset: levels must be >= 2");
  }
  const bool use_sum = cfg.aggregation == "sum";
  if (!use_sum && cfg.aggregation != "mean") {
    throw std::invalid_argument("dataset: aggregation must be sum or mean");
  }

  const auto aggregate = [&](const std::vector<double>& values) {
    double sum = 0.0;
    for (double v : values) sum += v;
    return use_sum ? sum : sum / static_cast<double>(values.size());
  };

  const double full = aggregate(records);
  std::vector<double> leave_one_out;
  if (records.size() > 1) {
    for (size_t i = 0; i < records.size(); ++i) {
      std::vector<double> rest;
      rest.reserve(records.size() - 1);
      for (size_t j = 0; j < records.size(); ++j) {
        if (j != i) rest.push_back(records[j]);
      }
      leave_one_out.push_back(aggregate(rest));
    }
  }

  // Quantizer domain: the smallest aggregate any sub-dataset could
  // produce up to the largest observed one, split into `levels` uniform
  // bins with left-inclusive edges.
  double lo;
  if (use_sum) {
    lo = 0.0;
    for (double v : records) lo += std::min(v, 0.0);
  } else {
    lo = std::min(0.0, *std::min_element(records.begin(), records.end()));
  }
  double hi = full;
  for (double v : leave_one_out) hi = std::max(hi, v);

  const int n = cfg.levels - 1;
  const double width = (hi - lo) / cfg.levels;
  const auto quantize = [&](double value) {
    if (width <= 0.0) return 0;
    const int bin = static_cast<int>(std::floor((value - lo) / width));
    return std::clamp(bin, 0, n);
  };

  const int q = quantize(full);
  std::vector<int> offsets;
  for (double v : leave_one_out) {
    const int q_prime = quantize(v);
    if (q_prime == q) continue;
    offsets.push_back(((q - q_prime) % (n + 1) + (n + 1)) % (n + 1));
  }
  std::sort(offsets.begin(), offsets.end());
  offsets.erase(std::unique(offsets.begin(), offsets.end()), offsets.end());

  json output = {{"n", n}, {"offsets", offsets}};
  if (offsets.empty()) {
    output["warning"] =
        "degenerate neighborhood: no leave-one-out change crosses a bin edge";
  }
  WriteTextOutput(cfg.out_path, output.dump(2) + "\n");
  return kExitOk;
}

VerifyReport VerifyClosedVsMilp(const std::vector<int>& n_values,
                                const std::vector<int>& mu_values,
                                const std::vector<double>& eps_values,
                                const std::vector<double>& delta_values,
                                double tol, bool perturb) {
  struct Task {
    bool bd = false;
    int n = 0;
    int mu = 0;
    double eps = 0.0;
    double delta = 0.0;
  };
  std::vector<Task> tasks;
  for (int kind = 0; kind < 2; ++kind) {
    for (int n : n_values) {
      for (int mu : mu_values) {
        if (mu > n) continue;
        for (double eps : eps_values) {
          for (double delta : delta_values) {
            tasks.push_back({kind == 1, n, mu, eps, delta});
          }
        }
      }
    }
  }

  struct Outcome {
    bool skipped = false;
    bool mismatch = false;
    std::string detail;
  };
  std::vector<Outcome> outcomes(tasks.size());

#pragma omp parallel for schedule(dynamic)
  for (int t = 0; t < static_cast<int>(tasks.size()); ++t) {
    const Task& task = tasks[t];
    Outcome& outcome = outcomes[t];
    double rho_closed = -1.0;
    bool closed_infeasible = false;
    try {
      const ClosedFormPmf closed =
          task.bd ? BdOptimalPmf(task.n, task.mu, task.eps, task.delta)
                  : SdOptimalPmf(task.n, task.mu, task.eps, task.delta);
      rho_closed = ErrorRate(closed.pmf);
      if (perturb) rho_closed += 1e-3;
    } catch (const InfeasibleError&) {
      closed_infeasible = true;
    } catch (const UnsupportedClosedFormError&) {
      outcome.skipped = true;
      continue;
    }

    const NeighborhoodSpec nbhd =
        task.bd ? NeighborhoodSpec::BoundedDifference(task.mu)
                : NeighborhoodSpec::SingleDistance(task.mu);
    double rho_milp = -1.0;
    bool milp_infeasible = false;
    try {
      rho_milp = ErrorRate(
          SolveOptimalPmf(task.n, 1, nbhd, task.eps, task.delta).pmf);
    } catch (const InfeasibleError&) {
      milp_infeasible = true;
    }

    std::ostringstream where;
    where << (task.bd ? "bd" : "sd") << " n=" << task.n << " mu=" << task.mu
          << " eps=" << task.eps << " delta=" << task.delta;
    if (closed_infeasible != milp_infeasible) {
      outcome.mismatch = true;
      where << " feasibility disagreement (closed "
            << (closed_infeasible ? "infeasible" : "feasible") << ", milp "
            << (milp_infeasible ? "infeasible" : "feasible") << ")";
      outcome.detail = where.str();
    } else if (!closed_infeasible &&
               std::abs(rho_closed - rho_milp) > tol) {
      outcome.mismatch = true;
      where << " rho_closed=" << rho_closed << " rho_milp=" << rho_milp
            << " diff=" << std::abs(rho_closed - rho_milp);
      outcome.detail = where.str();
    }
  }

  VerifyReport report;
  report.cells = static_cast<long>(tasks.size());
  for (const Outcome& outcome : outcomes) {
    if (outcome.skipped) {
      ++report.skipped;
      continue;
    }
    ++report.compared;
    if (outcome.mismatch) {
      ++report.mismatches;
      report.failures.push_back(outcome.detail);
    }
  }
  return report;
}

int CmdVerify(const RunConfig& cfg) {
  std::vector<int> n_values;
  for (int n = cfg.n_min; n <= cfg.n_max; ++n) n_values.push_back(n);
  std::vector<int> mu_values;
  for (int mu = 1; mu <= cfg.mu_max; ++mu) mu_values.push_back(mu);
  const std::vector<double> eps_values = ParseNumberList(cfg.eps_set);
  const std::vector<double> delta_values =
      GridSpec::Parse(cfg.verify_delta_grid).Points();

  const VerifyReport report =
      VerifyClosedVsMilp(n_values, mu_values, eps_values, delta_values,
                         cfg.tol, cfg.perturb_closed_form);
  std::cout << "cells: " << report.cells << "  compared: " << report.compared
            << "  skipped (no closed form): " << report.skipped
            << "  mismatches: " << report.mismatches << "\n";
  for (const std::string& failure : report.failures) {
    std::cout << "MISMATCH " << failure << "\n";
  }
  return report.mismatches == 0 ? kExitOk : 1;
}

int RunCli(int argc, const char* const* argv) {
  CLI::App app{"Optimal modular additive noise mechanisms for discrete "
               "(eps, delta)-private queries"};
  app.require_subcommand(1);
  RunConfig cfg;

  const auto add_nbhd_flags = [&](CLI::App* cmd) {
    cmd->add_option("--n", cfg.n, "support bound; answers lie in [0..n]");
    cmd->add_option("--mode", cfg.mode, "sd | bd | arbitrary | vector");
    cmd->add_option("--mu", cfg.mu, "SD offset or BD bound");
    cmd->add_option("--offsets", cfg.offsets_text,
                    "offset list, e.g. 1,3 or 0,1;1,0 for vectors");
    cmd->add_option("--dims", cfg.dims, "query dimensions (vector mode)");
  };

  CLI::App* pmf = app.add_subcommand("pmf", "construct an optimal noise PMF");
  add_nbhd_flags(pmf);
  pmf->add_option("--eps", cfg.eps, "privacy budget eps")->required();
  pmf->add_option("--delta", cfg.delta, "privacy budget delta");
  pmf->add_option("--method", cfg.method, "closed | milp | auto");
  pmf->add_option("--out", cfg.out_path, "PMF CSV path or - for stdout");
  pmf->add_option("--summary", cfg.summary_path, "summary JSON path");
  pmf->add_option("--dump", cfg.dump_path, "write the MILP in text form");

  CLI::App* sweep = app.add_subcommand("sweep", "rho vs delta sweep");
  add_nbhd_flags(sweep);
  sweep->add_option("--eps", cfg.eps)->required();
  sweep->add_option("--delta-grid", cfg.delta_grid, "start:stop:step")
      ->required();
  sweep->add_option("--method", cfg.method);
  sweep->add_option("--out", cfg.out_path);
  sweep->add_option("--summary", cfg.summary_path);

  CLI::App* curve = app.add_subcommand("curve", "delta vs eps level curve");
  add_nbhd_flags(curve);
  curve->add_option("--rho", cfg.rho, "target error rate in (0, 0.5)")
      ->required();
  curve->add_option("--eps-grid", cfg.eps_grid, "start:stop:step")->required();
  curve->add_option("--method", cfg.method);
  curve->add_option("--out", cfg.out_path);
  curve->add_option("--summary", cfg.summary_path);

  CLI::App* compare =
      app.add_subcommand("compare", "baseline mechanism comparison");
  add_nbhd_flags(compare);
  compare->add_option("--match-er", cfg.match_er, "matched error rate");
  compare->add_option("--match-mse", cfg.match_mse, "matched MSE");
  compare->add_option("--eps-grid", cfg.eps_grid)->required();
  compare->add_option("--out", cfg.out_path);
  compare->add_option("--summary", cfg.summary_path);

  CLI::App* eval = app.add_subcommand("eval", "evaluate a PMF file");
  add_nbhd_flags(eval);
  eval->add_option("--pmf", cfg.pmf_path, "PMF CSV file")->required();
  eval->add_option("--eps", cfg.eps)->required();
  eval->add_option("--out", cfg.out_path);

  CLI::App* dataset =
      app.add_subcommand("dataset", "leave-one-out neighborhood extraction");
  dataset->add_option("--data", cfg.data_path, "numeric CSV, one record per line")
      ->required();
  dataset->add_option("--levels", cfg.levels, "quantization levels (n+1)");
  dataset->add_option("--aggregation", cfg.aggregation, "sum | mean");
  dataset->add_option("--out", cfg.out_path);

  CLI::App* verify =
      app.add_subcommand("verify", "closed form vs MILP oracle grid");
  verify->add_option("--n-min", cfg.n_min);
  verify->add_option("--n-max", cfg.n_max);
  verify->add_option("--mu-max", cfg.mu_max);
  verify->add_option("--eps-set", cfg.eps_set, "comma separated eps values");
  verify->add_option("--delta-grid", cfg.verify_delta_grid, "start:stop:step");
  verify->add_option("--tol", cfg.tol);
  verify->add_flag("--perturb-closed-form", cfg.perturb_closed_form)
      ->group("");  // hidden self-test hook

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitIoError;
  }

  try {
    if (pmf->parsed()) return CmdPmf(cfg);
    if (sweep->parsed()) return CmdSweep(cfg);
    if (curve->parsed()) return CmdCurve(cfg);
    if (compare->parsed()) return CmdCompare(cfg);
    if (eval->parsed()) return CmdEval(cfg);
    if (dataset->parsed()) return CmdDataset(cfg);
    if (verify->parsed()) return CmdVerify(cfg);
  } catch (const InfeasibleError& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const UnsupportedClosedFormError& e) {
    std::cerr << "unsupported closed form: " << e.what() << "\n";
    return kExitUnsupportedClosedForm;
  } catch (const IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return kExitIoError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid argument: " << e.what() << "\n";
    return kExitIoError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return kExitOk;
}

}  // namespace modnoise
