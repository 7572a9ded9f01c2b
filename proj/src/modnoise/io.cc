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

#include "modnoise/io.h"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>

#include "modnoise/errors.h"

namespace modnoise {
namespace {

constexpr double kReadMassTolerance = 1e-6;

std::vector<std::string> SplitCsvLine(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::stringstream stream(line);
  while (std::getline(stream, field, ',')) fields.push_back(field);
  return fields;
}

double ParseDouble(const std::string& text, const std::string& context) {
  try {
    size_t consumed = 0;
    const double value = std::stod(text, &consumed);
    while (consumed < text.size() && std::isspace(text[consumed])) ++consumed;
    if (consumed != text.size()) throw std::invalid_argument(text);
    return value;
  } catch (const std::exception&) {
    throw IoError(context + ": cannot parse number '" + text + "'");
  }
}

int ParseIndex(const std::string& text, const std::string& context) {
  const double value = ParseDouble(text, context);
  const int index = static_cast<int>(std::llround(value));
  if (std::abs(value - index) > 1e-9 || index < 0) {
    throw IoError(context + ": expected a nonnegative integer, got '" + text +
                  "'");
  }
  return index;
}

}  // namespace

void WritePmfCsv(std::ostream& out, const NoisePmf& pmf) {
  if (pmf.dims == 1) {
    out << "eta,mass\n";
  } else {
    for (int d = 1; d <= pmf.dims; ++d) out << "eta" << d << ",";
    out << "mass\n";
  }
  out << std::setprecision(17);
  for (int i = 0; i < pmf.size(); ++i) {
    const std::vector<int> tuple = UnflattenIndex(i, pmf.side(), pmf.dims);
    for (int coord : tuple) out << coord << ",";
    out << pmf.masses[i] << "\n";
  }
}

NoisePmf ReadPmfCsv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw IoError("pmf csv: empty file");
  const std::vector<std::string> header = SplitCsvLine(line);
  if (header.size() < 2 || header.back() != "mass") {
    throw IoError("pmf csv: expected header 'eta,...,mass'");
  }
  const int dims = static_cast<int>(header.size()) - 1;

  std::vector<std::pair<std::vector<int>, double>> entries;
  int max_coord = 0;
  int line_number = 1;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.empty()) continue;
    const std::vector<std::string> fields = SplitCsvLine(line);
    const std::string context = "pmf csv line " + std::to_string(line_number);
    if (static_cast<int>(fields.size()) != dims + 1) {
      throw IoError(context + ": expected " + std::to_string(dims + 1) +
                    " fields");
    }
    std::vector<int> tuple(dims);
    for (int d = 0; d < dims; ++d) {
      tuple[d] = ParseIndex(fields[d], context);
      max_coord = std::max(max_coord, tuple[d]);
    }
    entries.emplace_back(std::move(tuple), ParseDouble(fields[dims], context));
  }
  if (entries.empty()) throw IoError("pmf csv: no data rows");

  const int n = max_coord;
  const int side = n + 1;
  int support = 1;
  for (int d = 0; d < dims; ++d) support *= side;
  if (static_cast<int>(entries.size()) != support) {
    throw IoError("pmf csv: expected " + std::to_string(support) +
                  " rows for n = " + std::to_string(n) + ", dims = " +
                  std::to_string(dims));
  }
  std::vector<double> masses(support, -1.0);
  double sum = 0.0;
  for (const auto& [tuple, mass] : entries) {
    const int index = FlattenIndex(tuple, side);
    if (masses[index] >= 0.0) {
      throw IoError("pmf csv: duplicate support point");
    }
    if (mass < -kMassNegativeTolerance || mass > 1.0 + kReadMassTolerance) {
      throw IoError("pmf csv: mass outside [0,1]");
    }
    masses[index] = std::max(mass, 0.0);
    sum += masses[index];
  }
  if (std::abs(sum - 1.0) > kReadMassTolerance) {
    throw IoError("pmf csv: masses sum to " + std::to_string(sum) +
                  ", more than 1e-6 from 1");
  }
  for (double& mass : masses) mass /= sum;
  return MakePmf(n, dims, std::move(masses));
}

NoisePmf ReadPmfFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  return ReadPmfCsv(in);
}

void WritePmfFile(const std::string& path, const NoisePmf& pmf) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write '" + path + "'");
  WritePmfCsv(out, pmf);
}

void WriteCurveCsv(std::ostream& out, const std::vector<CurvePoint>& points) {
  out << "eps,delta\n" << std::setprecision(17);
  for (const CurvePoint& p : points) out << p.eps << "," << p.delta << "\n";
}

void WriteSweepCsv(std::ostream& out, const std::vector<SweepPoint>& points) {
  out << "delta,rho,f0\n" << std::setprecision(17);
  for (const SweepPoint& p : points) {
    out << p.delta << "," << p.rho << "," << p.f0 << "\n";
  }
}

void WriteCompareCsv(std::ostream& out, const std::vector<CompareRow>& rows) {
  out << "mechanism,eps,delta\n" << std::setprecision(17);
  for (const CompareRow& row : rows) {
    out << row.mechanism << "," << row.eps << "," << row.delta << "\n";
  }
}

GridSpec GridSpec::Parse(const std::string& text) {
  std::vector<std::string> parts;
  std::string part;
  std::stringstream stream(text);
  while (std::getline(stream, part, ':')) parts.push_back(part);
  if (parts.size() == 1) {
    const double value = ParseDouble(parts[0], "grid '" + text + "'");
    return {value, value, 1.0};
  }
  if (parts.size() != 3) {
    throw IoError("grid '" + text + "': expected start:stop:step");
  }
  GridSpec spec;
  spec.start = ParseDouble(parts[0], "grid start");
  spec.stop = ParseDouble(parts[1], "grid stop");
  spec.step = ParseDouble(parts[2], "grid step");
  if (!(spec.step > 0.0)) throw IoError("grid '" + text + "': step must be > 0");
  if (spec.stop < spec.start) {
    throw IoError("grid '" + text + "': stop before start");
  }
  return spec;
}

std::vector<double> GridSpec::Points() const {
  std::vector<double> points;
  const double slack = 1e-12 * std::max(1.0, std::abs(stop));
  for (int i = 0;; ++i) {
    const double value = start + i * step;
    if (value > stop + slack) break;
    points.push_back(std::min(value, stop));
  }
  return points;
}

std::vector<double> ReadNumericColumn(std::istream& in) {
  std::vector<double> values;
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    std::string trimmed = line;
    while (!trimmed.empty() &&
           std::isspace(static_cast<unsigned char>(trimmed.back()))) {
      trimmed.pop_back();
    }
    if (trimmed.empty()) continue;
    values.push_back(
        ParseDouble(trimmed, "data line " + std::to_string(line_number)));
  }
  if (values.empty()) throw IoError("data file: no records");
  return values;
}

std::vector<double> ReadNumericFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  return ReadNumericColumn(in);
}

}  // namespace modnoise
