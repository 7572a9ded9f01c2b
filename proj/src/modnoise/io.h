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

#ifndef MODNOISE_IO_H_
#define MODNOISE_IO_H_

#include <iosfwd>
#include <string>
#include <vector>

#include "modnoise/mechanisms.h"
#include "modnoise/pmf.h"

namespace modnoise {

// PMF CSV: header `eta,mass` for scalars, `eta1,...,etaD,mass` for
// vectors; masses printed with 17 significant digits so a round trip is
// bit exact.
void WritePmfCsv(std::ostream& out, const NoisePmf& pmf);

// Throws IoError on malformed input, missing support points, or a mass
// sum off by more than 1e-6; smaller deviations are renormalized away.
NoisePmf ReadPmfCsv(std::istream& in);

NoisePmf ReadPmfFile(const std::string& path);
void WritePmfFile(const std::string& path, const NoisePmf& pmf);

struct CurvePoint {
  double eps = 0.0;
  double delta = 0.0;
};
void WriteCurveCsv(std::ostream& out, const std::vector<CurvePoint>& points);

struct SweepPoint {
  double delta = 0.0;
  double rho = 0.0;
  double f0 = 0.0;
};
void WriteSweepCsv(std::ostream& out, const std::vector<SweepPoint>& points);

void WriteCompareCsv(std::ostream& out, const std::vector<CompareRow>& rows);

// Inclusive numeric grid `start:stop:step`; the stop point is included
// when it lands on the lattice within 1e-12.
struct GridSpec {
  double start = 0.0;
  double stop = 0.0;
  double step = 1.0;

  static GridSpec Parse(const std::string& text);
  std::vector<double> Points() const;
};

// Values each record of a single-column numeric CSV (no header).
std::vector<double> ReadNumericColumn(std::istream& in);
std::vector<double> ReadNumericFile(const std::string& path);

}  // namespace modnoise

#endif  // MODNOISE_IO_H_
