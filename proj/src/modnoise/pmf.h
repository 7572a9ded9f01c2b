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

#ifndef MODNOISE_PMF_H_
#define MODNOISE_PMF_H_

#include <cstdint>
#include <vector>

namespace modnoise {

// Mass-sum and nonnegativity tolerances shared by every PMF producer.
inline constexpr double kMassSumTolerance = 1e-9;
inline constexpr double kMassNegativeTolerance = 1e-12;
// Tolerance used for the strict comparison f(eta) > e^eps * f(eta + mu).
inline constexpr double kLeakageCompareTolerance = 1e-9;

// Noise distribution over the modular support [0..n]^dims, stored
// row-major for dims > 1.
struct NoisePmf {
  int n = 0;
  int dims = 1;
  std::vector<double> masses;

  int side() const { return n + 1; }
  int size() const { return static_cast<int>(masses.size()); }
};

// Clamps masses in [-1e-12, 0) to zero and checks that the result is a
// distribution over (n+1)^dims points. Throws std::invalid_argument.
NoisePmf MakePmf(int n, int dims, std::vector<double> masses);

inline NoisePmf MakeScalarPmf(int n, std::vector<double> masses) {
  return MakePmf(n, 1, std::move(masses));
}

// Throws std::invalid_argument when the PMF violates its invariants.
void ValidatePmf(const NoisePmf& pmf);

NoisePmf UniformPmf(int n, int dims = 1);
NoisePmf PointMassPmf(int n, int dims = 1);

// Row-major index of a support tuple and its inverse.
int FlattenIndex(const std::vector<int>& tuple, int side);
std::vector<int> UnflattenIndex(int index, int side, int dims);

// Index of the support point reached from `index` by adding `offset`
// coordinate-wise modulo n+1.
int ShiftIndex(int index, const std::vector<int>& offset, int side, int dims);

// Returns the PMF g with g(eta) = f((eta + offset) mod (n+1)) applied
// coordinate-wise; mass preserving.
NoisePmf CircularShift(const NoisePmf& pmf, const std::vector<int>& offset);

// Pr(published != true answer) = 1 - f(0,...,0).
double ErrorRate(const NoisePmf& pmf);

// Sum over eta of eta^2 f(eta); scalar PMFs only, no wraparound
// distance. Throws std::invalid_argument for dims > 1.
double MeanSquaredError(const NoisePmf& pmf);

// Samples eta by inverse CDF in ascending support order from a seeded
// mt19937_64 and returns (q + eta) mod (n+1) per coordinate. Output is
// bit-reproducible for a fixed seed.
std::vector<int> Publish(const std::vector<int>& q, const NoisePmf& pmf,
                         std::uint64_t rng_seed);
int PublishScalar(int q, const NoisePmf& pmf, std::uint64_t rng_seed);

}  // namespace modnoise

#endif  // MODNOISE_PMF_H_
