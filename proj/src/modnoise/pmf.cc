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

#include "modnoise/pmf.h"

#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

namespace modnoise {
namespace {

int PowInt(int base, int exp) {
  int result = 1;
  for (int i = 0; i < exp; ++i) result *= base;
  return result;
}

}  // namespace

NoisePmf MakePmf(int n, int dims, std::vector<double> masses) {
  NoisePmf pmf;
  pmf.n = n;
  pmf.dims = dims;
  pmf.masses = std::move(masses);
  for (double& m : pmf.masses) {
    if (m < 0.0 && m >= -kMassNegativeTolerance) m = 0.0;
  }
  ValidatePmf(pmf);
  return pmf;
}

void ValidatePmf(const NoisePmf& pmf) {
  if (pmf.n < 0) throw std::invalid_argument("pmf: n must be nonnegative");
  if (pmf.dims < 1) throw std::invalid_argument("pmf: dims must be >= 1");
  const int expected = PowInt(pmf.n + 1, pmf.dims);
  if (pmf.size() != expected) {
    throw std::invalid_argument("pmf: support size " +
                                std::to_string(pmf.size()) + " != (n+1)^dims " +
                                std::to_string(expected));
  }
  double sum = 0.0;
  for (double m : pmf.masses) {
    if (m < 0.0 || m > 1.0) {
      throw std::invalid_argument("pmf: mass outside [0,1]");
    }
    sum += m;
  }
  if (std::abs(sum - 1.0) > kMassSumTolerance) {
    throw std::invalid_argument("pmf: masses sum to " + std::to_string(sum));
  }
}

NoisePmf UniformPmf(int n, int dims) {
  const int size = PowInt(n + 1, dims);
  return MakePmf(n, dims, std::vector<double>(size, 1.0 / size));
}

NoisePmf PointMassPmf(int n, int dims) {
  const int size = PowInt(n + 1, dims);
  std::vector<double> masses(size, 0.0);
  masses[0] = 1.0;
  return MakePmf(n, dims, std::move(masses));
}

int FlattenIndex(const std::vector<int>& tuple, int side) {
  int index = 0;
  for (int coord : tuple) index = index * side + coord;
  return index;
}

std::vector<int> UnflattenIndex(int index, int side, int dims) {
  std::vector<int> tuple(dims);
  for (int d = dims - 1; d >= 0; --d) {
    tuple[d] = index % side;
    index /= side;
  }
  return tuple;
}

int ShiftIndex(int index, const std::vector<int>& offset, int side, int dims) {
  int result = 0;
  int scale = 1;
  for (int d = dims - 1; d >= 0; --d) {
    const int coord = index % side;
    index /= side;
    result += ((coord + offset[d]) % side) * scale;
    scale *= side;
  }
  return result;
}

NoisePmf CircularShift(const NoisePmf& pmf, const std::vector<int>& offset) {
  if (static_cast<int>(offset.size()) != pmf.dims) {
    throw std::invalid_argument("circular shift: offset dims mismatch");
  }
  NoisePmf shifted = pmf;
  for (int i = 0; i < pmf.size(); ++i) {
    shifted.masses[i] =
        pmf.masses[ShiftIndex(i, offset, pmf.side(), pmf.dims)];
  }
  return shifted;
}

double ErrorRate(const NoisePmf& pmf) {
  ValidatePmf(pmf);
  return 1.0 - pmf.masses[0];
}

double MeanSquaredError(const NoisePmf& pmf) {
  ValidatePmf(pmf);
  if (pmf.dims != 1) {
    throw std::invalid_argument("mse: defined for scalar PMFs only");
  }
  double mse = 0.0;
  for (int eta = 1; eta <= pmf.n; ++eta) {
    mse += static_cast<double>(eta) * eta * pmf.masses[eta];
  }
  return mse;
}

std::vector<int> Publish(const std::vector<int>& q, const NoisePmf& pmf,
                         std::uint64_t rng_seed) {
  ValidatePmf(pmf);
  if (static_cast<int>(q.size()) != pmf.dims) {
    throw std::invalid_argument("publish: query dims mismatch");
  }
  for (int coord : q) {
    if (coord < 0 || coord > pmf.n) {
      throw std::invalid_argument("publish: query value out of [0..n]");
    }
  }
  std::mt19937_64 rng(rng_seed);
  // 53-bit uniform in [0,1); avoids std::uniform_real_distribution, whose
  // output is not pinned down by the standard.
  const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  int index = pmf.size() - 1;
  double cumulative = 0.0;
  for (int i = 0; i < pmf.size(); ++i) {
    cumulative += pmf.masses[i];
    if (u < cumulative) {
      index = i;
      break;
    }
  }
  const std::vector<int> eta = UnflattenIndex(index, pmf.side(), pmf.dims);
  std::vector<int> published(pmf.dims);
  for (int d = 0; d < pmf.dims; ++d) {
    published[d] = (q[d] + eta[d]) % pmf.side();
  }
  return published;
}

int PublishScalar(int q, const NoisePmf& pmf, std::uint64_t rng_seed) {
  return Publish({q}, pmf, rng_seed)[0];
}

}  // namespace modnoise
