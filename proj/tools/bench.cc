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
//
// Compares the OpenMP kernels against their serial reference
// implementations and reports wall-clock timings.

#include <omp.h>

#include <cmath>
#include <cstdio>
#include <random>
#include <vector>

#include "modnoise/closed_form.h"
#include "modnoise/neighborhood.h"
#include "modnoise/pmf.h"
#include "modnoise/privacy.h"
#include "modnoise/problems.h"

namespace {

using namespace modnoise;

NoisePmf RandomPmf(int n, std::mt19937_64& rng) {
  std::vector<double> masses(n + 1);
  double sum = 0.0;
  for (double& m : masses) {
    m = static_cast<double>(rng() >> 11) * 0x1.0p-53 + 1e-6;
    sum += m;
  }
  for (double& m : masses) m /= sum;
  return MakeScalarPmf(n, std::move(masses));
}

template <typename Fn>
double TimeIt(int repeats, const Fn& fn) {
  const double start = omp_get_wtime();
  for (int i = 0; i < repeats; ++i) fn();
  return (omp_get_wtime() - start) / repeats;
}

void Report(const char* name, double serial_s, double parallel_s) {
  std::printf("%-28s serial %9.3f ms   openmp %9.3f ms   speedup %.2fx\n",
              name, serial_s * 1e3, parallel_s * 1e3, serial_s / parallel_s);
}

void BenchProfile() {
  std::mt19937_64 rng(7);
  const int n = 4095;
  const NoisePmf pmf = RandomPmf(n, rng);
  const NeighborhoodSpec nbhd = NeighborhoodSpec::BoundedDifference(n / 2);
  const double eps = 1.0;

  volatile double sink = 0.0;
  const double serial = TimeIt(3, [&] {
    sink = PrivacyProfileSerial(pmf, eps, nbhd).delta_actual;
  });
  const double parallel = TimeIt(3, [&] {
    sink = PrivacyProfile(pmf, eps, nbhd).delta_actual;
  });
  (void)sink;
  Report("privacy_profile n=4095", serial, parallel);
}

void BenchChannelProfile() {
  std::mt19937_64 rng(11);
  const int n = 255;
  const NoisePmf pmf = RandomPmf(n, rng);
  const QueryChannel channel = ModularChannel(pmf);
  const NeighborhoodSpec nbhd = NeighborhoodSpec::BoundedDifference(n / 4);

  volatile double sink = 0.0;
  const double serial = TimeIt(3, [&] {
    sink = ChannelPrivacyProfileSerial(channel, 1.0, nbhd).delta_actual;
  });
  const double parallel = TimeIt(3, [&] {
    sink = ChannelPrivacyProfile(channel, 1.0, nbhd).delta_actual;
  });
  (void)sink;
  Report("channel_profile n=255", serial, parallel);
}

void BenchMilpGrid() {
  const NeighborhoodSpec nbhd = NeighborhoodSpec::BoundedDifference(3);
  std::vector<double> deltas;
  for (int i = 0; i < 16; ++i) deltas.push_back(0.01 * i);

  volatile double sink = 0.0;
  const double serial = TimeIt(1, [&] {
    double total = 0.0;
    for (double delta : deltas) {
      total += ErrorRate(SolveOptimalPmf(8, 1, nbhd, 1.5, delta).pmf);
    }
    sink = total;
  });
  const double parallel = TimeIt(1, [&] {
    std::vector<double> rho(deltas.size());
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < static_cast<int>(deltas.size()); ++i) {
      rho[i] = ErrorRate(SolveOptimalPmf(8, 1, nbhd, 1.5, deltas[i]).pmf);
    }
    double total = 0.0;
    for (double r : rho) total += r;
    sink = total;
  });
  (void)sink;
  Report("milp_sweep 16 points", serial, parallel);
}

}  // namespace

int main() {
  std::printf("threads: %d\n", omp_get_max_threads());
  BenchProfile();
  BenchChannelProfile();
  BenchMilpGrid();
  return 0;
}
