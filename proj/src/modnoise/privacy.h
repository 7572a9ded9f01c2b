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

#ifndef MODNOISE_PRIVACY_H_
#define MODNOISE_PRIVACY_H_

#include <cstdint>
#include <vector>

#include "modnoise/neighborhood.h"
#include "modnoise/pmf.h"

namespace modnoise {

// Leakage of one offset: the indicator vector u_mu over the support and
// the probability mass it captures.
struct OffsetLeakage {
  std::vector<int> offset;
  double leakage = 0.0;
  std::vector<std::uint8_t> indicators;
};

struct LeakageReport {
  double delta_actual = 0.0;
  std::vector<int> worst_offset;
  std::vector<OffsetLeakage> per_offset;
};

// Smallest delta for which the mechanism is (eps, delta)-DP under the
// given neighborhood: per offset mu computes
//   u_mu(eta) = 1  iff  f(eta) > e^eps f(eta + mu mod n+1) + 1e-9
// and leakage_mu = sum_eta u_mu(eta) f(eta); delta_actual is the max
// over offsets. The parallel kernel splits work across offsets; each
// offset is summed serially so results are identical to the serial
// reference bit for bit.
LeakageReport PrivacyProfile(const NoisePmf& pmf, double eps,
                             const NeighborhoodSpec& nbhd);
LeakageReport PrivacyProfileSerial(const NoisePmf& pmf, double eps,
                                   const NeighborhoodSpec& nbhd);

// Conditional distribution of the published value for each true query
// value; the general container for mechanisms that are not shift
// invariant (clamping).
struct QueryChannel {
  int n = 0;
  std::vector<std::vector<double>> rows;  // rows[q][k] = f(k | q)
};

void ValidateChannel(const QueryChannel& channel);

// Channel whose row q is the circular shift of the noise PMF by q.
QueryChannel ModularChannel(const NoisePmf& pmf);

// Pair-based privacy profile for channels: the sup runs over ordered
// pairs (q, q') with q - q' in +-offsets, both in [0..n]. A ratio with
// zero denominator and numerator above tolerance counts as violation.
// The report's per_offset entries are keyed by the signed offset q - q'
// and carry the worst pair's indicator vector.
LeakageReport ChannelPrivacyProfile(const QueryChannel& channel, double eps,
                                    const NeighborhoodSpec& nbhd);
LeakageReport ChannelPrivacyProfileSerial(const QueryChannel& channel,
                                          double eps,
                                          const NeighborhoodSpec& nbhd);

}  // namespace modnoise

#endif  // MODNOISE_PRIVACY_H_
