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

#include "modnoise/privacy.h"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace modnoise {
namespace {

OffsetLeakage EvalOffset(const NoisePmf& pmf, double exp_eps,
                         const std::vector<int>& offset) {
  OffsetLeakage result;
  result.offset = offset;
  result.indicators.assign(pmf.size(), 0);
  double leakage = 0.0;
  for (int eta = 0; eta < pmf.size(); ++eta) {
    const int shifted = ShiftIndex(eta, offset, pmf.side(), pmf.dims);
    if (pmf.masses[eta] - exp_eps * pmf.masses[shifted] >
        kLeakageCompareTolerance) {
      result.indicators[eta] = 1;
      leakage += pmf.masses[eta];
    }
  }
  result.leakage = leakage;
  return result;
}

LeakageReport ReduceOffsets(std::vector<OffsetLeakage> per_offset) {
  LeakageReport report;
  report.per_offset = std::move(per_offset);
  for (const OffsetLeakage& entry : report.per_offset) {
    if (report.worst_offset.empty() || entry.leakage > report.delta_actual) {
      report.delta_actual = entry.leakage;
      report.worst_offset = entry.offset;
    }
  }
  return report;
}

template <bool kParallel>
LeakageReport PrivacyProfileImpl(const NoisePmf& pmf, double eps,
                                 const NeighborhoodSpec& nbhd) {
  ValidatePmf(pmf);
  nbhd.Validate(pmf.n, pmf.dims);
  if (eps <= 0.0) throw std::invalid_argument("privacy profile: eps <= 0");
  const double exp_eps = std::exp(eps);
  const std::vector<std::vector<int>> offsets = nbhd.OffsetTuples();
  std::vector<OffsetLeakage> per_offset(offsets.size());
  if constexpr (kParallel) {
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < static_cast<int>(offsets.size()); ++i) {
      per_offset[i] = EvalOffset(pmf, exp_eps, offsets[i]);
    }
  } else {
    for (int i = 0; i < static_cast<int>(offsets.size()); ++i) {
      per_offset[i] = EvalOffset(pmf, exp_eps, offsets[i]);
    }
  }
  return ReduceOffsets(std::move(per_offset));
}

struct ChannelPair {
  int q = 0;
  int q_prime = 0;
  int signed_offset = 0;
};

OffsetLeakage EvalPair(const QueryChannel& channel, double exp_eps,
                       const ChannelPair& pair) {
  const std::vector<double>& row_q = channel.rows[pair.q];
  const std::vector<double>& row_p = channel.rows[pair.q_prime];
  OffsetLeakage result;
  result.offset = {pair.signed_offset};
  result.indicators.assign(row_q.size(), 0);
  double leakage = 0.0;
  for (int k = 0; k < static_cast<int>(row_q.size()); ++k) {
    if (row_q[k] - exp_eps * row_p[k] > kLeakageCompareTolerance) {
      result.indicators[k] = 1;
      leakage += row_q[k];
    }
  }
  result.leakage = leakage;
  return result;
}

template <bool kParallel>
LeakageReport ChannelPrivacyProfileImpl(const QueryChannel& channel,
                                        double eps,
                                        const NeighborhoodSpec& nbhd) {
  ValidateChannel(channel);
  nbhd.Validate(channel.n, 1);
  if (eps <= 0.0) throw std::invalid_argument("privacy profile: eps <= 0");
  const double exp_eps = std::exp(eps);

  std::vector<ChannelPair> pairs;
  for (int mu : nbhd.ScalarOffsets()) {
    for (int sign : {+1, -1}) {
      const int diff = sign * mu;
      for (int q = 0; q <= channel.n; ++q) {
        const int q_prime = q - diff;
        if (q_prime < 0 || q_prime > channel.n) continue;
        pairs.push_back({q, q_prime, diff});
      }
    }
  }

  std::vector<OffsetLeakage> per_pair(pairs.size());
  if constexpr (kParallel) {
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < static_cast<int>(pairs.size()); ++i) {
      per_pair[i] = EvalPair(channel, exp_eps, pairs[i]);
    }
  } else {
    for (int i = 0; i < static_cast<int>(pairs.size()); ++i) {
      per_pair[i] = EvalPair(channel, exp_eps, pairs[i]);
    }
  }

  // Keep the worst pair per signed offset, scanning in pair order so the
  // report is deterministic.
  LeakageReport report;
  for (const OffsetLeakage& entry : per_pair) {
    OffsetLeakage* slot = nullptr;
    for (OffsetLeakage& existing : report.per_offset) {
      if (existing.offset == entry.offset) {
        slot = &existing;
        break;
      }
    }
    if (slot == nullptr) {
      report.per_offset.push_back(entry);
    } else if (entry.leakage > slot->leakage) {
      *slot = entry;
    }
  }
  for (const OffsetLeakage& entry : report.per_offset) {
    if (report.worst_offset.empty() || entry.leakage > report.delta_actual) {
      report.delta_actual = entry.leakage;
      report.worst_offset = entry.offset;
    }
  }
  return report;
}

}  // namespace

LeakageReport PrivacyProfile(const NoisePmf& pmf, double eps,
                             const NeighborhoodSpec& nbhd) {
  return PrivacyProfileImpl<true>(pmf, eps, nbhd);
}

LeakageReport PrivacyProfileSerial(const NoisePmf& pmf, double eps,
                                   const NeighborhoodSpec& nbhd) {
  return PrivacyProfileImpl<false>(pmf, eps, nbhd);
}

void ValidateChannel(const QueryChannel& channel) {
  if (channel.n < 0) throw std::invalid_argument("channel: n negative");
  if (static_cast<int>(channel.rows.size()) != channel.n + 1) {
    throw std::invalid_argument("channel: wrong row count");
  }
  for (const std::vector<double>& row : channel.rows) {
    if (static_cast<int>(row.size()) != channel.n + 1) {
      throw std::invalid_argument("channel: wrong row length");
    }
    double sum = 0.0;
    for (double mass : row) {
      if (mass < 0.0) throw std::invalid_argument("channel: negative mass");
      sum += mass;
    }
    if (std::abs(sum - 1.0) > kMassSumTolerance) {
      throw std::invalid_argument("channel: row does not sum to 1");
    }
  }
}

QueryChannel ModularChannel(const NoisePmf& pmf) {
  ValidatePmf(pmf);
  if (pmf.dims != 1) {
    throw std::invalid_argument("modular channel: scalar PMFs only");
  }
  QueryChannel channel;
  channel.n = pmf.n;
  channel.rows.resize(pmf.n + 1);
  for (int q = 0; q <= pmf.n; ++q) {
    channel.rows[q].resize(pmf.n + 1);
    for (int k = 0; k <= pmf.n; ++k) {
      channel.rows[q][k] = pmf.masses[(k - q + pmf.side()) % pmf.side()];
    }
  }
  return channel;
}

LeakageReport ChannelPrivacyProfile(const QueryChannel& channel, double eps,
                                    const NeighborhoodSpec& nbhd) {
  return ChannelPrivacyProfileImpl<true>(channel, eps, nbhd);
}

LeakageReport ChannelPrivacyProfileSerial(const QueryChannel& channel,
                                          double eps,
                                          const NeighborhoodSpec& nbhd) {
  return ChannelPrivacyProfileImpl<false>(channel, eps, nbhd);
}

}  // namespace modnoise
