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

#include "modnoise/neighborhood.h"

#include <algorithm>
#include <stdexcept>

namespace modnoise {

NeighborhoodSpec NeighborhoodSpec::SingleDistance(int mu_hat) {
  NeighborhoodSpec spec;
  spec.kind = Kind::kSingleDistance;
  spec.mu = mu_hat;
  return spec;
}

NeighborhoodSpec NeighborhoodSpec::BoundedDifference(int mu_bar) {
  NeighborhoodSpec spec;
  spec.kind = Kind::kBoundedDifference;
  spec.mu = mu_bar;
  return spec;
}

NeighborhoodSpec NeighborhoodSpec::Arbitrary(std::vector<int> offsets) {
  NeighborhoodSpec spec;
  spec.kind = Kind::kArbitrary;
  spec.offsets = std::move(offsets);
  return spec;
}

NeighborhoodSpec NeighborhoodSpec::VectorArbitrary(
    std::vector<std::vector<int>> offsets) {
  NeighborhoodSpec spec;
  spec.kind = Kind::kVectorArbitrary;
  spec.vector_offsets = std::move(offsets);
  spec.dims = spec.vector_offsets.empty()
                  ? 1
                  : static_cast<int>(spec.vector_offsets.front().size());
  return spec;
}

std::vector<std::vector<int>> NeighborhoodSpec::OffsetTuples() const {
  std::vector<std::vector<int>> tuples;
  switch (kind) {
    case Kind::kSingleDistance:
      tuples.push_back({mu});
      break;
    case Kind::kBoundedDifference:
      for (int m = 1; m <= mu; ++m) tuples.push_back({m});
      break;
    case Kind::kArbitrary:
      for (int m : offsets) tuples.push_back({m});
      break;
    case Kind::kVectorArbitrary:
      tuples = vector_offsets;
      break;
  }
  std::sort(tuples.begin(), tuples.end());
  tuples.erase(std::unique(tuples.begin(), tuples.end()), tuples.end());
  return tuples;
}

std::vector<int> NeighborhoodSpec::ScalarOffsets() const {
  if (kind == Kind::kVectorArbitrary) {
    throw std::invalid_argument("neighborhood: scalar offsets requested "
                                "from a vector neighborhood");
  }
  std::vector<int> scalars;
  for (const auto& tuple : OffsetTuples()) scalars.push_back(tuple[0]);
  return scalars;
}

void NeighborhoodSpec::Validate(int n, int pmf_dims) const {
  if (kind == Kind::kVectorArbitrary) {
    if (dims != pmf_dims) {
      throw std::invalid_argument("neighborhood: dims mismatch");
    }
    if (vector_offsets.empty()) {
      throw std::invalid_argument("neighborhood: empty offset set");
    }
    for (const auto& tuple : vector_offsets) {
      if (static_cast<int>(tuple.size()) != dims) {
        throw std::invalid_argument("neighborhood: ragged offset tuple");
      }
      bool all_zero = true;
      for (int coord : tuple) {
        if (coord < 0 || coord > n) {
          throw std::invalid_argument("neighborhood: offset out of [0..n]");
        }
        if (coord != 0) all_zero = false;
      }
      if (all_zero) {
        throw std::invalid_argument("neighborhood: all-zero vector offset");
      }
    }
    return;
  }
  if (pmf_dims != 1) {
    throw std::invalid_argument("neighborhood: scalar spec with dims > 1");
  }
  const std::vector<int> scalars = ScalarOffsets();
  if (scalars.empty()) {
    throw std::invalid_argument("neighborhood: empty offset set");
  }
  for (int m : scalars) {
    if (m < 1 || m > n) {
      throw std::invalid_argument("neighborhood: scalar offset out of [1..n]");
    }
  }
}

int BoundedDifferenceCover(const NeighborhoodSpec& nbhd) {
  const std::vector<int> scalars = nbhd.ScalarOffsets();
  if (scalars.empty()) {
    throw std::invalid_argument("neighborhood: empty offset set");
  }
  return *std::max_element(scalars.begin(), scalars.end());
}

}  // namespace modnoise
