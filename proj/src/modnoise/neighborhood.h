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

#ifndef MODNOISE_NEIGHBORHOOD_H_
#define MODNOISE_NEIGHBORHOOD_H_

#include <vector>

namespace modnoise {

// Set of query offsets mu = Q(X) - Q(X') induced by neighboring
// datasets. Scalar kinds keep offsets in [1..n]; the vector kind keeps
// tuples in [0..n]^dims excluding the all-zero tuple.
struct NeighborhoodSpec {
  enum class Kind {
    kSingleDistance,
    kBoundedDifference,
    kArbitrary,
    kVectorArbitrary,
  };

  Kind kind = Kind::kSingleDistance;
  int mu = 1;                                   // SD mu_hat / BD mu_bar
  std::vector<int> offsets;                     // arbitrary scalar offsets
  std::vector<std::vector<int>> vector_offsets; // vector offsets
  int dims = 1;

  static NeighborhoodSpec SingleDistance(int mu_hat);
  static NeighborhoodSpec BoundedDifference(int mu_bar);
  static NeighborhoodSpec Arbitrary(std::vector<int> offsets);
  static NeighborhoodSpec VectorArbitrary(
      std::vector<std::vector<int>> offsets);

  // Distinct offsets as tuples (sorted, deduplicated); scalar kinds
  // yield one-element tuples, BD(mu_bar) expands to {1,...,mu_bar}.
  std::vector<std::vector<int>> OffsetTuples() const;
  std::vector<int> ScalarOffsets() const;

  // Throws std::invalid_argument unless every offset is admissible for
  // support [0..n]^dims.
  void Validate(int n, int pmf_dims) const;
};

// Supremum of the scalar offset set; BD(sup) is a feasible surrogate
// neighborhood for the original spec.
int BoundedDifferenceCover(const NeighborhoodSpec& nbhd);

}  // namespace modnoise

#endif  // MODNOISE_NEIGHBORHOOD_H_
