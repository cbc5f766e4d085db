// Copyright 2026 The growthlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// The three segment rules of the constructed function, shared by the
// schedule search (which needs f at segment boundaries) and the table builder.

#ifndef GROWTHLAB_RECURRENCE_H_
#define GROWTHLAB_RECURRENCE_H_

#include <cstdint>
#include <optional>
#include <span>

#include "growthlab/exact.h"

namespace growthlab {

// sum_{y=start+1}^{x} (y + 1) = (x - start)(x + start + 3) / 2.
Nat arithmetic_increment(std::uint64_t start, std::uint64_t x);

// d_1 * ... * d_k.
Nat d_product(std::span<const std::uint64_t> d);

// 2^(1 / (2 d_1 ... d_k)).
RationalPow2 geometric_ratio(std::span<const std::uint64_t> d);

// Applies x -> floor(c * x) repeatedly, keeping one enclosure of c and
// refining it only when the operand outgrows it. Not thread-safe.
class GeometricStepper {
 public:
  explicit GeometricStepper(RationalPow2 ratio) : ratio_(std::move(ratio)) {}

  const RationalPow2& ratio() const { return ratio_; }
  Nat step(const Nat& previous);

 private:
  RationalPow2 ratio_;
  std::optional<Pow2Approximation> approx_;
};

}  // namespace growthlab

#endif  // GROWTHLAB_RECURRENCE_H_
