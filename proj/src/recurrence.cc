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

#include "growthlab/recurrence.h"

#include <algorithm>

namespace growthlab {

Nat arithmetic_increment(std::uint64_t start, std::uint64_t x) {
  if (x < start) throw std::invalid_argument("arithmetic_increment: x < start");
  Nat span = Nat(static_cast<unsigned long>(x - start));
  Nat total = Nat(static_cast<unsigned long>(x)) +
              Nat(static_cast<unsigned long>(start)) + 3;
  return span * total / 2;
}

Nat d_product(std::span<const std::uint64_t> d) {
  Nat p = 1;
  for (auto v : d) p *= Nat(static_cast<unsigned long>(v));
  return p;
}

RationalPow2 geometric_ratio(std::span<const std::uint64_t> d) {
  return RationalPow2(Int(1), 2 * d_product(d));
}

Nat GeometricStepper::step(const Nat& previous) {
  const unsigned long needed = bit_length(previous) + 32;
  if (!approx_ || approx_->precision() < needed) {
    const unsigned long p =
        approx_ ? std::max(needed, 2 * approx_->precision()) : needed + 64;
    approx_.emplace(ratio_, p);
  }
  if (auto v = approx_->try_floor_mul(previous)) return *v;
  return floor_mul_pow2(previous, ratio_);
}

}  // namespace growthlab
