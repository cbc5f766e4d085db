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

// The constructed function f over [1, N]: 2^x up to n_1, then per block k an
// arithmetic segment f(x) = f(x-1) + x + 1 up to d_k n_k and a geometric
// segment f(x) = floor(2^(1/(2 d_1..d_k)) f(x-1)) up to n_{k+1}.
//
// Tables are dense while they fit the memory budget. Otherwise only
// checkpoints are kept and geometric values are recomputed on demand from the
// nearest one.

#ifndef GROWTHLAB_GROWTHFN_H_
#define GROWTHLAB_GROWTHFN_H_

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "growthlab/exact.h"
#include "growthlab/schedule.h"

namespace growthlab {

enum class SegmentKind { kSeed, kArithmetic, kGeometric };

struct Segment {
  SegmentKind kind = SegmentKind::kSeed;
  std::uint64_t k = 0;  // 0 for the seed
  std::uint64_t lo = 1;
  std::uint64_t hi = 1;
  RationalPow2 ratio;   // geometric only

  // "seed", "arith:k" or "geom:k".
  std::string name() const;
};

class OutOfRange : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

class ScheduleInvalid : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A construction invariant failed while building.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct BuildOptions {
  // Bytes of dense storage allowed before switching to checkpoints only.
  std::uint64_t memory_budget = default_memory_budget();
  std::uint64_t checkpoint_every = 4096;
  // Every stride-th geometric step is recomputed by the integer-root route.
  std::uint64_t cross_check_stride = 64;

  // GROWTHLAB_MEM_BUDGET if set, else 1 GiB.
  static std::uint64_t default_memory_budget();
};

// max(2 d_K n_K, 4 (n_K + 1)); 16 for an empty schedule.
std::uint64_t default_horizon(const Schedule& schedule);

class GrowthTable {
 public:
  // Throws ScheduleInvalid for a certified-mode schedule whose ledger fails,
  // InvariantViolation when the build breaks a construction invariant.
  static GrowthTable build(const Schedule& schedule, std::uint64_t horizon,
                           const BuildOptions& options = {});

  const Schedule& schedule() const { return schedule_; }
  std::uint64_t horizon() const { return horizon_; }
  bool dense() const { return !values_.empty() || horizon_ == 0; }
  const std::vector<Segment>& segments() const { return segments_; }
  const Segment& segment_at(std::uint64_t x) const;

  // f(x) for 1 <= x <= horizon, else OutOfRange.
  Nat value_at(std::uint64_t x) const;
  // Calls visit(x, f(x)) for x = lo..hi in order; sequential in windowed mode.
  void scan(std::uint64_t lo, std::uint64_t hi,
            const std::function<void(std::uint64_t, const Nat&)>& visit) const;
  // f(1..N); empty unless dense.
  std::span<const Nat> values() const { return values_; }

  // Segment boundaries and periodic geometric checkpoints.
  const std::map<std::uint64_t, Nat>& checkpoints() const { return checkpoints_; }

  // f(d_1 n_1) - f(n_1).
  Nat alpha1() const;
  // f(d_{k-1} n_{k-1}) for k >= 2.
  Nat beta(std::uint64_t k) const;

  // Invariant failures tolerated on demo schedules.
  const std::vector<std::string>& warnings() const { return warnings_; }

 private:
  GrowthTable() = default;

  Schedule schedule_;
  std::uint64_t horizon_ = 0;
  std::vector<Segment> segments_;
  std::vector<Nat> values_;
  std::map<std::uint64_t, Nat> checkpoints_;
  std::vector<std::string> warnings_;
};

struct BoundFailure {
  std::uint64_t x = 0;
  RationalPow2 exponent;  // the compared bound, f(x) vs 2^exponent
  Nat value;
};

struct BoundReport {
  std::uint64_t lo = 0;
  std::uint64_t hi = 0;
  std::uint64_t checked = 0;
  std::uint64_t failed = 0;
  std::vector<BoundFailure> failures;  // the first few, ascending x
  bool passed() const { return failed == 0; }
};

// Exponent of the lower bound applying at x: x/(2 d_1..d_k) + 1 + 2^(-k-1)
// for x <= d_k n_k with k minimal, and x/(2 d_1..d_k) + 1 + 2^(-k-2) on the
// geometric segment after d_k n_k.
RationalPow2 lower_bound_exponent(const Schedule& schedule, std::uint64_t x);

// f(x) >= 2^lower_bound_exponent(x) for every x in [lo, hi].
BoundReport verify_lower_bound(const GrowthTable& table, std::uint64_t lo,
                               std::uint64_t hi);

// f(x) >= f(d_k n_k) 2^((x - d_k n_k)/(2 d_1..d_k) - 2^(-k-2)) for every built
// x on the geometric segment of block k, boundary included. The exponent
// field of a failure holds the bound relative to f(d_k n_k).
BoundReport verify_condition_I(const GrowthTable& table, std::uint64_t k);

}  // namespace growthlab

#endif  // GROWTHLAB_GROWTHFN_H_
