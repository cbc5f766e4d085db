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

// Property checks over integer sequences and the non-equivalence witness.
//
// Every check reports the lexicographically first violation it finds, so
// results do not depend on how the work is split across threads.

#ifndef GROWTHLAB_VERIFY_H_
#define GROWTHLAB_VERIFY_H_

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "growthlab/exact.h"
#include "growthlab/growthfn.h"
#include "growthlab/omega.h"

namespace growthlab {

// Read-only a(first..last).
class SeqView {
 public:
  using Accessor = std::function<Nat(std::uint64_t)>;

  // values[i] = a(first + i); the storage must outlive the view.
  SeqView(std::span<const Nat> values, std::uint64_t first);
  // Takes ownership.
  SeqView(std::vector<Nat> values, std::uint64_t first);
  SeqView(std::uint64_t first, std::uint64_t last, Accessor accessor);

  // f(1..min(upto, horizon)); windowed tables are materialized by a scan.
  static SeqView of(const GrowthTable& table,
                    std::optional<std::uint64_t> upto = std::nullopt);

  std::uint64_t first() const { return first_; }
  std::uint64_t last() const { return last_; }
  // OutOfRange outside [first, last].
  Nat at(std::uint64_t x) const;
  // Non-null when values are held contiguously.
  const Nat* data() const { return data_; }

 private:
  std::shared_ptr<const std::vector<Nat>> owned_;
  const Nat* data_ = nullptr;
  Accessor accessor_;
  std::uint64_t first_ = 0;
  std::uint64_t last_ = 0;
};

// First x in [lo, hi) with a(x) >= a(x + 1).
std::optional<std::uint64_t> check_increasing(const SeqView& seq,
                                              std::uint64_t lo,
                                              std::uint64_t hi);

enum class SubmulStrategy { kExhaustive, kSampled, kBoundary };
std::string to_string(SubmulStrategy s);
SubmulStrategy parse_strategy(const std::string& text);

struct SubmulOptions {
  SubmulStrategy strategy = SubmulStrategy::kExhaustive;
  std::uint64_t pair_budget_n = 20000;  // exhaustive needs N <= this
  std::uint64_t samples = 100000;
  std::uint64_t seed = 1;
  std::uint64_t window = 64;
  std::vector<std::uint64_t> boundaries;  // n_k and d_k n_k
  unsigned threads = 1;
};

struct PairViolation {
  std::uint64_t p = 0;
  std::uint64_t q = 0;
  Nat lhs;  // a(p + q)
  Nat rhs;  // a(p) a(q)
};

struct SubmulReport {
  SubmulStrategy strategy = SubmulStrategy::kExhaustive;
  std::uint64_t n = 0;
  std::uint64_t pairs_checked = 0;
  std::uint64_t exact_multiplies = 0;
  std::uint64_t seed = 0;  // sampled only
  std::optional<PairViolation> violation;
  bool passed() const { return !violation; }
};

class PairBudgetExceeded : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// a(p + q) <= a(p) a(q) over pairs 1 <= p <= q, p + q <= N chosen by the
// strategy. Bit lengths decide most pairs; the rest are multiplied out.
SubmulReport check_submultiplicative(const SeqView& seq, std::uint64_t n,
                                     const SubmulOptions& options = {});

struct DerivativeViolation {
  std::uint64_t n = 0;
  std::uint64_t m = 0;
  unsigned long d = 0;
  Int lhs;  // a'(m)
  Int rhs;  // a'(n)^d
};

struct DerivativeReport {
  unsigned long d = 0;
  std::uint64_t big_n = 0;
  std::uint64_t pairs_checked = 0;
  std::optional<DerivativeViolation> violation;
  bool passed() const { return !violation; }
};

// a'(m) <= a'(n)^d for all first < n <= m <= d n <= N, a'(x) = a(x) - a(x-1).
DerivativeReport check_derivative_condition(const SeqView& seq, unsigned long d,
                                            std::uint64_t big_n);

struct P2Result {
  Nat lhs;  // a(2CDn) - a(2CDn - C)
  Nat rhs;  // 2 D^2 n (a(CDn) - a(Cn - C))^(2D)
  bool holds = false;
};

// Requires C n - C >= 1 (std::invalid_argument); OutOfRange past the view.
P2Result evaluate_p2(const SeqView& seq, std::uint64_t c, std::uint64_t d,
                     std::uint64_t n);

struct Witness {
  std::uint64_t c = 0;
  std::uint64_t d = 0;
  std::uint64_t n = 0;
  std::uint64_t k = 0;
  Nat lhs;
  Nat rhs;
};

class UncertifiedSchedule : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class RecipeRangeViolated : public std::runtime_error {
 public:
  RecipeRangeViolated(const std::string& what, std::string constraint)
      : std::runtime_error(what), constraint_(std::move(constraint)) {}
  const std::string& constraint() const { return constraint_; }

 private:
  std::string constraint_;
};

class NotViolated : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// The recipe witness for C: k = C, n = m_k + 1, D = floor(d_k m_k/(m_k + 1)).
// Refuses uncertified schedules; OutOfRange when C exceeds the depth or
// 2CDn exceeds the horizon.
Witness find_witness(const GrowthTable& table, std::uint64_t c);

struct DominanceReport {
  std::uint64_t lo = 0;
  std::uint64_t hi = 0;
  std::uint64_t checked = 0;
  std::optional<std::uint64_t> first_failure;
  bool passed() const { return !first_failure; }
};

// f(x) >= 2^(x omega(x)) for n_1 <= x <= horizon.
DominanceReport check_dominance(const GrowthTable& table, const Omega& omega);

}  // namespace growthlab

#endif  // GROWTHLAB_VERIFY_H_
