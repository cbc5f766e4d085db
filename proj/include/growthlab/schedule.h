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

// Parameter schedules {d_k, n_k} for the constructed function and the
// constraint ledger that certifies every "large enough" requirement on them.
//
// Each constraint C1..C15 is a decidable comparison over the schedule prefix,
// the entry under test and f(n_k). Verdicts carry the compared quantities so
// a ledger can be audited without rerunning the search.

#ifndef GROWTHLAB_SCHEDULE_H_
#define GROWTHLAB_SCHEDULE_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "growthlab/exact.h"
#include "growthlab/omega.h"
#include "growthlab/recurrence.h"

namespace growthlab {

enum class Mode { kCertified, kDemo };
std::string to_string(Mode mode);
Mode parse_mode(const std::string& text);

struct ScheduleEntry {
  std::uint64_t k = 0;
  std::uint64_t d = 0;
  std::uint64_t n = 0;
  std::uint64_t m = 0;  // n = k * m
};

enum class Verdict { kPass, kFail, kNotApplicable };
std::string to_string(Verdict v);

struct ConstraintResult {
  std::string id;
  std::uint64_t k = 0;
  Verdict verdict = Verdict::kNotApplicable;
  // Floors of the two compared sides; rhs is empty when it is unbounded.
  std::optional<Int> lhs;
  std::optional<Int> rhs;
  std::string relation;
};

struct LedgerReport {
  std::vector<ConstraintResult> results;

  bool passed() const;
  const ConstraintResult* first_failure() const;
  const ConstraintResult* find(const std::string& id) const;
};

class MissingTableError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ScanCapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct EntryContext {
  std::span<const ScheduleEntry> prefix;  // entries 1..k-1
  const ScheduleEntry& entry;
  const Nat* f_at_n = nullptr;            // f(n_k); null when not built
  const Omega* omega = nullptr;

  // d_1 ... d_k including the entry itself.
  std::vector<std::uint64_t> d_values() const;
  // f(n_k), or MissingTableError.
  const Nat& f_n() const;
  // f(d_k n_k) from f(n_k) and the arithmetic closed form.
  Nat f_dn() const;
};

struct Constraint {
  std::string id;
  std::string description;
  // The step of the construction the hypothesis comes from.
  std::string origin;
  bool needs_table = false;
  std::function<ConstraintResult(const EntryContext&)> evaluate;
};

// C1..C15 in catalog order.
const std::vector<Constraint>& constraint_catalog();

// Full ledger for one entry. For k = 1, f(n_1) = 2^n_1 is supplied
// internally; for k >= 2 a missing f(n_k) raises MissingTableError.
LedgerReport check_entry(std::span<const ScheduleEntry> prefix,
                         const ScheduleEntry& entry,
                         const std::optional<Nat>& f_at_n,
                         const Omega* omega);

// ceil(1 / ((c - 1)(1 - c^-eps))) with c = 2^(1/(2 d_1..d_k)), eps = 2^(-k-2):
// the seed f(d_k n_k) above which the geometric segment stays within c^-eps
// of exact geometric growth.
Nat condition_one_threshold(std::span<const std::uint64_t> d,
                            std::uint64_t k);

struct Schedule {
  Mode mode = Mode::kCertified;
  std::optional<Omega> omega;
  std::vector<ScheduleEntry> entries;
  std::vector<LedgerReport> ledgers;

  std::size_t depth() const { return entries.size(); }
  bool all_pass() const;
  bool certified() const { return mode == Mode::kCertified && all_pass(); }
  // d_1 ... d_k.
  std::vector<std::uint64_t> d_prefix(std::uint64_t k) const;
};

// Values of f at segment boundaries along a (prefix of a) schedule, with the
// final geometric segment extended on demand.
class BoundaryWalker {
 public:
  // Requires at least one entry; positions at d_K n_K.
  explicit BoundaryWalker(std::span<const ScheduleEntry> entries);

  std::uint64_t position() const { return position_; }
  const Nat& value() const { return value_; }
  // Steps the final geometric segment forward to x >= position().
  void advance_to(std::uint64_t x);

  const Nat& f_at_n(std::uint64_t k) const { return f_n_.at(k - 1); }
  const Nat& f_at_dn(std::uint64_t k) const { return f_dn_.at(k - 1); }

 private:
  std::vector<Nat> f_n_;
  std::vector<Nat> f_dn_;
  std::optional<GeometricStepper> stepper_;
  std::uint64_t position_ = 0;
  Nat value_;
};

std::uint64_t find_min_d(std::span<const ScheduleEntry> prefix,
                         std::uint64_t k);

inline constexpr std::uint64_t kDefaultScanCap = 10'000'000;

// Smallest n_k = k m_k passing every applicable constraint, by linear scan
// over m_k with f extended incrementally.
std::uint64_t find_min_n(std::span<const ScheduleEntry> prefix,
                         std::uint64_t k, std::uint64_t d,
                         const Omega* omega,
                         std::uint64_t scan_cap = kDefaultScanCap);

struct ScheduleRequest {
  std::uint64_t depth = 1;
  Mode mode = Mode::kCertified;
  // Per-k overrides; 0 or missing means search.
  std::vector<std::uint64_t> d_overrides;
  std::vector<std::uint64_t> n_overrides;
  std::optional<Omega> omega;
  std::uint64_t scan_cap = kDefaultScanCap;
};

// Certified mode searches minimal parameters; demo mode takes overrides as
// given and records ledger failures without aborting. Throws
// std::invalid_argument when the entries cannot tile the line
// (d_k < 2 or n_k <= d_{k-1} n_{k-1}).
Schedule build_schedule(const ScheduleRequest& request);

}  // namespace growthlab

#endif  // GROWTHLAB_SCHEDULE_H_
