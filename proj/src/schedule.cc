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

#include "growthlab/schedule.h"

#include <algorithm>

namespace growthlab {
namespace {

Nat nat(std::uint64_t v) { return Nat(static_cast<unsigned long>(v)); }

Pow2Term term(const Int& coeff, const mpq_class& exponent) {
  return Pow2Term{coeff, RationalPow2(exponent)};
}

Pow2Term plain(const Int& coeff) { return Pow2Term{coeff, RationalPow2()}; }

enum class Rel { kLess, kLessEq, kGreater, kGreaterEq };

bool holds(std::strong_ordering o, Rel rel) {
  switch (rel) {
    case Rel::kLess: return o < 0;
    case Rel::kLessEq: return o <= 0;
    case Rel::kGreater: return o > 0;
    case Rel::kGreaterEq: return o >= 0;
  }
  return false;
}

ConstraintResult compared(const std::string& id, std::uint64_t k,
                          const Pow2Sum& lhs, const Pow2Sum& rhs, Rel rel,
                          std::string relation) {
  ConstraintResult r;
  r.id = id;
  r.k = k;
  r.verdict = holds(compare(lhs, rhs), rel) ? Verdict::kPass : Verdict::kFail;
  r.lhs = floor_of(lhs);
  r.rhs = floor_of(rhs);
  r.relation = std::move(relation);
  return r;
}

ConstraintResult compared(const std::string& id, std::uint64_t k,
                          const Int& lhs, const Int& rhs, Rel rel,
                          std::string relation) {
  return compared(id, k, Pow2Sum{plain(lhs)}, Pow2Sum{plain(rhs)}, rel,
                  std::move(relation));
}

ConstraintResult not_applicable(const std::string& id, std::uint64_t k,
                                std::string why) {
  ConstraintResult r;
  r.id = id;
  r.k = k;
  r.verdict = Verdict::kNotApplicable;
  r.relation = std::move(why);
  return r;
}

// 1 / (2 d_1 ... d_k) as an exponent.
mpq_class inv_q(const EntryContext& c) {
  const auto d = c.d_values();
  return mpq_class(Int(1), 2 * d_product(d));
}

const ScheduleEntry& previous(const EntryContext& c) {
  return c.prefix.back();
}

ConstraintResult c1(const EntryContext& c) {
  const auto& e = c.entry;
  if (e.k == 1) return compared("C1", 1, nat(e.d), Int(2), Rel::kGreater, "d_1 > 2");
  return compared("C1", e.k, nat(e.d), nat(previous(c).d), Rel::kGreater,
                  "d_k > d_{k-1}");
}

ConstraintResult c2(const EntryContext& c) {
  const auto& e = c.entry;
  const Nat dn = nat(e.d) * nat(e.n);
  if (e.k > 1) {
    const auto& p = previous(c);
    const Nat prev_dn = nat(p.d) * nat(p.n);
    if (prev_dn >= nat(e.n)) {
      return compared("C2", e.k, prev_dn, nat(e.n), Rel::kLess,
                      "d_{k-1} n_{k-1} < n_k");
    }
  }
  Nat lo = nat(e.n);
  if (e.n == 0) lo = 0;
  auto r = compared("C2", e.k, lo, dn, Rel::kLess, "n_k < d_k n_k");
  if (e.n == 0) r.verdict = Verdict::kFail;
  return r;
}

ConstraintResult c3(const EntryContext& c) {
  const auto& e = c.entry;
  if (e.k != 1) return not_applicable("C3", e.k, "first block only");
  const Nat alpha = arithmetic_increment(e.n, e.d * e.n);
  const mpq_class n = nat(e.n);
  return compared("C3", 1, Pow2Sum{term(1, n), plain(alpha)},
                  Pow2Sum{term(1, n + mpq_class(1, 3))}, Rel::kLessEq,
                  "2^n_1 + alpha_1 <= 2^(n_1 + 1/3)");
}

ConstraintResult c4(const EntryContext& c) {
  const auto& e = c.entry;
  const Nat seed = c.f_dn();
  const Nat t = condition_one_threshold(c.d_values(), e.k);
  return compared("C4", e.k, seed, t, Rel::kGreaterEq,
                  "f(d_k n_k) >= ceil(1/((c-1)(1-c^-eps)))");
}

ConstraintResult c5(const EntryContext& c) {
  const auto& e = c.entry;
  if (e.k == 1) return not_applicable("C5", 1, "no previous block");
  const auto d = c.d_values();
  // d_k >= n_{k-1} / (2 d_1 ... d_{k-2}), empty product = 1.
  const Nat lhs =
      2 * nat(e.d) * d_product(std::span(d).first(static_cast<std::size_t>(e.k - 2)));
  return compared("C5", e.k, lhs, nat(previous(c).n), Rel::kGreaterEq,
                  "2 d_k d_1..d_{k-2} >= n_{k-1}");
}

ConstraintResult c6(const EntryContext& c) {
  const auto& e = c.entry;
  if (e.k == 1) return not_applicable("C6", 1, "no previous block");
  const auto& p = previous(c);
  return compared("C6", e.k, nat(e.d), nat(p.d) * nat(p.n) + 1, Rel::kGreater,
                  "d_k > d_{k-1} n_{k-1} + 1");
}

ConstraintResult c7(const EntryContext& c) {
  const auto& e = c.entry;
  const mpq_class inv = inv_q(c);
  const mpq_class n = nat(e.n);
  // 1 + (dn+1)/2^(n/Q) < 2^(1/Q), multiplied through by 2^(n/Q).
  return compared("C7", e.k,
                  Pow2Sum{plain(nat(e.d) * nat(e.n) + 1), term(1, n * inv)},
                  Pow2Sum{term(1, (n + 1) * inv)}, Rel::kLess,
                  "d_k n_k + 1 + 2^(n_k/Q) < 2^((n_k+1)/Q)");
}

ConstraintResult c8(const EntryContext& c) {
  const auto& e = c.entry;
  return compared("C8", e.k, Pow2Sum{plain(c.f_dn())},
                  Pow2Sum{term(c.f_n(), mpq_class(1, 3))}, Rel::kLessEq,
                  "f(d_k n_k) <= f(n_k) 2^(1/3)");
}

ConstraintResult c9(const EntryContext& c) {
  const auto& e = c.entry;
  if (e.k == 1) return not_applicable("C9", 1, "no previous block");
  const auto& p = previous(c);
  return compared("C9", e.k, nat(e.n), 2 * nat(p.d) * nat(p.n), Rel::kGreater,
                  "n_k > 2 d_{k-1} n_{k-1}");
}

ConstraintResult c10(const EntryContext& c) {
  const auto& e = c.entry;
  const Nat& fn = c.f_n();
  const Nat dn = nat(e.d) * nat(e.n);
  const Nat dn2 = dn * dn;
  auto first = compared("C10", e.k, fn, dn2, Rel::kGreaterEq,
                        "f(n_k) >= d_k^2 n_k^2");
  if (first.verdict == Verdict::kFail) return first;
  const mpq_class n = nat(e.n);
  return compared("C10", e.k, Pow2Sum{term(fn, n * inv_q(c) + 1)},
                  Pow2Sum{plain(fn), plain(dn2)}, Rel::kGreaterEq,
                  "f(n_k) 2^(n_k/Q + 1) >= f(n_k) + d_k^2 n_k^2");
}

ConstraintResult c11(const EntryContext& c) {
  const auto& e = c.entry;
  const Nat& fn = c.f_n();
  return compared("C11", e.k, Pow2Sum{plain(fn), plain(nat(e.n) * nat(e.n))},
                  Pow2Sum{term(fn, mpq_class(1, 2))}, Rel::kLessEq,
                  "f(n_k) + n_k^2 <= f(n_k) 2^(1/2)");
}

ConstraintResult c12(const EntryContext& c) {
  const auto& e = c.entry;
  if (e.k != 1) return not_applicable("C12", e.k, "first block only");
  return compared("C12", 1, nat(e.n), Int(3), Rel::kGreaterEq, "n_1 >= 3");
}

ConstraintResult c13(const EntryContext& c) {
  const auto& e = c.entry;
  if (e.n != e.k * e.m) {
    auto r = compared("C13", e.k, nat(e.n), nat(e.k) * nat(e.m), Rel::kGreaterEq,
                      "n_k = k m_k");
    r.verdict = Verdict::kFail;
    return r;
  }
  return compared("C13", e.k, nat(e.n), 2 * nat(e.k), Rel::kGreater,
                  "n_k = k m_k and n_k > 2k");
}

ConstraintResult c14(const EntryContext& c) {
  const auto& e = c.entry;
  if (c.omega == nullptr) return not_applicable("C14", e.k, "no omega");
  const auto bound = c.omega->last_at_least(inv_q(c));
  if (!bound) {
    ConstraintResult r;
    r.id = "C14";
    r.k = e.k;
    r.verdict = Verdict::kFail;
    r.lhs = nat(e.n);
    r.relation = "n_k > max{m : omega(m) >= 1/Q} (unbounded)";
    return r;
  }
  return compared("C14", e.k, nat(e.n), *bound, Rel::kGreater,
                  "n_k > max{m : omega(m) >= 1/Q}");
}

ConstraintResult c15(const EntryContext& c) {
  const auto& e = c.entry;
  const Nat seed = c.f_dn();
  // (c - 1) f(d_k n_k) >= 1 forces floor(c f(x-1)) > f(x-1) on the whole
  // geometric segment, since f only grows along it.
  return compared("C15", e.k, Pow2Sum{term(seed, inv_q(c))},
                  Pow2Sum{plain(seed), plain(1)}, Rel::kGreaterEq,
                  "f(d_k n_k) 2^(1/Q) >= f(d_k n_k) + 1");
}

std::vector<Constraint> make_catalog() {
  return {
      {"C1", "d_1 > 2 and d_k increasing", "choice of the block multipliers",
       false, c1},
      {"C2", "n_k < d_k n_k < n_{k+1}", "interleaving of the blocks", false, c2},
      {"C3", "2^n_1 + alpha_1 <= 2^(n_1 + 1/3)",
       "first-block submultiplicativity", false, c3},
      {"C4", "f(d_k n_k) above the floored-geometric seed threshold",
       "geometric-segment lower bound (derived from the floor lemma proof)",
       true, c4},
      {"C5", "d_k >= n_{k-1} / (2 d_1..d_{k-2})",
       "submultiplicativity, small p case", false, c5},
      {"C6", "d_k > d_{k-1} n_{k-1} + 1",
       "submultiplicativity, middle p case", false, c6},
      {"C7", "1 + (d_k n_k + 1) / 2^(n_k/Q) < 2^(1/Q)",
       "arithmetic-segment step ratio below the geometric ratio", false, c7},
      {"C8", "f(d_k n_k) <= f(n_k) 2^(1/3)", "arithmetic segment is short",
       true, c8},
      {"C9", "n_k > 2 d_{k-1} n_{k-1}", "submultiplicativity, p <= q < n_k case",
       false, c9},
      {"C10", "f(n_k) >> d_k^2 n_k^2", "submultiplicativity, p > n_k case", true,
       c10},
      {"C11", "f(n_k) + n_k^2 <= f(n_k) 2^(1/2)",
       "submultiplicativity, p <= q < n_k case", true, c11},
      {"C12", "n_1 >= 3", "lower bound on f, first block", false, c12},
      {"C13", "n_k = k m_k and n_k > 2k", "non-equivalence witness range",
       false, c13},
      {"C14", "n_k > max{m : omega(m) >= 1/(2 d_1..d_k)}",
       "domination of the prescribed subexponential function", false, c14},
      {"C15", "floor(2^(1/Q) f(x-1)) > f(x-1) on geometric segments",
       "monotonicity of the geometric segment", true, c15},
  };
}

// Evaluation order for scans: cheap structural checks first.
const std::vector<std::string>& scan_order() {
  static const std::vector<std::string> order = {
      "C2", "C13", "C12", "C9", "C14", "C1", "C5", "C6",
      "C3", "C7", "C15", "C4", "C10", "C11", "C8"};
  return order;
}

const Constraint& by_id(const std::string& id) {
  for (const auto& c : constraint_catalog()) {
    if (c.id == id) return c;
  }
  throw std::logic_error("unknown constraint " + id);
}

void require_tiling(std::span<const ScheduleEntry> prefix,
                    const ScheduleEntry& e) {
  if (e.d < 2 || e.n == 0) {
    throw std::invalid_argument("entry k=" + std::to_string(e.k) +
                                " needs d >= 2 and n >= 1");
  }
  if (!prefix.empty() && e.n <= prefix.back().d * prefix.back().n) {
    throw std::invalid_argument("entry k=" + std::to_string(e.k) +
                                " must start after d_{k-1} n_{k-1}");
  }
}

}  // namespace

std::string to_string(Mode mode) {
  return mode == Mode::kCertified ? "certified" : "demo";
}

Mode parse_mode(const std::string& text) {
  if (text == "certified") return Mode::kCertified;
  if (text == "demo") return Mode::kDemo;
  throw std::invalid_argument("mode must be certified or demo: " + text);
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::kPass: return "pass";
    case Verdict::kFail: return "fail";
    case Verdict::kNotApplicable: return "not-applicable";
  }
  return "?";
}

bool LedgerReport::passed() const { return first_failure() == nullptr; }

const ConstraintResult* LedgerReport::first_failure() const {
  for (const auto& r : results) {
    if (r.verdict == Verdict::kFail) return &r;
  }
  return nullptr;
}

const ConstraintResult* LedgerReport::find(const std::string& id) const {
  for (const auto& r : results) {
    if (r.id == id) return &r;
  }
  return nullptr;
}

std::vector<std::uint64_t> EntryContext::d_values() const {
  std::vector<std::uint64_t> d;
  for (const auto& p : prefix) d.push_back(p.d);
  d.push_back(entry.d);
  return d;
}

const Nat& EntryContext::f_n() const {
  if (f_at_n == nullptr) {
    throw MissingTableError("f(n_" + std::to_string(entry.k) +
                            ") is not built yet");
  }
  return *f_at_n;
}

Nat EntryContext::f_dn() const {
  return f_n() + arithmetic_increment(entry.n, entry.d * entry.n);
}

const std::vector<Constraint>& constraint_catalog() {
  static const std::vector<Constraint> catalog = make_catalog();
  return catalog;
}

Nat condition_one_threshold(std::span<const std::uint64_t> d, std::uint64_t k) {
  const mpq_class inv(Int(1), 2 * d_product(d));
  const mpq_class eps(Int(1), pow2(static_cast<unsigned long>(k + 2)));
  // t (c - 1)(1 - c^-eps) >= 1  <=>  t c + t c^-eps >= 1 + t + t c^(1-eps)
  auto enough = [&](const Nat& t) {
    return compare(Pow2Sum{term(t, inv), term(t, -eps * inv)},
                   Pow2Sum{plain(1), plain(t), term(t, (1 - eps) * inv)}) >= 0;
  };
  Nat hi = 1;
  while (!enough(hi)) hi *= 2;
  Nat lo = hi / 2;  // fails unless hi == 1
  if (hi == 1) return hi;
  while (hi - lo > 1) {
    Nat mid = (lo + hi) / 2;
    if (enough(mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

LedgerReport check_entry(std::span<const ScheduleEntry> prefix,
                         const ScheduleEntry& entry,
                         const std::optional<Nat>& f_at_n,
                         const Omega* omega) {
  if (entry.k != prefix.size() + 1) {
    throw std::invalid_argument("entry index does not follow the prefix");
  }
  std::optional<Nat> f = f_at_n;
  if (entry.k == 1) f = pow2(static_cast<unsigned long>(entry.n));
  EntryContext ctx{prefix, entry, f ? &*f : nullptr, omega};
  LedgerReport report;
  for (const auto& c : constraint_catalog()) {
    report.results.push_back(c.evaluate(ctx));
  }
  return report;
}

bool Schedule::all_pass() const {
  return std::all_of(ledgers.begin(), ledgers.end(),
                     [](const LedgerReport& r) { return r.passed(); });
}

std::vector<std::uint64_t> Schedule::d_prefix(std::uint64_t k) const {
  std::vector<std::uint64_t> d;
  for (std::uint64_t i = 0; i < k && i < entries.size(); ++i) {
    d.push_back(entries[i].d);
  }
  return d;
}

BoundaryWalker::BoundaryWalker(std::span<const ScheduleEntry> entries) {
  if (entries.empty()) throw std::invalid_argument("BoundaryWalker: no entries");
  std::vector<std::uint64_t> d;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const auto& e = entries[i];
    require_tiling(entries.first(i), e);
    if (i == 0) {
      value_ = pow2(static_cast<unsigned long>(e.n));
    } else {
      advance_to(e.n);
    }
    f_n_.push_back(value_);
    value_ += arithmetic_increment(e.n, e.d * e.n);
    position_ = e.d * e.n;
    f_dn_.push_back(value_);
    d.push_back(e.d);
    stepper_.emplace(geometric_ratio(d));
  }
}

void BoundaryWalker::advance_to(std::uint64_t x) {
  if (x < position_) throw std::invalid_argument("walker cannot move back");
  while (position_ < x) {
    value_ = stepper_->step(value_);
    ++position_;
  }
}

std::uint64_t find_min_d(std::span<const ScheduleEntry> prefix,
                         std::uint64_t k) {
  if (k != prefix.size() + 1) {
    throw std::invalid_argument("find_min_d: k does not follow the prefix");
  }
  if (k == 1) return 3;
  const auto& p = prefix.back();
  std::vector<std::uint64_t> d;
  for (const auto& e : prefix) d.push_back(e.d);
  // C5: 2 d_k d_1..d_{k-2} >= n_{k-1}
  const Nat denom = 2 * d_product(std::span(d).first(d.size() - 1));
  Nat c5;
  mpz_cdiv_q(c5.get_mpz_t(), nat(p.n).get_mpz_t(), denom.get_mpz_t());
  std::uint64_t best = std::max<std::uint64_t>(p.d + 1, p.d * p.n + 2);
  best = std::max<std::uint64_t>(best, c5.get_ui());
  return best;
}

std::uint64_t find_min_n(std::span<const ScheduleEntry> prefix,
                         std::uint64_t k, std::uint64_t d,
                         const Omega* omega, std::uint64_t scan_cap) {
  if (k != prefix.size() + 1) {
    throw std::invalid_argument("find_min_n: k does not follow the prefix");
  }
  std::vector<std::uint64_t> dv;
  for (const auto& e : prefix) dv.push_back(e.d);
  dv.push_back(d);
  if (omega != nullptr) {
    const auto bound =
        omega->last_at_least(mpq_class(Int(1), 2 * d_product(dv)));
    if (!bound) {
      throw ScanCapExceeded("omega never drops below 1/(2 d_1..d_k) for k=" +
                            std::to_string(k));
    }
    if (*bound >= nat(k) * nat(scan_cap)) {
      throw ScanCapExceeded("omega forces n_" + std::to_string(k) +
                            " beyond the scan cap");
    }
  }
  std::optional<BoundaryWalker> walker;
  if (!prefix.empty()) walker.emplace(prefix);
  for (std::uint64_t m = 1; m <= scan_cap; ++m) {
    const ScheduleEntry entry{k, d, k * m, m};
    Nat f;
    bool have_f = false;
    bool ok = true;
    for (const auto& id : scan_order()) {
      const Constraint& c = by_id(id);
      if (c.needs_table && !have_f) {
        if (walker) {
          walker->advance_to(entry.n);
          f = walker->value();
        } else {
          f = pow2(static_cast<unsigned long>(entry.n));
        }
        have_f = true;
      }
      EntryContext ctx{prefix, entry, have_f ? &f : nullptr, omega};
      if (c.evaluate(ctx).verdict == Verdict::kFail) {
        ok = false;
        break;
      }
    }
    if (ok) return entry.n;
  }
  throw ScanCapExceeded("no n_" + std::to_string(k) + " within " +
                        std::to_string(scan_cap) + " multiples");
}

Schedule build_schedule(const ScheduleRequest& request) {
  Schedule s;
  s.mode = request.mode;
  s.omega = request.omega;
  const Omega* omega = request.omega ? &*request.omega : nullptr;
  auto override_at = [](const std::vector<std::uint64_t>& v, std::uint64_t k) {
    return k <= v.size() ? v[k - 1] : 0;
  };
  for (std::uint64_t k = 1; k <= request.depth; ++k) {
    std::span<const ScheduleEntry> prefix(s.entries);
    std::uint64_t d = override_at(request.d_overrides, k);
    if (d == 0) d = find_min_d(prefix, k);
    std::uint64_t n = override_at(request.n_overrides, k);
    if (n == 0) n = find_min_n(prefix, k, d, omega, request.scan_cap);
    const ScheduleEntry entry{k, d, n, n / k};
    require_tiling(prefix, entry);
    std::optional<Nat> f_n;
    if (k > 1) {
      BoundaryWalker walker(prefix);
      walker.advance_to(n);
      f_n = walker.value();
    }
    s.ledgers.push_back(check_entry(prefix, entry, f_n, omega));
    s.entries.push_back(entry);
  }
  return s;
}

}  // namespace growthlab
