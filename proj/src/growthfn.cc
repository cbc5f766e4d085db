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

#include "growthlab/growthfn.h"

#include <algorithm>
#include <cstdlib>
#include <iterator>

#include "growthlab/recurrence.h"

namespace growthlab {
namespace {

constexpr std::size_t kMaxReportedFailures = 32;
// Above this many bits a^q is not formed; exact comparisons go through the
// interval route instead.
constexpr unsigned long kPowerBitLimit = 1ul << 22;

Nat nat(std::uint64_t v) { return Nat(static_cast<unsigned long>(v)); }

std::uint64_t storage_bytes(const Nat& v) {
  return 32 + 8 * mpz_size(v.get_mpz_t());
}

std::vector<Segment> tile(const Schedule& s, std::uint64_t horizon) {
  std::vector<Segment> out;
  auto add = [&](Segment seg) {
    if (seg.lo > horizon || seg.lo > seg.hi) return;
    seg.hi = std::min(seg.hi, horizon);
    out.push_back(seg);
  };
  const auto& e = s.entries;
  add(Segment{SegmentKind::kSeed, 0, 1, e.empty() ? horizon : e[0].n, {}});
  for (std::size_t i = 0; i < e.size(); ++i) {
    const std::uint64_t dn = e[i].d * e[i].n;
    add(Segment{SegmentKind::kArithmetic, e[i].k, e[i].n + 1, dn, {}});
    const std::uint64_t end = i + 1 < e.size() ? e[i + 1].n : horizon;
    add(Segment{SegmentKind::kGeometric, e[i].k, dn + 1, end,
                geometric_ratio(s.d_prefix(e[i].k))});
  }
  return out;
}

// floor(c a) by the integer-root route when a^q stays small; otherwise the
// sandwich r <= c a < r + 1 by exact comparison.
bool geometric_step_ok(const Nat& a, const RationalPow2& c, const Nat& r) {
  const unsigned long q = c.denom().get_ui();
  if (bit_length(a) * q <= kPowerBitLimit) {
    return floor_mul_pow2_by_root(a, c) == r;
  }
  const Pow2Sum ca{Pow2Term{a, c}};
  return compare(Pow2Sum{Pow2Term{r, RationalPow2()}}, ca) <= 0 &&
         compare(Pow2Sum{Pow2Term{r + 1, RationalPow2()}}, ca) > 0;
}

std::uint64_t dn_of(const ScheduleEntry& e) { return e.d * e.n; }

mpq_class inv_q(const Schedule& s, std::uint64_t k) {
  return mpq_class(Int(1), 2 * d_product(s.d_prefix(k)));
}

mpq_class eps(std::uint64_t k, unsigned extra) {
  return mpq_class(Int(1), pow2(static_cast<unsigned long>(k + extra)));
}

// f(x) >= a0 2^e, with e = u/v: f(x)^v >= a0^v 2^u when the powers are
// small, else by interval comparison.
bool at_least_scaled(const Nat& fx, const Nat& a0, const RationalPow2& e) {
  const unsigned long v = e.denom().get_ui();
  if (std::max(bit_length(fx), bit_length(a0)) * v <= kPowerBitLimit) {
    Int lhs = ipow(fx, v);
    Int rhs = ipow(a0, v);
    const long u = e.numer().get_si();
    if (u >= 0) {
      rhs <<= static_cast<unsigned long>(u);
    } else {
      lhs <<= static_cast<unsigned long>(-u);
    }
    return lhs >= rhs;
  }
  return compare(Pow2Sum{Pow2Term{fx, RationalPow2()}},
                 Pow2Sum{Pow2Term{a0, e}}) >= 0;
}

}  // namespace

std::string Segment::name() const {
  switch (kind) {
    case SegmentKind::kSeed: return "seed";
    case SegmentKind::kArithmetic: return "arith:" + std::to_string(k);
    case SegmentKind::kGeometric: return "geom:" + std::to_string(k);
  }
  return "?";
}

std::uint64_t BuildOptions::default_memory_budget() {
  if (const char* env = std::getenv("GROWTHLAB_MEM_BUDGET")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0') return v;
  }
  return std::uint64_t{1} << 30;
}

std::uint64_t default_horizon(const Schedule& schedule) {
  if (schedule.entries.empty()) return 16;
  const auto& last = schedule.entries.back();
  return std::max(2 * last.d * last.n, 4 * (last.n + 1));
}

GrowthTable GrowthTable::build(const Schedule& schedule, std::uint64_t horizon,
                               const BuildOptions& options) {
  if (schedule.mode == Mode::kCertified && !schedule.all_pass()) {
    std::string id;
    for (const auto& l : schedule.ledgers) {
      if (const auto* f = l.first_failure()) {
        id = f->id + " (k=" + std::to_string(f->k) + ")";
        break;
      }
    }
    throw ScheduleInvalid("certified schedule fails constraint " + id);
  }
  const bool strict = schedule.mode == Mode::kCertified;
  GrowthTable t;
  t.schedule_ = schedule;
  t.horizon_ = horizon;
  t.segments_ = tile(schedule, horizon);
  auto invariant = [&](bool ok, const std::string& what) {
    if (ok) return;
    if (strict) throw InvariantViolation(what);
    if (t.warnings_.size() < 64) t.warnings_.push_back(what);
  };

  if (!schedule.entries.empty()) {
    const auto& e = schedule.entries[0];
    invariant(arithmetic_increment(e.n, dn_of(e)) < nat(dn_of(e)) * nat(dn_of(e)),
              "alpha_1 >= d_1^2 n_1^2");
  }

  bool dense = true;
  std::uint64_t bytes = 0;
  Nat f = 1;  // f(x - 1)
  Nat block_start;
  for (const auto& seg : t.segments_) {
    std::optional<GeometricStepper> stepper;
    if (seg.kind == SegmentKind::kGeometric) stepper.emplace(seg.ratio);
    for (std::uint64_t x = seg.lo; x <= seg.hi; ++x) {
      Nat next;
      switch (seg.kind) {
        case SegmentKind::kSeed:
          next = 2 * f;
          break;
        case SegmentKind::kArithmetic:
          if (x == seg.lo) block_start = f;
          next = f + nat(x + 1);
          if (next != block_start + arithmetic_increment(seg.lo - 1, x)) {
            throw InvariantViolation("arithmetic closed form mismatch at x=" +
                                     std::to_string(x));
          }
          break;
        case SegmentKind::kGeometric: {
          next = stepper->step(f);
          const std::uint64_t j = x - seg.lo + 1;
          const bool checkpoint = j % options.checkpoint_every == 0;
          if (checkpoint || x == seg.hi || x == seg.lo ||
              (options.cross_check_stride != 0 &&
               j % options.cross_check_stride == 0)) {
            if (!geometric_step_ok(f, seg.ratio, next)) {
              throw InvariantViolation("geometric step mismatch at x=" +
                                       std::to_string(x));
            }
          }
          if (checkpoint) t.checkpoints_[x] = next;
          break;
        }
      }
      invariant(x == 1 || next > f,
                "f not increasing at x=" + std::to_string(x));
      f = std::move(next);
      if (x == seg.lo || x == seg.hi) t.checkpoints_[x] = f;
      if (dense) {
        bytes += storage_bytes(f);
        if (bytes > options.memory_budget) {
          dense = false;
          std::vector<Nat>().swap(t.values_);
        } else {
          t.values_.push_back(f);
        }
      }
    }
  }

  // Submultiplicativity at the block boundaries.
  std::vector<std::uint64_t> points = {1, 2};
  for (const auto& e : schedule.entries) {
    points.push_back(e.n);
    points.push_back(dn_of(e));
  }
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i; j < points.size(); ++j) {
      const std::uint64_t p = points[i], q = points[j];
      if (p == 0 || q == 0 || p + q > horizon) continue;
      invariant(t.value_at(p + q) <= t.value_at(p) * t.value_at(q),
                "f(" + std::to_string(p + q) + ") > f(" + std::to_string(p) +
                    ") f(" + std::to_string(q) + ")");
    }
  }

  // Floor-lemma bounds at the checkpoints of each geometric segment:
  // a_j <= c^j a_0 always, c^(j - eps) a_0 <= a_j for certified schedules.
  for (const auto& seg : t.segments_) {
    if (seg.kind != SegmentKind::kGeometric) continue;
    const Nat a0 = t.value_at(seg.lo - 1);
    const mpq_class inv = inv_q(schedule, seg.k);
    for (auto it = t.checkpoints_.lower_bound(seg.lo);
         it != t.checkpoints_.end() && it->first <= seg.hi; ++it) {
      const std::uint64_t j = it->first - (seg.lo - 1);
      if (!at_least_scaled(a0, it->second, RationalPow2(-inv * nat(j)))) {
        throw InvariantViolation("floor lemma upper bound fails at x=" +
                                 std::to_string(it->first));
      }
      invariant(at_least_scaled(it->second, a0,
                                RationalPow2(inv * (nat(j) - eps(seg.k, 2)))),
                "floor lemma lower bound fails at x=" + std::to_string(it->first));
    }
  }
  return t;
}

const Segment& GrowthTable::segment_at(std::uint64_t x) const {
  if (x == 0 || x > horizon_) {
    throw OutOfRange("x=" + std::to_string(x) + " outside [1, " +
                     std::to_string(horizon_) + "]");
  }
  auto it = std::upper_bound(
      segments_.begin(), segments_.end(), x,
      [](std::uint64_t v, const Segment& s) { return v < s.lo; });
  return *(it - 1);
}

Nat GrowthTable::value_at(std::uint64_t x) const {
  const Segment& seg = segment_at(x);
  if (!values_.empty()) return values_[x - 1];
  switch (seg.kind) {
    case SegmentKind::kSeed:
      return pow2(static_cast<unsigned long>(x));
    case SegmentKind::kArithmetic:
      return checkpoints_.at(seg.lo - 1) + arithmetic_increment(seg.lo - 1, x);
    case SegmentKind::kGeometric: {
      // The previous segment's end is a checkpoint, so this stays in range.
      auto it = std::prev(checkpoints_.upper_bound(x));
      std::uint64_t at = it->first;
      Nat v = it->second;
      GeometricStepper stepper(seg.ratio);
      for (; at < x; ++at) v = stepper.step(v);
      return v;
    }
  }
  return 0;
}

void GrowthTable::scan(
    std::uint64_t lo, std::uint64_t hi,
    const std::function<void(std::uint64_t, const Nat&)>& visit) const {
  if (lo > hi) return;
  segment_at(lo);
  segment_at(hi);
  if (!values_.empty()) {
    for (std::uint64_t x = lo; x <= hi; ++x) visit(x, values_[x - 1]);
    return;
  }
  std::uint64_t x = lo;
  while (x <= hi) {
    const Segment& seg = segment_at(x);
    const std::uint64_t end = std::min(seg.hi, hi);
    if (seg.kind != SegmentKind::kGeometric) {
      for (; x <= end; ++x) visit(x, value_at(x));
      continue;
    }
    Nat v = value_at(x);
    GeometricStepper stepper(seg.ratio);
    visit(x, v);
    for (++x; x <= end; ++x) {
      v = stepper.step(v);
      visit(x, v);
    }
  }
}

Nat GrowthTable::alpha1() const {
  if (schedule_.entries.empty()) throw OutOfRange("alpha_1 needs a block");
  const auto& e = schedule_.entries[0];
  return value_at(dn_of(e)) - value_at(e.n);
}

Nat GrowthTable::beta(std::uint64_t k) const {
  if (k < 2 || k > schedule_.entries.size()) {
    throw OutOfRange("beta needs 2 <= k <= depth");
  }
  return value_at(dn_of(schedule_.entries[k - 2]));
}

RationalPow2 lower_bound_exponent(const Schedule& s, std::uint64_t x) {
  const auto& e = s.entries;
  if (e.empty()) throw std::invalid_argument("lower bound needs a block");
  for (std::size_t i = 0; i < e.size(); ++i) {
    const std::uint64_t k = e[i].k;
    const mpq_class base = nat(x) * inv_q(s, k) + 1;
    if (x <= dn_of(e[i])) return RationalPow2(base + eps(k, 1));
    if (i + 1 == e.size() || x <= e[i + 1].n) {
      return RationalPow2(base + eps(k, 2));
    }
  }
  throw std::logic_error("unreachable");
}

BoundReport verify_lower_bound(const GrowthTable& table, std::uint64_t lo,
                               std::uint64_t hi) {
  BoundReport r;
  r.lo = lo;
  r.hi = hi;
  table.scan(lo, hi, [&](std::uint64_t x, const Nat& v) {
    ++r.checked;
    const RationalPow2 e = lower_bound_exponent(table.schedule(), x);
    if (cmp_nat_pow2(v, e) < 0) {
      ++r.failed;
      if (r.failures.size() < kMaxReportedFailures) {
        r.failures.push_back(BoundFailure{x, e, v});
      }
    }
  });
  return r;
}

BoundReport verify_condition_I(const GrowthTable& table, std::uint64_t k) {
  const Schedule& s = table.schedule();
  if (k == 0 || k > s.entries.size()) {
    throw OutOfRange("no block k=" + std::to_string(k));
  }
  const std::uint64_t start = dn_of(s.entries[k - 1]);
  const std::uint64_t end =
      k < s.entries.size() ? s.entries[k].n : table.horizon();
  BoundReport r;
  r.lo = start;
  r.hi = std::min(end, table.horizon());
  if (start > table.horizon()) {
    throw OutOfRange("geometric segment " + std::to_string(k) + " not built");
  }
  const Nat a0 = table.value_at(start);
  const mpq_class inv = inv_q(s, k);
  const mpq_class slack = eps(k, 2);
  table.scan(r.lo, r.hi, [&](std::uint64_t x, const Nat& v) {
    ++r.checked;
    const RationalPow2 e(nat(x - start) * inv - slack);
    if (!at_least_scaled(v, a0, e)) {
      ++r.failed;
      if (r.failures.size() < kMaxReportedFailures) {
        r.failures.push_back(BoundFailure{x, e, v});
      }
    }
  });
  return r;
}

}  // namespace growthlab
