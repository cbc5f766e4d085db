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

#include "growthlab/verify.h"

#include <algorithm>
#include <atomic>
#include <random>
#include <thread>

namespace growthlab {
namespace {

Nat nat(std::uint64_t v) { return Nat(static_cast<unsigned long>(v)); }

// a(first..upto) held contiguously, borrowing the view's storage if it has
// some.
class Dense {
 public:
  Dense(const SeqView& seq, std::uint64_t upto) : first_(seq.first()) {
    if (upto > seq.last()) {
      throw OutOfRange("sequence ends at " + std::to_string(seq.last()));
    }
    if (seq.data() != nullptr) {
      data_ = seq.data();
      return;
    }
    own_.reserve(upto - first_ + 1);
    for (std::uint64_t x = first_; x <= upto; ++x) own_.push_back(seq.at(x));
    data_ = own_.data();
  }
  const Nat& operator[](std::uint64_t x) const { return data_[x - first_]; }

 private:
  std::uint64_t first_;
  std::vector<Nat> own_;
  const Nat* data_ = nullptr;
};

struct PairChecker {
  const Dense& a;
  const std::vector<unsigned long>& bits;  // indexed by x

  // Exact verdict of a(p + q) > a(p) a(q); counts exact products.
  bool violated(std::uint64_t p, std::uint64_t q, std::uint64_t& exact) const {
    const unsigned long bl = bits[p + q];
    const unsigned long br = bits[p] + bits[q];
    // a(p) a(q) >= 2^(br - 2) when both are nonzero.
    if (bits[p] > 0 && bits[q] > 0 && bl + 2 <= br) return false;
    if (bl >= br + 1) return true;  // a(p + q) >= 2^(bl - 1) > a(p) a(q)
    ++exact;
    return a[p + q] > a[p] * a[q];
  }
};

bool lex_less(std::uint64_t p1, std::uint64_t q1, std::uint64_t p2,
              std::uint64_t q2) {
  return p1 != p2 ? p1 < p2 : q1 < q2;
}

}  // namespace

SeqView::SeqView(std::span<const Nat> values, std::uint64_t first)
    : data_(values.data()), first_(first), last_(first + values.size() - 1) {
  if (values.empty()) throw std::invalid_argument("SeqView: empty sequence");
}

SeqView::SeqView(std::vector<Nat> values, std::uint64_t first)
    : first_(first) {
  if (values.empty()) throw std::invalid_argument("SeqView: empty sequence");
  last_ = first + values.size() - 1;
  owned_ = std::make_shared<const std::vector<Nat>>(std::move(values));
  data_ = owned_->data();
}

SeqView::SeqView(std::uint64_t first, std::uint64_t last, Accessor accessor)
    : accessor_(std::move(accessor)), first_(first), last_(last) {
  if (last < first) throw std::invalid_argument("SeqView: empty sequence");
}

SeqView SeqView::of(const GrowthTable& table, std::optional<std::uint64_t> upto) {
  const std::uint64_t last = std::min(upto.value_or(table.horizon()), table.horizon());
  if (table.dense()) return SeqView(table.values().first(last), 1);
  std::vector<Nat> values;
  values.reserve(last);
  table.scan(1, last, [&](std::uint64_t, const Nat& v) { values.push_back(v); });
  return SeqView(std::move(values), 1);
}

Nat SeqView::at(std::uint64_t x) const {
  if (x < first_ || x > last_) {
    throw OutOfRange("index " + std::to_string(x) + " outside [" +
                     std::to_string(first_) + ", " + std::to_string(last_) + "]");
  }
  return data_ != nullptr ? data_[x - first_] : accessor_(x);
}

std::optional<std::uint64_t> check_increasing(const SeqView& seq,
                                              std::uint64_t lo,
                                              std::uint64_t hi) {
  if (lo >= hi) return std::nullopt;
  const Dense a(seq, hi);
  seq.at(lo);
  for (std::uint64_t x = lo; x < hi; ++x) {
    if (a[x] >= a[x + 1]) return x;
  }
  return std::nullopt;
}

std::string to_string(SubmulStrategy s) {
  switch (s) {
    case SubmulStrategy::kExhaustive: return "exhaustive";
    case SubmulStrategy::kSampled: return "sampled";
    case SubmulStrategy::kBoundary: return "boundary";
  }
  return "?";
}

SubmulStrategy parse_strategy(const std::string& text) {
  if (text == "exhaustive") return SubmulStrategy::kExhaustive;
  if (text == "sampled") return SubmulStrategy::kSampled;
  if (text == "boundary") return SubmulStrategy::kBoundary;
  throw std::invalid_argument("unknown strategy " + text);
}

SubmulReport check_submultiplicative(const SeqView& seq, std::uint64_t n,
                                     const SubmulOptions& options) {
  if (n < 2) throw std::invalid_argument("submultiplicativity needs N >= 2");
  if (seq.first() > 1) throw std::invalid_argument("sequence must start at 0 or 1");
  if (options.strategy == SubmulStrategy::kExhaustive &&
      n > options.pair_budget_n) {
    throw PairBudgetExceeded("N=" + std::to_string(n) + " exceeds the pair budget " +
                             std::to_string(options.pair_budget_n));
  }
  SubmulReport report;
  report.strategy = options.strategy;
  report.n = n;
  const Dense a(seq, n);
  std::vector<unsigned long> bits(n + 1, 0);
  for (std::uint64_t x = 1; x <= n; ++x) bits[x] = bit_length(a[x]);
  const PairChecker check{a, bits};

  std::optional<std::pair<std::uint64_t, std::uint64_t>> first;
  auto note = [&](std::uint64_t p, std::uint64_t q) {
    if (!first || lex_less(p, q, first->first, first->second)) first = {p, q};
  };

  switch (options.strategy) {
    case SubmulStrategy::kExhaustive: {
      const unsigned workers = std::max(1u, options.threads);
      std::vector<std::optional<std::pair<std::uint64_t, std::uint64_t>>> found(workers);
      std::vector<std::uint64_t> pairs(workers, 0), exact(workers, 0);
      auto run = [&](unsigned w) {
        for (std::uint64_t p = 1 + w; 2 * p <= n; p += workers) {
          for (std::uint64_t q = p; p + q <= n; ++q) {
            ++pairs[w];
            if (check.violated(p, q, exact[w])) {
              found[w] = {p, q};
              return;
            }
          }
        }
      };
      if (workers == 1) {
        run(0);
      } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run, w);
        for (auto& t : pool) t.join();
      }
      for (unsigned w = 0; w < workers; ++w) {
        report.pairs_checked += pairs[w];
        report.exact_multiplies += exact[w];
        if (found[w]) note(found[w]->first, found[w]->second);
      }
      break;
    }
    case SubmulStrategy::kSampled: {
      report.seed = options.seed;
      std::mt19937_64 rng(options.seed);
      for (std::uint64_t i = 0; i < options.samples;) {
        std::uint64_t p = 1 + rng() % (n - 1);
        std::uint64_t q = 1 + rng() % (n - 1);
        if (p + q > n) continue;
        if (p > q) std::swap(p, q);
        ++i;
        ++report.pairs_checked;
        if (check.violated(p, q, report.exact_multiplies)) note(p, q);
      }
      break;
    }
    case SubmulStrategy::kBoundary: {
      if (options.boundaries.empty()) {
        throw std::invalid_argument("boundary strategy needs boundaries");
      }
      std::vector<char> special(n + 1, 0);
      for (std::uint64_t b : options.boundaries) {
        const std::uint64_t lo = b > options.window ? b - options.window : 1;
        for (std::uint64_t v = lo; v <= std::min(n, b + options.window); ++v) {
          special[v] = 1;
        }
      }
      std::vector<std::uint64_t> specials;
      for (std::uint64_t v = 1; v <= n; ++v) {
        if (special[v]) specials.push_back(v);
      }
      std::vector<std::uint64_t> qs;
      for (std::uint64_t p = 1; 2 * p <= n && !first; ++p) {
        qs.clear();
        if (special[p]) {
          for (std::uint64_t q = p; p + q <= n; ++q) qs.push_back(q);
        } else {
          for (std::uint64_t v : specials) {
            if (v >= p && p + v <= n) qs.push_back(v);
            if (v >= 2 * p) qs.push_back(v - p);
          }
          std::sort(qs.begin(), qs.end());
          qs.erase(std::unique(qs.begin(), qs.end()), qs.end());
        }
        for (std::uint64_t q : qs) {
          ++report.pairs_checked;
          if (check.violated(p, q, report.exact_multiplies)) {
            note(p, q);
            break;
          }
        }
      }
      break;
    }
  }
  if (first) {
    const auto [p, q] = *first;
    report.violation = PairViolation{p, q, a[p + q], a[p] * a[q]};
  }
  return report;
}

DerivativeReport check_derivative_condition(const SeqView& seq, unsigned long d,
                                            std::uint64_t big_n) {
  if (d < 2) throw std::invalid_argument("derivative condition needs d >= 2");
  DerivativeReport report;
  report.d = d;
  report.big_n = big_n;
  if (big_n <= seq.first()) return report;
  const Dense a(seq, big_n);
  const std::uint64_t start = seq.first() + 1;
  std::vector<Int> diff(big_n + 1);
  std::vector<unsigned long> bits(big_n + 1, 0);
  for (std::uint64_t x = start; x <= big_n; ++x) {
    diff[x] = a[x] - a[x - 1];
    bits[x] = bit_length(abs(diff[x]));
  }
  for (std::uint64_t n = start; d * n <= big_n; ++n) {
    const Int& dn = diff[n];
    for (std::uint64_t m = n; m <= d * n; ++m) {
      ++report.pairs_checked;
      const Int& dm = diff[m];
      if (dn > 0 && dm >= 0) {
        // a'(n)^d >= 2^(d (bits - 1)); a'(m) < 2^bits(m).
        if (bits[m] <= d * (bits[n] - 1)) continue;
        if (bits[m] >= d * bits[n] + 1) {
          report.violation = DerivativeViolation{n, m, d, dm, ipow(dn, d)};
          return report;
        }
      }
      const Int rhs = ipow(dn, d);
      if (dm > rhs) {
        report.violation = DerivativeViolation{n, m, d, dm, rhs};
        return report;
      }
    }
  }
  return report;
}

P2Result evaluate_p2(const SeqView& seq, std::uint64_t c, std::uint64_t d,
                     std::uint64_t n) {
  if (c == 0 || d == 0 || c * n < c + 1) {
    throw std::invalid_argument("evaluate_p2 needs C, D >= 1 and Cn - C >= 1");
  }
  const std::uint64_t top = 2 * c * d * n;
  P2Result r;
  r.lhs = seq.at(top) - seq.at(top - c);
  const Nat base = seq.at(c * d * n) - seq.at(c * n - c);
  r.rhs = 2 * nat(d) * nat(d) * nat(n) * ipow(base, static_cast<unsigned long>(2 * d));
  r.holds = r.lhs <= r.rhs;
  return r;
}

Witness find_witness(const GrowthTable& table, std::uint64_t c) {
  const Schedule& s = table.schedule();
  if (!s.certified()) {
    throw UncertifiedSchedule("witness requires a certified schedule");
  }
  if (c == 0 || c > s.depth()) {
    throw OutOfRange("C=" + std::to_string(c) + " needs a schedule of depth " +
                     std::to_string(c));
  }
  const ScheduleEntry& e = s.entries[c - 1];
  Witness w;
  w.c = c;
  w.k = c;
  w.n = e.m + 1;
  w.d = e.d * e.m / (e.m + 1);
  const std::uint64_t dn = e.d * e.n;
  const std::uint64_t top = 2 * c * w.d * w.n;
  auto require = [&](bool ok, const std::string& what) {
    if (!ok) throw RecipeRangeViolated("witness recipe: " + what, "C13");
  };
  require(e.n == e.k * e.m, "n_k = k m_k");
  require(2 * w.d >= e.d && w.d <= e.d, "d_k/2 <= D <= d_k");
  require(top <= 2 * dn, "2CDn <= 2 d_k n_k");
  require(top - c >= dn, "2CDn - C >= d_k n_k");
  require(c * w.n - c == e.n, "Cn - C = n_k");
  require(c * w.d * w.n <= dn, "CDn <= d_k n_k");
  if (top > table.horizon()) {
    throw OutOfRange("witness needs f up to " + std::to_string(top) +
                     ", table ends at " + std::to_string(table.horizon()));
  }
  const P2Result r = evaluate_p2(SeqView::of(table, top), c, w.d, w.n);
  if (r.holds) {
    throw NotViolated("recipe witness does not violate the inequality");
  }
  w.lhs = r.lhs;
  w.rhs = r.rhs;
  return w;
}

DominanceReport check_dominance(const GrowthTable& table, const Omega& omega) {
  DominanceReport r;
  const Schedule& s = table.schedule();
  r.lo = s.entries.empty() ? 1 : s.entries[0].n;
  r.hi = table.horizon();
  if (r.lo > r.hi) return r;
  table.scan(r.lo, r.hi, [&](std::uint64_t x, const Nat& v) {
    if (r.first_failure) return;
    ++r.checked;
    const RationalPow2 e(omega.at(x) * nat(x));
    if (cmp_nat_pow2(v, e) < 0) r.first_failure = x;
  });
  return r;
}

}  // namespace growthlab
