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

#include "growthlab/exact.h"

#include <algorithm>
#include <cctype>
#include <limits>
#include <map>
#include <utility>

namespace growthlab {
namespace {

constexpr unsigned long kInitialGuardBits = 32;
constexpr unsigned long kMaxGuardBits = 4096;
constexpr unsigned long kCompareStartBits = 64;
constexpr unsigned long kCompareExtraCapBits = 8192;
// Above this many bits, n^den is not formed explicitly.
constexpr unsigned long kExactPowerBitBudget = 1ul << 22;

long to_long(const Int& v) {
  if (!v.fits_slong_p()) {
    throw std::overflow_error("exponent out of machine range: " + v.get_str());
  }
  return v.get_si();
}

Int shift(const Int& v, long s) {
  Int r;
  if (s >= 0) {
    mpz_mul_2exp(r.get_mpz_t(), v.get_mpz_t(), static_cast<unsigned long>(s));
  } else {
    mpz_fdiv_q_2exp(r.get_mpz_t(), v.get_mpz_t(),
                    static_cast<unsigned long>(-s));
  }
  return r;
}

Int ceil_div(const Int& a, const Int& b) {
  Int r;
  mpz_cdiv_q(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

// An enclosure [lo, hi] / 2^w of a real in fixed point.
struct Fixed {
  Int lo;
  Int hi;
  unsigned long w = 0;
};

unsigned long guard_for(unsigned long precision) {
  return 2 * bit_length(Int(precision + 64)) + 8;
}

// ln 2 = 2 atanh(1/3) = sum_j 2 / ((2j+1) 3^(2j+1)). Every computed term is
// the exact floor of the true term; the tail after the first zero power is
// below 9/8 of a unit.
Fixed ln2_fixed(unsigned long w) {
  Int power = pow2(w + 1) / 3;
  Int sum = 0;
  unsigned long terms = 0;
  for (unsigned long j = 0; power != 0; ++j) {
    sum += power / (2 * j + 1);
    power /= 9;
    ++terms;
  }
  return Fixed{sum, sum + terms + 2, w};
}

// exp(t) for t in [t_lo, t_hi] / 2^w with 0 <= t < 1. The lower series uses
// floored terms and drops the tail, the upper one ceils every term and adds
// a one-unit tail bound (terms shrink by at least 3x once k >= 2).
Fixed exp_series(const Int& t_lo, const Int& t_hi, unsigned long w) {
  const Int one = pow2(w);
  Int lo = one;
  {
    Int term = one;
    for (unsigned long k = 1;; ++k) {
      term = shift(term * t_lo, -static_cast<long>(w)) / k;
      if (term == 0) break;
      lo += term;
    }
  }
  Int hi = one;
  {
    Int term = one;
    for (unsigned long k = 1;; ++k) {
      term = ceil_div(term * t_hi, one * k);
      hi += term;
      if (k >= 2 && term <= 1) break;
    }
    hi += 1;
  }
  return Fixed{lo, hi, w};
}

// Encloses 2^(r/q), 0 <= r < q, at w fractional bits. The series runs on
// t / 2^h and the result is squared h times, so the working precision
// carries h extra bits for the error growth of the squarings.
class Exp2Engine {
 public:
  explicit Exp2Engine(unsigned long w)
      : w_(w),
        halvings_(Int(sqrt(Int(w))).get_ui() / 2),
        wp_(w + halvings_ + guard_for(w)),
        ln2_(ln2_fixed(wp_)) {}

  unsigned long w() const { return w_; }

  Fixed frac(const Int& r, const Int& q) const {
    if (r == 0) {
      Int one = pow2(w_);
      return Fixed{one, one, w_};
    }
    const Int scale_down = pow2(halvings_);
    Int t_lo = (r * ln2_.lo) / (q * scale_down);
    Int t_hi = ceil_div(r * ln2_.hi, q * scale_down);
    Fixed e = exp_series(t_lo, t_hi, wp_);
    const Int one = pow2(wp_);
    for (unsigned long i = 0; i < halvings_; ++i) {
      e.lo = shift(e.lo * e.lo, -static_cast<long>(wp_));
      e.hi = ceil_div(e.hi * e.hi, one);
    }
    const Int drop = pow2(wp_ - w_);
    return Fixed{shift(e.lo, -static_cast<long>(wp_ - w_)),
                 ceil_div(e.hi, drop), w_};
  }

 private:
  unsigned long w_;
  unsigned long halvings_;
  unsigned long wp_;
  Fixed ln2_;
};

// A sum regrouped by fractional exponent: value = sum_f mant_f * 2^(s_f + f).
struct Group {
  Int mant;
  long shift;
};

struct MpqLess {
  bool operator()(const mpq_class& a, const mpq_class& b) const {
    return cmp(a, b) < 0;
  }
};
using GroupedSum = std::map<mpq_class, Group, MpqLess>;

GroupedSum group_terms(const Pow2Sum& sum, bool negate_all) {
  std::map<mpq_class, std::vector<std::pair<Int, long>>, MpqLess> raw;
  for (const auto& term : sum) {
    if (term.coeff == 0) continue;
    const Int fl = term.exponent.floor_exponent();
    const mpq_class fr = term.exponent.exponent() - mpq_class(fl);
    raw[fr].emplace_back(negate_all ? Int(-term.coeff) : term.coeff,
                         to_long(fl));
  }
  GroupedSum grouped;
  for (auto& [fr, parts] : raw) {
    long low = parts.front().second;
    for (const auto& p : parts) low = std::min(low, p.second);
    Int mant = 0;
    for (const auto& p : parts) mant += shift(p.first, p.second - low);
    grouped.emplace(fr, Group{mant, low});
  }
  return grouped;
}

void merge_into(GroupedSum& into, const GroupedSum& from) {
  for (const auto& [fr, g] : from) {
    auto it = into.find(fr);
    if (it == into.end()) {
      into.emplace(fr, g);
      continue;
    }
    const long low = std::min(it->second.shift, g.shift);
    it->second.mant =
        shift(it->second.mant, it->second.shift - low) + shift(g.mant, g.shift - low);
    it->second.shift = low;
  }
}

void drop_zero_groups(GroupedSum& g) {
  std::erase_if(g, [](const auto& kv) { return kv.second.mant == 0; });
}

bool is_rational(const GroupedSum& g) {
  return g.empty() || (g.size() == 1 && g.begin()->first == 0);
}

// Enclosure of the whole grouped sum at a common scale: [lo, hi] * 2^scale.
CertifiedInterval enclose(const GroupedSum& g, unsigned long precision) {
  const unsigned long w = precision + guard_for(precision);
  const Exp2Engine engine(w);
  long low = std::numeric_limits<long>::max();
  for (const auto& [fr, grp] : g) low = std::min(low, grp.shift);
  CertifiedInterval out{0, 0, low - static_cast<long>(w)};
  for (const auto& [fr, grp] : g) {
    const Fixed e = engine.frac(fr.get_num(), fr.get_den());
    const long up = grp.shift - low;
    const Int a = shift(grp.mant * e.lo, up);
    const Int b = shift(grp.mant * e.hi, up);
    if (grp.mant >= 0) {
      out.lo += a;
      out.hi += b;
    } else {
      out.lo += b;
      out.hi += a;
    }
  }
  return out;
}

unsigned long magnitude_bits(const GroupedSum& g) {
  long low = std::numeric_limits<long>::max();
  for (const auto& [fr, grp] : g) low = std::min(low, grp.shift);
  unsigned long bits = 0;
  for (const auto& [fr, grp] : g) {
    bits = std::max(bits, bit_length(grp.mant) +
                              static_cast<unsigned long>(grp.shift - low));
  }
  return bits;
}

std::strong_ordering sign_of(const GroupedSum& diff) {
  if (diff.empty()) return std::strong_ordering::equal;
  if (is_rational(diff)) {
    const int s = sgn(diff.begin()->second.mant);
    return s <=> 0;
  }
  const unsigned long cap = magnitude_bits(diff) + kCompareExtraCapBits;
  for (unsigned long p = kCompareStartBits;; p *= 2) {
    const CertifiedInterval iv = enclose(diff, p);
    if (iv.lo > 0) return std::strong_ordering::greater;
    if (iv.hi < 0) return std::strong_ordering::less;
    if (p > cap) {
      throw UnresolvedError("sum comparison not separated at " +
                            std::to_string(p) + " bits");
    }
  }
}

}  // namespace

RationalPow2::RationalPow2(const mpq_class& exponent) : exponent_(exponent) {
  exponent_.canonicalize();
}

RationalPow2::RationalPow2(const Int& numer, const Int& denom) {
  if (denom <= 0) {
    throw std::invalid_argument("RationalPow2 denominator must be positive");
  }
  exponent_ = mpq_class(numer, denom);
  exponent_.canonicalize();
}

Int RationalPow2::floor_exponent() const {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), exponent_.get_num_mpz_t(),
             exponent_.get_den_mpz_t());
  return q;
}

Int RationalPow2::frac_numer() const {
  Int r;
  mpz_fdiv_r(r.get_mpz_t(), exponent_.get_num_mpz_t(),
             exponent_.get_den_mpz_t());
  return r;
}

std::string RationalPow2::to_string() const {
  return "2^(" + exponent_.get_str() + ")";
}

Pow2Approximation::Pow2Approximation(RationalPow2 e, unsigned long precision)
    : exponent_(std::move(e)), precision_(precision) {
  const long whole = to_long(exponent_.floor_exponent());
  if (exponent_.is_integer()) {
    interval_ = CertifiedInterval{1, 1, whole};
    return;
  }
  const unsigned long w = precision_ + guard_for(precision_);
  const Fixed frac = Exp2Engine(w).frac(exponent_.frac_numer(), exponent_.denom());
  interval_ = CertifiedInterval{frac.lo, frac.hi, whole - static_cast<long>(w)};
}

Pow2Approximation Pow2Approximation::refined() const {
  return Pow2Approximation(exponent_, precision_ * 2);
}

std::optional<Nat> Pow2Approximation::try_floor_mul(const Nat& a) const {
  Nat lo = shift(a * interval_.lo, interval_.scale);
  if (interval_.lo == interval_.hi) return lo;
  Nat hi = shift(a * interval_.hi, interval_.scale);
  if (lo == hi) return lo;
  return std::nullopt;
}

Nat iroot(const Nat& n, unsigned long m) {
  if (m == 0) throw std::invalid_argument("iroot: degree must be >= 1");
  if (n < 0) throw std::domain_error("iroot: negative radicand");
  Nat r;
  mpz_root(r.get_mpz_t(), n.get_mpz_t(), m);
  return r;
}

Nat floor_mul_pow2(const Nat& a, const RationalPow2& e) {
  if (a < 0) throw std::domain_error("floor_mul_pow2: negative operand");
  if (a == 0) return 0;
  const long whole = to_long(e.floor_exponent());
  if (e.is_integer()) return shift(a, whole);
  const long base = static_cast<long>(bit_length(a)) + whole;
  for (unsigned long guard = kInitialGuardBits; guard <= kMaxGuardBits;
       guard *= 2) {
    const long p = std::max<long>(base + static_cast<long>(guard),
                                  static_cast<long>(guard));
    const Pow2Approximation approx(e, static_cast<unsigned long>(p));
    if (auto v = approx.try_floor_mul(a)) return *v;
  }
  throw UnresolvedError("floor_mul_pow2: no separation within guard cap for " +
                        e.to_string());
}

Nat floor_mul_pow2_by_root(const Nat& a, const RationalPow2& e) {
  if (a < 0) throw std::domain_error("floor_mul_pow2: negative operand");
  const Int p = e.numer();
  const unsigned long q = e.denom().get_ui();
  // floor((floor(y))^(1/q)) = floor(y^(1/q)) covers negative p.
  return iroot(shift(ipow(a, q), to_long(p)), q);
}

std::strong_ordering cmp_nat_pow2(const Nat& n, const RationalPow2& e) {
  if (n <= 0) return std::strong_ordering::less;
  const unsigned long len = bit_length(n);
  // 2^(len-1) <= n < 2^len
  if (cmp(e.exponent(), mpq_class(len - 1)) < 0) {
    return std::strong_ordering::greater;
  }
  if (cmp(e.exponent(), mpq_class(len)) >= 0) {
    return std::strong_ordering::less;
  }
  const unsigned long u = e.numer().get_ui();
  const unsigned long v = e.denom().get_ui();
  if (len <= kExactPowerBitBudget / v) {
    const int c = cmp(ipow(n, v), pow2(u));
    return c <=> 0;
  }
  return compare(Pow2Sum{{n, RationalPow2(0, 1)}},
                 Pow2Sum{{Int(1), e}});
}

std::strong_ordering compare(const Pow2Sum& lhs, const Pow2Sum& rhs) {
  GroupedSum diff = group_terms(lhs, false);
  merge_into(diff, group_terms(rhs, true));
  drop_zero_groups(diff);
  return sign_of(diff);
}

std::strong_ordering cmp_nat_sum_pow2(const Nat& n, const Pow2Sum& terms) {
  if (terms.empty()) {
    throw std::invalid_argument("cmp_nat_sum_pow2: at least one term");
  }
  for (const auto& t : terms) {
    if (t.coeff < 0) {
      throw std::invalid_argument("cmp_nat_sum_pow2: negative coefficient");
    }
  }
  return compare(Pow2Sum{{n, RationalPow2(0, 1)}}, terms);
}

Int floor_of(const Pow2Sum& sum) {
  GroupedSum g = group_terms(sum, false);
  drop_zero_groups(g);
  if (g.empty()) return 0;
  if (is_rational(g)) {
    const Group& grp = g.begin()->second;
    return shift(grp.mant, grp.shift);
  }
  const unsigned long cap = magnitude_bits(g) + kCompareExtraCapBits;
  for (unsigned long p = kCompareStartBits;; p *= 2) {
    const CertifiedInterval iv = enclose(g, p);
    Int lo = shift(iv.lo, iv.scale);
    Int hi = shift(iv.hi, iv.scale);
    if (lo == hi) return lo;
    if (p > cap) throw UnresolvedError("floor_of: not separated");
  }
}

Int ceil_of(const Pow2Sum& sum) {
  Pow2Sum neg = sum;
  for (auto& t : neg) t.coeff = -t.coeff;
  return -floor_of(neg);
}

std::string to_hex(const Int& value) {
  if (value < 0) return "-0x" + Int(-value).get_str(16);
  return "0x" + value.get_str(16);
}

Int from_hex(const std::string& text) {
  std::string body = text;
  bool negative = false;
  if (!body.empty() && body[0] == '-') {
    negative = true;
    body.erase(0, 1);
  }
  if (body.size() < 3 || body[0] != '0' || (body[1] != 'x' && body[1] != 'X')) {
    throw std::invalid_argument("not a 0x-prefixed hex string: " + text);
  }
  body.erase(0, 2);
  for (char c : body) {
    if (!std::isxdigit(static_cast<unsigned char>(c))) {
      throw std::invalid_argument("not a 0x-prefixed hex string: " + text);
    }
  }
  Int v(body, 16);
  return negative ? Int(-v) : v;
}

}  // namespace growthlab
