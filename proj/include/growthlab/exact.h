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

// Certified arbitrary-precision arithmetic around rational powers of two.
//
// Everything here is exact: comparisons return the true order and floors are
// the true floors. Irrational quantities 2^(p/q) are handled through
// certified dyadic enclosures that are refined until they decide the
// question, with exact integer fallbacks where the answer is rational.

#ifndef GROWTHLAB_EXACT_H_
#define GROWTHLAB_EXACT_H_

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace growthlab {

// Nonnegative by contract. Kept as the GMP value type so arithmetic stays
// exact and cheap to copy around.
using Nat = mpz_class;
using Int = mpz_class;

// Raised when a refinement cap is reached before an enclosure separates.
class UnresolvedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The real number 2^(numer/denom), with the exponent kept in lowest terms.
class RationalPow2 {
 public:
  RationalPow2() : exponent_(0) {}
  explicit RationalPow2(const mpq_class& exponent);
  RationalPow2(const Int& numer, const Int& denom);
  RationalPow2(long numer, unsigned long denom)
      : RationalPow2(Int(numer), Int(denom)) {}

  const mpq_class& exponent() const { return exponent_; }
  Int numer() const { return exponent_.get_num(); }
  Int denom() const { return exponent_.get_den(); }
  bool is_integer() const { return exponent_.get_den() == 1; }

  // floor(numer/denom) and the remainder r in [0, denom).
  Int floor_exponent() const;
  Int frac_numer() const;

  std::string to_string() const;

  friend bool operator==(const RationalPow2& a, const RationalPow2& b) {
    return a.exponent_ == b.exponent_;
  }

 private:
  mpq_class exponent_;
};

// [lo, hi] * 2^scale, lo <= hi, enclosing some real target.
struct CertifiedInterval {
  Int lo;
  Int hi;
  long scale = 0;

  Int width_mantissa() const { return hi - lo; }
};

// 2^e enclosed with `precision` fractional bits below 2^floor(e): the width
// is at most 2^(floor(e) - precision).
class Pow2Approximation {
 public:
  Pow2Approximation(RationalPow2 e, unsigned long precision);

  const RationalPow2& exponent() const { return exponent_; }
  unsigned long precision() const { return precision_; }
  const CertifiedInterval& interval() const { return interval_; }

  // Same target at twice the precision.
  Pow2Approximation refined() const;

  // floor(a * 2^e) when the enclosure decides it.
  std::optional<Nat> try_floor_mul(const Nat& a) const;

 private:
  RationalPow2 exponent_;
  unsigned long precision_;
  CertifiedInterval interval_;
};

// Largest r with r^m <= n.
Nat iroot(const Nat& n, unsigned long m);

// floor(a * 2^e). Integer exponents are shifts; otherwise the enclosure is
// refined from bits(a)+32 guard bits, doubling the guard up to 4096.
Nat floor_mul_pow2(const Nat& a, const RationalPow2& e);

// Same quantity through integer roots only: iroot(2^p a^q, q). Exponentially
// more expensive in q * bits(a); used as the cross-check oracle.
Nat floor_mul_pow2_by_root(const Nat& a, const RationalPow2& e);

// Exact order of n against 2^e. n = 0 compares Less against every power.
std::strong_ordering cmp_nat_pow2(const Nat& n, const RationalPow2& e);

struct Pow2Term {
  Int coeff;
  RationalPow2 exponent;
};
using Pow2Sum = std::vector<Pow2Term>;

// Exact order of two finite sums of coeff * 2^(p/q). Throws UnresolvedError
// only if the refinement cap is hit.
std::strong_ordering compare(const Pow2Sum& lhs, const Pow2Sum& rhs);

// n against sum coeff_i * 2^(e_i); coefficients must be nonnegative.
std::strong_ordering cmp_nat_sum_pow2(const Nat& n, const Pow2Sum& terms);

// floor and ceiling of a finite sum (may be negative).
Int floor_of(const Pow2Sum& sum);
Int ceil_of(const Pow2Sum& sum);

// "0x..." lowercase hex and its inverse.
std::string to_hex(const Int& value);
Int from_hex(const std::string& text);

inline unsigned long bit_length(const Int& v) {
  return v == 0 ? 0 : mpz_sizeinbase(v.get_mpz_t(), 2);
}

inline Int pow2(unsigned long e) {
  Int r;
  mpz_ui_pow_ui(r.get_mpz_t(), 2, e);
  return r;
}

inline Int ipow(const Int& base, unsigned long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

}  // namespace growthlab

#endif  // GROWTHLAB_EXACT_H_
