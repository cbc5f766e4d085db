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

// Test-only reference implementations. Nothing in here calls the code paths
// it is used to check: powers are cleared by integer exponentiation, floors
// come from integer roots, and scans are plain nested loops.

#ifndef GROWTHLAB_TESTS_ORACLES_H_
#define GROWTHLAB_TESTS_ORACLES_H_

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "growthlab/exact.h"

namespace growthlab::testing_oracles {

inline Nat random_nat(std::mt19937_64& rng, unsigned long bits) {
  Nat v = 0;
  for (unsigned long i = 0; i < bits; i += 32) {
    v <<= 32;
    v += static_cast<unsigned long>(rng() & 0xffffffffu);
  }
  mpz_fdiv_r_2exp(v.get_mpz_t(), v.get_mpz_t(), bits);
  return v;
}

// (a, e) with a up to max_bits bits and e = p/q, q in 2..64, |p| < 4q.
inline std::pair<Nat, RationalPow2> random_floor_case(std::mt19937_64& rng,
                                                      unsigned long max_bits) {
  const Nat a = 1 + random_nat(rng, 1 + rng() % max_bits);
  const unsigned long q = 2 + rng() % 63;
  const long p = static_cast<long>(rng() % (8 * q)) - static_cast<long>(4 * q);
  return {a, RationalPow2(p, q)};
}

// sign of (L 2^s)^q - 2^p, all integers.
inline int dyadic_power_vs_pow2(const Int& mant, long s, const RationalPow2& e) {
  const unsigned long q = e.denom().get_ui();
  const long p = e.numer().get_si();
  Int lhs = ipow(mant, q);
  Int rhs = 1;
  const long exp = s * static_cast<long>(q) - p;
  if (exp >= 0) {
    lhs <<= static_cast<unsigned long>(exp);
  } else {
    rhs <<= static_cast<unsigned long>(-exp);
  }
  return cmp(lhs, rhs);
}

inline bool dyadic_le_pow2(const Int& mant, long s, const RationalPow2& e) {
  return mant <= 0 || dyadic_power_vs_pow2(mant, s, e) <= 0;
}

inline bool pow2_le_dyadic(const RationalPow2& e, const Int& mant, long s) {
  return mant > 0 && dyadic_power_vs_pow2(mant, s, e) >= 0;
}

inline std::strong_ordering cmp_nat_pow2_naive(const Nat& n,
                                               const RationalPow2& e) {
  return dyadic_power_vs_pow2(n, 0, e) <=> 0;
}

// r = floor(a 2^e)  <=>  r^q <= a^q 2^p < (r+1)^q
inline bool floor_sandwich_holds(const Nat& a, const RationalPow2& e,
                                 const Nat& r) {
  const unsigned long q = e.denom().get_ui();
  const long p = e.numer().get_si();
  Int target = ipow(a, q);
  Int low = ipow(r, q);
  Int high = ipow(r + 1, q);
  if (p >= 0) {
    target <<= static_cast<unsigned long>(p);
  } else {
    low <<= static_cast<unsigned long>(-p);
    high <<= static_cast<unsigned long>(-p);
  }
  return low <= target && target < high;
}

// floor(2^(p/q) 2^bits) by an integer root; requires p + q bits >= 0.
inline Int scaled_pow2_floor(const RationalPow2& e, unsigned long bits) {
  const unsigned long q = e.denom().get_ui();
  const long top = e.numer().get_si() + static_cast<long>(q * bits);
  if (top < 0) return 0;
  return iroot(pow2(static_cast<unsigned long>(top)), q);
}

// Sign of sum c_i 2^(e_i) from integer-root enclosures at growing
// precision. Exact ties between irrational sums are not detected; callers
// only pass sums that are rational or nonzero.
inline int oracle_sum_sign(const Pow2Sum& sum) {
  for (unsigned long bits = 64; bits <= (1ul << 17); bits *= 2) {
    Int lo = 0, hi = 0;
    for (const auto& t : sum) {
      const Int v = scaled_pow2_floor(t.exponent, bits);
      const Int v_hi = t.exponent.is_integer() && v > 0 ? v : v + 1;
      if (t.coeff >= 0) {
        lo += t.coeff * v;
        hi += t.coeff * v_hi;
      } else {
        lo += t.coeff * v_hi;
        hi += t.coeff * v;
      }
    }
    if (lo > 0) return 1;
    if (hi < 0) return -1;
    if (lo == 0 && hi == 0) return 0;
  }
  throw std::runtime_error("oracle_sum_sign: not separated");
}

// The constructed function straight from its definition, with geometric
// steps taken as integer roots: f(x) = iroot(2 f(x-1)^Q, Q), Q = 2 d_1..d_k.
// blocks = {(d_k, n_k)}; values[x - 1] = f(x).
inline std::vector<Nat> naive_growth_function(
    const std::vector<std::pair<std::uint64_t, std::uint64_t>>& blocks,
    std::uint64_t horizon) {
  std::vector<Nat> f(horizon);
  unsigned long q = 0;
  std::size_t block = 0;
  bool arithmetic = false;
  for (std::uint64_t x = 1; x <= horizon; ++x) {
    if (block < blocks.size() && x == blocks[block].second + 1) {
      arithmetic = true;
    }
    if (block < blocks.size() &&
        x == blocks[block].first * blocks[block].second + 1) {
      arithmetic = false;
      q = (q == 0 ? 2 : q) * static_cast<unsigned long>(blocks[block].first);
      ++block;
    }
    if (block == 0 && !arithmetic) {
      f[x - 1] = pow2(static_cast<unsigned long>(x));
    } else if (arithmetic) {
      f[x - 1] = f[x - 2] + static_cast<unsigned long>(x + 1);
    } else {
      f[x - 1] = iroot(2 * ipow(f[x - 2], q), q);
    }
  }
  return f;
}

// Mixture of sequences that pass and fail the submultiplicative and
// derivative checks.
std::vector<Nat> random_sequence(std::mt19937_64& rng, std::uint64_t len) {
  auto small = [](std::uint64_t v) { return Nat(static_cast<unsigned long>(v)); };
  std::vector<Nat> v(len);
  switch (rng() % 5) {
    case 0:  // arbitrary small values
      for (auto& x : v) x = small(1 + rng() % 1000);
      break;
    case 1:  // powers of two with small noise
      for (std::uint64_t i = 0; i < len; ++i) v[i] = pow2(i + 1) + small(rng() % 4);
      break;
    case 2:  // linear
      for (std::uint64_t i = 0; i < len; ++i) v[i] = small(i + 2 + rng() % 2);
      break;
    case 3: {  // increasing with random increments
      Nat acc = 1;
      for (auto& x : v) {
        acc += small(rng() % 50);
        x = acc;
      }
      break;
    }
    default: {  // exponential-ish with a random ratio 2^(1/r)
      const unsigned long r = 1 + rng() % 6;
      for (std::uint64_t i = 0; i < len; ++i) {
        v[i] = iroot(pow2(i + 1), r) + small(rng() % 3);
      }
    }
  }
  return v;
}

// First (p, q), p <= q, p + q <= n, with f(p+q) > f(p) f(q); f indexed from
// `first`.
inline std::optional<std::pair<std::uint64_t, std::uint64_t>>
naive_submultiplicative(const std::vector<Int>& f, std::uint64_t first,
                        std::uint64_t n) {
  for (std::uint64_t p = std::max<std::uint64_t>(first, 1); p <= n; ++p) {
    for (std::uint64_t q = p; p + q <= n; ++q) {
      if (f[p + q - first] > f[p - first] * f[q - first]) {
        return std::make_pair(p, q);
      }
    }
  }
  return std::nullopt;
}

// First (n, m) with n <= m <= d n <= N and g'(m) > g'(n)^d.
inline std::optional<std::pair<std::uint64_t, std::uint64_t>>
naive_derivative_condition(const std::vector<Int>& g, std::uint64_t first,
                           unsigned long d, std::uint64_t big_n) {
  auto diff = [&](std::uint64_t x) -> Int { return g[x - first] - g[x - first - 1]; };
  for (std::uint64_t n = first + 1; d * n <= big_n; ++n) {
    for (std::uint64_t m = n; m <= d * n; ++m) {
      Int rhs;
      mpz_pow_ui(rhs.get_mpz_t(), diff(n).get_mpz_t(), d);
      if (diff(m) > rhs) return std::make_pair(n, m);
    }
  }
  return std::nullopt;
}

// Words of length `len` over {0..g-1} with no forbidden factor, enumerated.
inline std::uint64_t naive_word_count(unsigned g,
                                      const std::vector<std::string>& forbidden,
                                      unsigned len) {
  std::uint64_t total = 1;
  for (unsigned i = 0; i < len; ++i) total *= g;
  std::uint64_t count = 0;
  std::string word(len, '0');
  for (std::uint64_t code = 0; code < total; ++code) {
    std::uint64_t c = code;
    for (unsigned i = 0; i < len; ++i) {
      word[len - 1 - i] = static_cast<char>('0' + c % g);
      c /= g;
    }
    bool ok = true;
    for (const auto& w : forbidden) {
      if (word.find(w) != std::string::npos) {
        ok = false;
        break;
      }
    }
    if (ok) ++count;
  }
  return count;
}

}  // namespace growthlab::testing_oracles

#endif  // GROWTHLAB_TESTS_ORACLES_H_
