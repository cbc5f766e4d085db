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

// Growth of monomial algebras: gamma(n) counts the words of length <= n over
// g letters that avoid a finite set of forbidden factors (the empty word
// included). Letters are the digits 0..g-1.

#ifndef GROWTHLAB_ALGEBRA_H_
#define GROWTHLAB_ALGEBRA_H_

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "growthlab/exact.h"

namespace growthlab {

class MonomialAlgebraSpec {
 public:
  // Validates letters and drops forbidden words that contain another one.
  MonomialAlgebraSpec(unsigned alphabet_size, std::vector<std::string> forbidden);

  unsigned alphabet_size() const { return g_; }
  // Reduced, sorted, duplicate-free.
  const std::vector<std::string>& forbidden() const { return forbidden_; }
  // Words removed by the reduction.
  const std::vector<std::string>& dropped() const { return dropped_; }
  std::size_t longest_forbidden() const;

 private:
  unsigned g_;
  std::vector<std::string> forbidden_;
  std::vector<std::string> dropped_;
};

// Aho-Corasick automaton over the forbidden words, restricted to live states
// (runs that have not completed a forbidden factor). State 0 is the root.
class FactorAutomaton {
 public:
  explicit FactorAutomaton(const MonomialAlgebraSpec& spec);

  std::size_t states() const { return next_.size(); }
  unsigned letters() const { return g_; }
  // Next live state, or -1 when the letter completes a forbidden word.
  int next(std::size_t state, unsigned letter) const { return next_[state][letter]; }
  // Whether the word never completes a forbidden factor.
  bool accepts(const std::string& word) const;

 private:
  unsigned g_;
  std::vector<std::vector<int>> next_;
};

// Number of surviving words of exactly this length.
Nat word_count(const MonomialAlgebraSpec& spec, std::uint64_t length);

struct AlgebraGrowth {
  std::vector<Nat> gamma;  // gamma(0..N)
  std::vector<Nat> words;  // words[n] = gamma(n) - gamma(n-1), words[0] = 1
  // Every letter is forbidden, so gamma is constantly 1.
  bool degenerate = false;
};

AlgebraGrowth growth_table(const MonomialAlgebraSpec& spec, std::uint64_t n);

class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::uint64_t kBruteForceBudget = 10'000'000;

// Enumerates all g^length words and scans each for forbidden factors.
Nat brute_force_count(const MonomialAlgebraSpec& spec, std::uint64_t length,
                      std::uint64_t budget = kBruteForceBudget);

// c_1..c_s of the transfer matrix's characteristic polynomial
// x^s + c_1 x^(s-1) + ... + c_s, so that a(l) = -sum c_i a(l - i) for l >= s.
std::vector<Int> characteristic_recurrence(const MonomialAlgebraSpec& spec);

// Word counts a(0..length) from the first s values and the recurrence.
std::vector<Nat> recurrence_counts(const MonomialAlgebraSpec& spec,
                                   std::uint64_t length);

}  // namespace growthlab

#endif  // GROWTHLAB_ALGEBRA_H_
