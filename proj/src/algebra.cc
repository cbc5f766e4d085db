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

#include "growthlab/algebra.h"

#include <algorithm>
#include <queue>

namespace growthlab {
namespace {

using Matrix = std::vector<std::vector<Int>>;

Matrix multiply(const Matrix& a, const Matrix& b) {
  const std::size_t n = a.size();
  Matrix c(n, std::vector<Int>(n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      if (a[i][k] == 0) continue;
      for (std::size_t j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
    }
  }
  return c;
}

// Live words of length 0..length ending in each state, summed per length.
std::vector<Nat> automaton_counts(const FactorAutomaton& a, std::uint64_t length) {
  std::vector<Nat> out;
  std::vector<Nat> cur(a.states(), 0), nxt(a.states());
  cur[0] = 1;
  out.push_back(1);
  for (std::uint64_t l = 1; l <= length; ++l) {
    std::fill(nxt.begin(), nxt.end(), 0);
    for (std::size_t s = 0; s < a.states(); ++s) {
      if (cur[s] == 0) continue;
      for (unsigned c = 0; c < a.letters(); ++c) {
        const int t = a.next(s, c);
        if (t >= 0) nxt[static_cast<std::size_t>(t)] += cur[s];
      }
    }
    cur.swap(nxt);
    Nat total = 0;
    for (const auto& v : cur) total += v;
    out.push_back(total);
  }
  return out;
}

}  // namespace

MonomialAlgebraSpec::MonomialAlgebraSpec(unsigned alphabet_size,
                                         std::vector<std::string> forbidden)
    : g_(alphabet_size) {
  if (g_ < 1 || g_ > 10) {
    throw std::invalid_argument("alphabet size must be in 1..10");
  }
  for (const auto& w : forbidden) {
    if (w.empty()) throw std::invalid_argument("forbidden words must be nonempty");
    for (char ch : w) {
      if (ch < '0' || ch >= static_cast<char>('0' + g_)) {
        throw std::invalid_argument("forbidden word '" + w +
                                    "' uses a letter outside 0.." +
                                    std::to_string(g_ - 1));
      }
    }
  }
  std::sort(forbidden.begin(), forbidden.end());
  forbidden.erase(std::unique(forbidden.begin(), forbidden.end()), forbidden.end());
  for (const auto& w : forbidden) {
    const bool redundant = std::any_of(
        forbidden.begin(), forbidden.end(), [&](const std::string& v) {
          return v != w && w.find(v) != std::string::npos;
        });
    (redundant ? dropped_ : forbidden_).push_back(w);
  }
}

std::size_t MonomialAlgebraSpec::longest_forbidden() const {
  std::size_t m = 0;
  for (const auto& w : forbidden_) m = std::max(m, w.size());
  return m;
}

FactorAutomaton::FactorAutomaton(const MonomialAlgebraSpec& spec)
    : g_(spec.alphabet_size()) {
  // Trie with failure links; goto_ is completed into a full transition table.
  std::vector<std::vector<int>> go(1, std::vector<int>(g_, -1));
  std::vector<char> terminal(1, 0);
  for (const auto& w : spec.forbidden()) {
    int s = 0;
    for (char ch : w) {
      const unsigned c = static_cast<unsigned>(ch - '0');
      if (go[s][c] < 0) {
        go[s][c] = static_cast<int>(go.size());
        go.emplace_back(g_, -1);
        terminal.push_back(0);
      }
      s = go[s][c];
    }
    terminal[s] = 1;
  }
  std::vector<int> fail(go.size(), 0);
  std::queue<int> bfs;
  for (unsigned c = 0; c < g_; ++c) {
    if (go[0][c] < 0) {
      go[0][c] = 0;
    } else {
      bfs.push(go[0][c]);
    }
  }
  while (!bfs.empty()) {
    const int s = bfs.front();
    bfs.pop();
    terminal[s] = terminal[s] || terminal[fail[s]];
    for (unsigned c = 0; c < g_; ++c) {
      const int t = go[s][c];
      if (t < 0) {
        go[s][c] = go[fail[s]][c];
      } else {
        fail[t] = s == 0 ? 0 : go[fail[s]][c];
        bfs.push(t);
      }
    }
  }
  std::vector<int> index(go.size(), -1);
  int live = 0;
  for (std::size_t s = 0; s < go.size(); ++s) {
    if (!terminal[s]) index[s] = live++;
  }
  next_.assign(static_cast<std::size_t>(live), std::vector<int>(g_, -1));
  for (std::size_t s = 0; s < go.size(); ++s) {
    if (terminal[s]) continue;
    for (unsigned c = 0; c < g_; ++c) next_[index[s]][c] = index[go[s][c]];
  }
}

bool FactorAutomaton::accepts(const std::string& word) const {
  int s = 0;
  for (char ch : word) {
    s = next_[static_cast<std::size_t>(s)][static_cast<unsigned>(ch - '0')];
    if (s < 0) return false;
  }
  return true;
}

Nat word_count(const MonomialAlgebraSpec& spec, std::uint64_t length) {
  return automaton_counts(FactorAutomaton(spec), length).back();
}

AlgebraGrowth growth_table(const MonomialAlgebraSpec& spec, std::uint64_t n) {
  AlgebraGrowth out;
  out.words = automaton_counts(FactorAutomaton(spec), n);
  Nat total = 0;
  for (const auto& w : out.words) {
    total += w;
    out.gamma.push_back(total);
  }
  out.degenerate = n >= 1 ? out.words[1] == 0 : word_count(spec, 1) == 0;
  return out;
}

Nat brute_force_count(const MonomialAlgebraSpec& spec, std::uint64_t length,
                      std::uint64_t budget) {
  const unsigned g = spec.alphabet_size();
  std::uint64_t total = 1;
  for (std::uint64_t i = 0; i < length; ++i) {
    if (total > budget / g) {
      throw BudgetExceeded(std::to_string(g) + "^" + std::to_string(length) +
                           " words exceed the enumeration budget");
    }
    total *= g;
  }
  if (total > budget) throw BudgetExceeded("enumeration budget exceeded");
  std::uint64_t count = 0;
  std::string word(length, '0');
  for (std::uint64_t code = 0; code < total; ++code) {
    std::uint64_t v = code;
    for (std::uint64_t i = 0; i < length; ++i) {
      word[length - 1 - i] = static_cast<char>('0' + v % g);
      v /= g;
    }
    bool ok = true;
    for (const auto& f : spec.forbidden()) {
      if (word.find(f) != std::string::npos) {
        ok = false;
        break;
      }
    }
    if (ok) ++count;
  }
  return Nat(static_cast<unsigned long>(count));
}

std::vector<Int> characteristic_recurrence(const MonomialAlgebraSpec& spec) {
  const FactorAutomaton a(spec);
  const std::size_t s = a.states();
  Matrix m(s, std::vector<Int>(s, 0));
  for (std::size_t i = 0; i < s; ++i) {
    for (unsigned c = 0; c < a.letters(); ++c) {
      const int t = a.next(i, c);
      if (t >= 0) m[i][static_cast<std::size_t>(t)] += 1;
    }
  }
  // Faddeev-LeVerrier: M_k = M M_{k-1} + c_{k-1} I, c_k = -tr(M M_k) / k.
  std::vector<Int> c(s + 1, 0);
  c[0] = 1;
  Matrix mk(s, std::vector<Int>(s, 0));
  for (std::size_t k = 1; k <= s; ++k) {
    Matrix next = multiply(m, mk);
    for (std::size_t i = 0; i < s; ++i) next[i][i] += c[k - 1];
    mk = std::move(next);
    const Matrix am = multiply(m, mk);
    Int trace = 0;
    for (std::size_t i = 0; i < s; ++i) trace += am[i][i];
    c[k] = -trace / Int(static_cast<unsigned long>(k));
  }
  return std::vector<Int>(c.begin() + 1, c.end());
}

std::vector<Nat> recurrence_counts(const MonomialAlgebraSpec& spec,
                                   std::uint64_t length) {
  const std::vector<Int> c = characteristic_recurrence(spec);
  const std::uint64_t s = c.size();
  std::vector<Nat> out = automaton_counts(FactorAutomaton(spec),
                                          std::min<std::uint64_t>(length, s));
  for (std::uint64_t l = out.size(); l <= length; ++l) {
    Int v = 0;
    for (std::uint64_t i = 1; i <= s; ++i) v -= c[i - 1] * out[l - i];
    out.push_back(v);
  }
  return out;
}

}  // namespace growthlab
