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

#include <gtest/gtest.h>

#include <random>

#include "oracles.h"

namespace growthlab {
namespace {

namespace oracles = testing_oracles;

Nat u(std::uint64_t v) { return Nat(static_cast<unsigned long>(v)); }

std::vector<Nat> free_algebra(unsigned g, std::uint64_t n) {
  // gamma(x) = 1 + g + ... + g^x
  std::vector<Nat> v;
  Nat total = 0, power = 1;
  for (std::uint64_t x = 0; x <= n; ++x) {
    total += power;
    power *= g;
    v.push_back(total);
  }
  return v;
}

Schedule certified_log() {
  ScheduleRequest req;
  req.omega = Omega::log();
  return build_schedule(req);
}

Schedule demo8() {
  ScheduleRequest req;
  req.mode = Mode::kDemo;
  req.n_overrides = {8};
  return build_schedule(req);
}

TEST(SeqViewTest, AccessorAndBounds) {
  const SeqView s(1, 10, [](std::uint64_t x) { return u(x * x); });
  EXPECT_EQ(s.at(7), 49);
  EXPECT_THROW(s.at(0), OutOfRange);
  EXPECT_THROW(s.at(11), OutOfRange);
  EXPECT_EQ(s.data(), nullptr);
}

TEST(SeqViewTest, WindowedTableIsMaterialized) {
  BuildOptions small;
  small.memory_budget = 100;
  const auto t = GrowthTable::build(demo8(), 60, small);
  ASSERT_FALSE(t.dense());
  const SeqView s = SeqView::of(t);
  EXPECT_EQ(s.last(), 60u);
  EXPECT_EQ(s.at(25), 601);
  EXPECT_NE(s.data(), nullptr);
}

TEST(IncreasingTest, Examples) {
  const auto t = GrowthTable::build(demo8(), 40);
  EXPECT_FALSE(check_increasing(SeqView::of(t), 1, 25));
  const std::vector<Nat> flat = {5, 5};
  EXPECT_EQ(check_increasing(SeqView(flat, 1), 1, 2), 1u);
  const auto g = free_algebra(2, 20);
  EXPECT_FALSE(check_increasing(SeqView(g, 0), 0, 20));
}

TEST(SubmulTest, PowersOfTwoAreTight) {
  std::vector<Nat> v;
  for (unsigned long x = 1; x <= 100; ++x) v.push_back(pow2(x));
  const auto r = check_submultiplicative(SeqView(v, 1), 100);
  EXPECT_TRUE(r.passed());
  EXPECT_EQ(r.pairs_checked, 2500u);
}

TEST(SubmulTest, CertifiedTableExhaustive) {
  const auto t = GrowthTable::build(certified_log(), 5000);
  const auto r = check_submultiplicative(SeqView::of(t), 5000);
  EXPECT_TRUE(r.passed());
  EXPECT_EQ(r.pairs_checked, 2500u * 2500u);
  EXPECT_LT(r.exact_multiplies, r.pairs_checked);
}

TEST(SubmulTest, AdversarialPowerSequenceMatchesOracle) {
  // floor(x^1.5) + 2
  std::vector<Nat> v;
  for (std::uint64_t x = 1; x <= 300; ++x) v.push_back(iroot(u(x * x * x), 2) + 2);
  const auto expected = oracles::naive_submultiplicative(v, 1, 300);
  const auto r = check_submultiplicative(SeqView(v, 1), 300);
  ASSERT_EQ(r.passed(), !expected);
  if (expected) {
    EXPECT_EQ(r.violation->p, expected->first);
    EXPECT_EQ(r.violation->q, expected->second);
  }
}

TEST(SubmulTest, AgreesWithNaiveOracleOnRandomSequences) {
  std::mt19937_64 rng(2024);
  int passing = 0;
  for (int i = 0; i < 200; ++i) {
    const std::uint64_t len = 2 + rng() % 299;
    const std::uint64_t first = rng() % 2;
    const auto v = oracles::random_sequence(rng, len);
    const std::uint64_t n = first + len - 1;
    const auto expected = oracles::naive_submultiplicative(v, first, n);
    const auto r = check_submultiplicative(SeqView(v, first), n);
    ASSERT_EQ(r.passed(), !expected) << i;
    if (expected) {
      EXPECT_EQ(r.violation->p, expected->first) << i;
      EXPECT_EQ(r.violation->q, expected->second) << i;
      EXPECT_GT(r.violation->lhs, r.violation->rhs);
    } else {
      ++passing;
    }
  }
  EXPECT_GT(passing, 20);
  EXPECT_LT(passing, 180);
}

TEST(SubmulTest, ThreadsGiveTheSameAnswer) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 30; ++i) {
    const auto v = oracles::random_sequence(rng, 200);
    SubmulOptions one, four;
    four.threads = 4;
    const auto a = check_submultiplicative(SeqView(v, 1), 200, one);
    const auto b = check_submultiplicative(SeqView(v, 1), 200, four);
    ASSERT_EQ(a.passed(), b.passed());
    if (!a.passed()) {
      EXPECT_EQ(a.violation->p, b.violation->p);
      EXPECT_EQ(a.violation->q, b.violation->q);
    }
  }
}

TEST(SubmulTest, PairBudget) {
  std::vector<Nat> v(30001, 1);
  EXPECT_THROW(check_submultiplicative(SeqView(v, 1), 30000), PairBudgetExceeded);
}

TEST(SubmulTest, SampledIsSeededAndFindsDenseViolations) {
  std::vector<Nat> v;
  for (std::uint64_t x = 1; x <= 500; ++x) v.push_back(u(x * x * x));  // x^3 fails often
  SubmulOptions opt;
  opt.strategy = SubmulStrategy::kSampled;
  opt.samples = 2000;
  opt.seed = 99;
  const auto a = check_submultiplicative(SeqView(v, 1), 500, opt);
  const auto b = check_submultiplicative(SeqView(v, 1), 500, opt);
  ASSERT_FALSE(a.passed());
  EXPECT_EQ(a.seed, 99u);
  EXPECT_EQ(a.pairs_checked, 2000u);
  EXPECT_EQ(a.violation->p, b.violation->p);
  EXPECT_EQ(a.violation->q, b.violation->q);
  EXPECT_GT(ipow(u(a.violation->p + a.violation->q), 3),
            ipow(u(a.violation->p), 3) * ipow(u(a.violation->q), 3));
}

TEST(SubmulTest, BoundaryCoversPairsNearBoundaries) {
  // 2^x except one raised value at 300: only pairs with p + q = 300 fail.
  std::vector<Nat> v;
  for (unsigned long x = 1; x <= 600; ++x) v.push_back(pow2(x));
  v[299] += 1;
  SubmulOptions opt;
  opt.strategy = SubmulStrategy::kBoundary;
  opt.window = 4;
  opt.boundaries = {302};
  const auto r = check_submultiplicative(SeqView(v, 1), 600, opt);
  ASSERT_FALSE(r.passed());
  EXPECT_EQ(r.violation->p, 1u);
  EXPECT_EQ(r.violation->q, 299u);
  opt.boundaries = {100};
  // p within 4 of 100 now catches q = 300 - p.
  const auto r2 = check_submultiplicative(SeqView(v, 1), 600, opt);
  ASSERT_FALSE(r2.passed());
  EXPECT_EQ(r2.violation->p, 96u);
  EXPECT_EQ(r2.violation->q, 204u);
  opt.boundaries = {500};
  EXPECT_TRUE(check_submultiplicative(SeqView(v, 1), 600, opt).passed());
}

TEST(SubmulTest, BoundaryPairCountMatchesDirectEnumeration) {
  std::vector<Nat> v;
  for (unsigned long x = 1; x <= 400; ++x) v.push_back(pow2(x));
  SubmulOptions opt;
  opt.strategy = SubmulStrategy::kBoundary;
  opt.window = 5;
  opt.boundaries = {37, 111};
  auto near = [&](std::uint64_t x) {
    for (auto b : opt.boundaries) {
      if (x + 5 >= b && x <= b + 5) return true;
    }
    return false;
  };
  std::uint64_t expected = 0;
  for (std::uint64_t p = 1; 2 * p <= 400; ++p) {
    for (std::uint64_t q = p; p + q <= 400; ++q) {
      if (near(p) || near(q) || near(p + q)) ++expected;
    }
  }
  EXPECT_EQ(check_submultiplicative(SeqView(v, 1), 400, opt).pairs_checked, expected);
}

TEST(DerivativeTest, FreeAlgebraPasses) {
  const auto g = free_algebra(2, 30);
  EXPECT_TRUE(check_derivative_condition(SeqView(g, 0), 2, 30).passed());
}

TEST(DerivativeTest, PolynomialPasses) {
  std::vector<Nat> g;
  for (std::uint64_t x = 0; x <= 60; ++x) g.push_back(u(x + 1));
  for (unsigned long d : {2, 3, 7}) {
    EXPECT_TRUE(check_derivative_condition(SeqView(g, 0), d, 60).passed());
  }
}

TEST(DerivativeTest, CertifiedTableViolates) {
  const auto t = GrowthTable::build(certified_log(), 762);
  const SeqView s = SeqView::of(t);
  const auto r = check_derivative_condition(s, 2, 762);
  ASSERT_FALSE(r.passed());
  std::vector<Nat> v(t.values().begin(), t.values().end());
  const auto expected = oracles::naive_derivative_condition(v, 1, 2, 762);
  ASSERT_TRUE(expected);
  EXPECT_EQ(r.violation->n, expected->first);
  EXPECT_EQ(r.violation->m, expected->second);
  // The seed 2^x already fails: f'(2n) = 2^(2n-1) > (2^(n-1))^2.
  EXPECT_EQ(r.violation->n, 2u);
  EXPECT_EQ(r.violation->m, 4u);
}

TEST(DerivativeTest, CertifiedTableViolatesAcrossArithmeticAndGeometric) {
  const auto t = GrowthTable::build(certified_log(), 762);
  // Start past the seed: f(127..762).
  std::vector<Nat> v(t.values().begin() + 126, t.values().end());
  const auto r = check_derivative_condition(SeqView(v, 127), 2, 762);
  ASSERT_FALSE(r.passed());
  const auto expected = oracles::naive_derivative_condition(v, 127, 2, 762);
  ASSERT_TRUE(expected);
  EXPECT_EQ(r.violation->n, expected->first);
  EXPECT_EQ(r.violation->m, expected->second);
  EXPECT_EQ(r.violation->n, 191u);
  EXPECT_EQ(r.violation->m, 382u);
  EXPECT_EQ(r.violation->rhs, u(192 * 192));
}

TEST(DerivativeTest, AgreesWithNaiveOracleOnRandomSequences) {
  std::mt19937_64 rng(77);
  int violations = 0;
  for (int i = 0; i < 200; ++i) {
    const std::uint64_t len = 3 + rng() % 298;
    const std::uint64_t first = rng() % 2;
    const auto v = oracles::random_sequence(rng, len);
    const std::uint64_t n = first + len - 1;
    const unsigned long d = 2 + rng() % 3;
    const auto expected = oracles::naive_derivative_condition(v, first, d, n);
    const auto r = check_derivative_condition(SeqView(v, first), d, n);
    ASSERT_EQ(r.passed(), !expected) << i;
    if (expected) {
      ++violations;
      EXPECT_EQ(r.violation->n, expected->first) << i;
      EXPECT_EQ(r.violation->m, expected->second) << i;
      EXPECT_GT(r.violation->lhs, r.violation->rhs);
    }
  }
  EXPECT_GT(violations, 20);
  EXPECT_LT(violations, 180);
}

TEST(DerivativeTest, ViolationIsSelfConsistent) {
  const auto t = GrowthTable::build(certified_log(), 762);
  const SeqView s = SeqView::of(t);
  const auto r = check_derivative_condition(s, 2, 762);
  ASSERT_FALSE(r.passed());
  const auto& v = *r.violation;
  EXPECT_LE(v.n, v.m);
  EXPECT_LE(v.m, 2 * v.n);
  EXPECT_EQ(v.lhs, s.at(v.m) - s.at(v.m - 1));
  EXPECT_EQ(v.rhs, ipow(s.at(v.n) - s.at(v.n - 1), 2));
}

TEST(P2Test, FreeAlgebraExample) {
  const auto g = free_algebra(2, 20);
  const auto r = evaluate_p2(SeqView(g, 0), 1, 2, 5);
  EXPECT_EQ(r.lhs, pow2(20));
  EXPECT_EQ(r.rhs, 40 * ipow(2016, 4));
  EXPECT_TRUE(r.holds);
}

TEST(P2Test, Preconditions) {
  const auto g = free_algebra(2, 20);
  EXPECT_THROW(evaluate_p2(SeqView(g, 0), 1, 2, 1), std::invalid_argument);
  EXPECT_THROW(evaluate_p2(SeqView(g, 0), 1, 3, 5), OutOfRange);
}

TEST(WitnessTest, CertifiedFirstBlock) {
  const Schedule s = certified_log();
  const auto t = GrowthTable::build(s, default_horizon(s));
  const Witness w = find_witness(t, 1);
  EXPECT_EQ(w.d, 2u);
  EXPECT_EQ(w.n, 128u);
  EXPECT_GT(w.lhs, w.rhs);
  // Independent recomputation from the naive construction.
  const auto f = oracles::naive_growth_function({{3, 127}}, 512);
  const Nat lhs = f[511] - f[510];
  const Nat rhs = 2 * 4 * 128 * ipow(f[255] - f[126], 4);
  EXPECT_EQ(w.lhs, lhs);
  EXPECT_EQ(w.rhs, rhs);
  EXPECT_GE(bit_length(lhs), bit_length(rhs) + 10);
}

TEST(WitnessTest, RefusesDemo) {
  const auto t = GrowthTable::build(demo8(), 40);
  EXPECT_THROW(find_witness(t, 1), UncertifiedSchedule);
}

TEST(WitnessTest, DepthAndHorizonLimits) {
  const Schedule s = certified_log();
  EXPECT_THROW(find_witness(GrowthTable::build(s, 762), 2), OutOfRange);
  EXPECT_THROW(find_witness(GrowthTable::build(s, 500), 1), OutOfRange);
}

TEST(DominanceTest, CertifiedPassesWithLogOmega) {
  const auto t = GrowthTable::build(certified_log(), 2000);
  const auto r = check_dominance(t, Omega::log());
  EXPECT_TRUE(r.passed());
  EXPECT_EQ(r.lo, 127u);
  EXPECT_EQ(r.checked, 2000u - 126);
}

TEST(DominanceTest, AggressiveOmegaFailsOnDemo) {
  const auto t = GrowthTable::build(demo8(), 40);
  // f(8) = 2^8 passes with equality, f(9) = 266 < 2^9.
  const auto r = check_dominance(t, Omega::constant(1));
  ASSERT_FALSE(r.passed());
  EXPECT_EQ(*r.first_failure, 9u);
}

}  // namespace
}  // namespace growthlab
