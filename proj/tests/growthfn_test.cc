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

#include <gtest/gtest.h>

#include "oracles.h"

namespace growthlab {
namespace {

using testing_oracles::naive_growth_function;

Schedule demo(std::vector<std::uint64_t> d, std::vector<std::uint64_t> n) {
  ScheduleRequest req;
  req.mode = Mode::kDemo;
  req.depth = n.size();
  req.d_overrides = std::move(d);
  req.n_overrides = std::move(n);
  return build_schedule(req);
}

Schedule certified_log() {
  ScheduleRequest req;
  req.omega = Omega::log();
  return build_schedule(req);
}

TEST(GrowthTableTest, DemoValues) {
  const auto t = GrowthTable::build(demo({3}, {8}), 40);
  EXPECT_EQ(t.value_at(1), 2);
  EXPECT_EQ(t.value_at(8), 256);
  EXPECT_EQ(t.value_at(9), 266);
  EXPECT_EQ(t.value_at(24), 536);
  // 601^6 <= 2 * 536^6 < 602^6
  ASSERT_LE(ipow(601, 6), 2 * ipow(536, 6));
  ASSERT_LT(2 * ipow(536, 6), ipow(602, 6));
  EXPECT_EQ(t.value_at(25), 601);
  EXPECT_EQ(t.alpha1(), 280);
}

TEST(GrowthTableTest, SegmentsTileTheRange) {
  const auto t = GrowthTable::build(demo({3, 4}, {8, 30}), 200);
  const auto& s = t.segments();
  ASSERT_EQ(s.size(), 5u);
  EXPECT_EQ(s[0].name(), "seed");
  EXPECT_EQ(s[1].name(), "arith:1");
  EXPECT_EQ(s[2].name(), "geom:1");
  EXPECT_EQ(s[3].name(), "arith:2");
  EXPECT_EQ(s[4].name(), "geom:2");
  std::uint64_t next = 1;
  for (const auto& seg : s) {
    EXPECT_EQ(seg.lo, next);
    next = seg.hi + 1;
  }
  EXPECT_EQ(next, 201u);
  EXPECT_EQ(s[2].hi, 30u);
  EXPECT_EQ(s[4].lo, 121u);
  EXPECT_EQ(s[4].ratio, RationalPow2(1, 24));
  EXPECT_EQ(t.segment_at(121).name(), "geom:2");
  EXPECT_EQ(t.beta(2), t.value_at(24));
}

TEST(GrowthTableTest, TruncatedHorizonKeepsPrefix) {
  const auto t = GrowthTable::build(demo({3}, {8}), 5);
  ASSERT_EQ(t.segments().size(), 1u);
  EXPECT_EQ(t.value_at(5), 32);
}

TEST(GrowthTableTest, EmptyScheduleIsPowersOfTwo) {
  ScheduleRequest req;
  req.depth = 0;
  const auto t = GrowthTable::build(build_schedule(req), 20);
  EXPECT_EQ(t.value_at(20), pow2(20));
}

TEST(GrowthTableTest, MatchesNaiveConstruction) {
  struct Case {
    std::vector<std::uint64_t> d, n;
    std::uint64_t horizon;
  };
  const std::vector<Case> cases = {
      {{3}, {8}, 120}, {{3}, {3}, 80}, {{5}, {4}, 90},
      {{3, 4}, {8, 30}, 260}, {{3, 26}, {8, 25}, 700}, {{2, 3, 5}, {4, 9, 28}, 300}};
  for (const auto& c : cases) {
    std::vector<std::pair<std::uint64_t, std::uint64_t>> blocks;
    for (std::size_t i = 0; i < c.d.size(); ++i) blocks.emplace_back(c.d[i], c.n[i]);
    const auto expected = naive_growth_function(blocks, c.horizon);
    const auto t = GrowthTable::build(demo(c.d, c.n), c.horizon);
    ASSERT_TRUE(t.dense());
    for (std::uint64_t x = 1; x <= c.horizon; ++x) {
      ASSERT_EQ(t.value_at(x), expected[x - 1]) << "x=" << x;
    }
  }
}

TEST(GrowthTableTest, CertifiedMatchesNaiveConstruction) {
  const Schedule s = certified_log();
  const std::uint64_t n = default_horizon(s);
  EXPECT_EQ(n, 762u);
  const auto t = GrowthTable::build(s, n);
  const auto expected = naive_growth_function({{3, 127}}, n);
  for (std::uint64_t x = 1; x <= n; ++x) ASSERT_EQ(t.value_at(x), expected[x - 1]);
  EXPECT_TRUE(t.warnings().empty());
}

TEST(GrowthTableTest, WindowedAgreesWithDense) {
  const Schedule s = demo({3, 4}, {8, 30});
  BuildOptions small;
  small.memory_budget = 2000;
  small.checkpoint_every = 16;
  const auto dense = GrowthTable::build(s, 400);
  const auto windowed = GrowthTable::build(s, 400, small);
  ASSERT_TRUE(dense.dense());
  ASSERT_FALSE(windowed.dense());
  EXPECT_TRUE(windowed.values().empty());
  EXPECT_TRUE(windowed.checkpoints().count(136));
  for (std::uint64_t x = 1; x <= 400; x += 7) {
    ASSERT_EQ(windowed.value_at(x), dense.value_at(x)) << x;
  }
  std::uint64_t visited = 0;
  windowed.scan(20, 400, [&](std::uint64_t x, const Nat& v) {
    ASSERT_EQ(v, dense.value_at(x)) << x;
    ++visited;
  });
  EXPECT_EQ(visited, 381u);
}

TEST(GrowthTableTest, OutOfRange) {
  const auto t = GrowthTable::build(demo({3}, {8}), 40);
  EXPECT_THROW(t.value_at(0), OutOfRange);
  EXPECT_THROW(t.value_at(41), OutOfRange);
  EXPECT_THROW(t.beta(2), OutOfRange);
}

TEST(GrowthTableTest, CertifiedModeRejectsFailingLedger) {
  Schedule s = demo({3}, {8});
  s.mode = Mode::kCertified;
  EXPECT_THROW(GrowthTable::build(s, 40), ScheduleInvalid);
}

TEST(GrowthTableTest, StrictlyIncreasingCertified) {
  const auto t = GrowthTable::build(certified_log(), 2000);
  const auto v = t.values();
  for (std::size_t i = 1; i < v.size(); ++i) ASSERT_GT(v[i], v[i - 1]) << i;
}

TEST(GrowthTableTest, GeometricSandwichAndFloorLemmaUpperBound) {
  const auto t = GrowthTable::build(certified_log(), 1500);
  const Nat a0 = t.value_at(381);
  for (std::uint64_t x = 382; x <= 1500; ++x) {
    const Nat prev = t.value_at(x - 1), cur = t.value_at(x);
    ASSERT_LE(ipow(cur, 6), 2 * ipow(prev, 6)) << x;
    ASSERT_LT(2 * ipow(prev, 6), ipow(cur + 1, 6)) << x;
    // a_j^6 <= 2^j a_0^6
    ASSERT_LE(ipow(cur, 6), ipow(a0, 6) << static_cast<unsigned long>(x - 381)) << x;
  }
}

TEST(GrowthTableTest, DemoFloorLemmaFailureIsAWarning) {
  BuildOptions every_step;
  every_step.checkpoint_every = 1;
  const auto t = GrowthTable::build(demo({3}, {3}), 200, every_step);
  ASSERT_FALSE(t.warnings().empty());
  EXPECT_NE(t.warnings()[0].find("floor lemma lower bound"), std::string::npos);
}

TEST(LowerBoundTest, CertifiedPassesFromTwo) {
  const auto t = GrowthTable::build(certified_log(), 762);
  const auto r = verify_lower_bound(t, 2, 762);
  EXPECT_TRUE(r.passed()) << (r.failures.empty() ? 0 : r.failures[0].x);
  EXPECT_EQ(r.checked, 761u);
}

TEST(LowerBoundTest, FailsAtOneAsLiterallyStated) {
  const auto t = GrowthTable::build(certified_log(), 762);
  // 2 < 2^(1/6 + 1 + 1/4): 2^12 < 2^17.
  const auto r = verify_lower_bound(t, 1, 1);
  ASSERT_EQ(r.failed, 1u);
  EXPECT_EQ(r.failures[0].exponent, RationalPow2(17, 12));
}

TEST(LowerBoundTest, ExponentsByRegion) {
  const Schedule s = demo({3, 4}, {8, 30});
  EXPECT_EQ(lower_bound_exponent(s, 8).exponent(), mpq_class(8, 6) + 1 + mpq_class(1, 4));
  EXPECT_EQ(lower_bound_exponent(s, 25).exponent(), mpq_class(25, 6) + 1 + mpq_class(1, 8));
  EXPECT_EQ(lower_bound_exponent(s, 31).exponent(), mpq_class(31, 24) + 1 + mpq_class(1, 8));
  EXPECT_EQ(lower_bound_exponent(s, 121).exponent(), mpq_class(121, 24) + 1 + mpq_class(1, 16));
}

TEST(LowerBoundTest, DemoSeedPoint) {
  const auto t = GrowthTable::build(demo({3}, {8}), 40);
  // 2^8 vs 2^(8/6 + 5/4)
  EXPECT_TRUE(verify_lower_bound(t, 8, 8).passed());
}

TEST(ConditionOneTest, CertifiedPassesIncludingBoundary) {
  const auto t = GrowthTable::build(certified_log(), 2000);
  const auto r = verify_condition_I(t, 1);
  EXPECT_EQ(r.lo, 381u);
  EXPECT_EQ(r.hi, 2000u);
  EXPECT_EQ(r.checked, 1620u);
  EXPECT_TRUE(r.passed());
}

TEST(ConditionOneTest, MatchesClearedDenominatorOracle) {
  for (auto [d, n] : {std::pair<std::uint64_t, std::uint64_t>{3, 3}, {3, 2}, {5, 2}, {2, 1}, {3, 8}}) {
    const auto t = GrowthTable::build(demo({d}, {n}), 200);
    const auto r = verify_condition_I(t, 1);
    const std::uint64_t start = d * n;
    const Nat a0 = t.value_at(start);
    std::uint64_t failed = 0, first = 0;
    // f(x)^(8Q) >= a0^(8Q) 2^(8(x - start) - Q), Q = 2d.
    const unsigned long v = static_cast<unsigned long>(16 * d);
    for (std::uint64_t x = start; x <= 200; ++x) {
      const Int lhs = ipow(t.value_at(x), v) << static_cast<unsigned long>(2 * d);
      const Int rhs = ipow(a0, v) << static_cast<unsigned long>(8 * (x - start));
      if (lhs < rhs) {
        if (failed++ == 0) first = x;
      }
    }
    EXPECT_EQ(r.failed, failed) << d << "," << n;
    if (failed > 0) EXPECT_EQ(r.failures[0].x, first);
  }
}

TEST(ConditionOneTest, TinyDemoFails) {
  const auto t = GrowthTable::build(demo({3}, {2}), 200);
  const auto r = verify_condition_I(t, 1);
  ASSERT_FALSE(r.passed());
  EXPECT_EQ(r.failures[0].x, 13u);
}

}  // namespace
}  // namespace growthlab
