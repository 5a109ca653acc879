// Copyright 2026 The lipdisc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include "lipdisc/fractional.h"

#include <cmath>
#include <cstdint>
#include <vector>

#include "gtest/gtest.h"
#include "lipdisc/bounds.h"
#include "lipdisc/error.h"
#include "lipdisc/harness.h"
#include "lipdisc/multilinear.h"
#include "lipdisc/rng.h"
#include "test_util.h"

namespace lipdisc {
namespace {

using ::lipdisc::testing::additive;
using ::lipdisc::testing::capped_size;
using ::lipdisc::testing::full_expectation;
using ::lipdisc::testing::single;

FractionalColoring rows(int k, std::vector<std::vector<double>> r) {
  std::vector<double> w;
  for (const auto& row : r) w.insert(w.end(), row.begin(), row.end());
  return FractionalColoring(static_cast<int>(r.size()), k, std::move(w));
}

// Balance gap recomputed from full 2^m enumeration.
double oracle_balance(const Family& fam, const FractionalColoring& chi) {
  double worst = 0.0;
  for (const SetFunction& f : fam.functions()) {
    std::vector<double> vals;
    for (int j = 0; j < chi.k(); ++j) {
      vals.push_back(full_expectation(f, chi.column(j)));
    }
    for (double a : vals) {
      for (double b : vals) worst = std::max(worst, std::abs(a - b));
    }
  }
  return worst;
}

TEST(FractionalColoringTest, ValidatesRows) {
  EXPECT_THROW(rows(2, {{0.5, 0.6}}), Error);
  EXPECT_THROW(rows(2, {{1.5, -0.5}}), Error);
  const FractionalColoring c = rows(3, {{1, 0, 0}, {0.2, 0.3, 0.5}});
  EXPECT_EQ(c.fractional_count(), 1);
  EXPECT_EQ(c.vertex_color(0), 0);
  EXPECT_FALSE(c.vertex_color(1).has_value());
  EXPECT_EQ(c.column(2), (std::vector<double>{0, 0.5}));
}

TEST(CutProfileTest, Validation) {
  EXPECT_THROW((CutProfile{2, {0.5}, {0}}.validate()), Error);
  EXPECT_THROW((CutProfile{2, {0.6, 0.4}, {0, 1, 0}}.validate()), Error);
  EXPECT_THROW((CutProfile{2, {1.2}, {0, 1}}.validate()), Error);
  EXPECT_THROW((CutProfile{2, {0.5}, {0, 2}}.validate()), Error);
  EXPECT_NO_THROW((CutProfile{2, {0.5, 0.5}, {0, 1, 0}}.validate()));
}

TEST(EmbedTest, CutInsideFirstElement) {
  const FractionalColoring c = embed(CutProfile{2, {0.25}, {0, 1}}, 2);
  EXPECT_NEAR(c.weight(0, 0), 0.5, 1e-15);
  EXPECT_NEAR(c.weight(0, 1), 0.5, 1e-15);
  EXPECT_EQ(c.weight(1, 0), 0.0);
  EXPECT_EQ(c.weight(1, 1), 1.0);
  EXPECT_EQ(c.fractional_count(), 1);
}

TEST(EmbedTest, CutOnBoundaryIsIntegral) {
  const FractionalColoring c = embed(CutProfile{2, {0.5}, {0, 1}}, 4);
  EXPECT_EQ(c.fractional_count(), 0);
  for (int g = 0; g < 4; ++g) EXPECT_EQ(c.vertex_color(g), g < 2 ? 0 : 1);
}

TEST(EmbedTest, NearBoundaryCutIsSnapped) {
  const FractionalColoring c =
      embed(CutProfile{2, {1.0 / 3.0 + 1e-12}, {0, 1}}, 3);
  EXPECT_EQ(c.fractional_count(), 0);
}

TEST(EmbedTest, NoCutsGivesVertex) {
  for (int j = 0; j < 4; ++j) {
    const FractionalColoring c = embed(CutProfile{4, {}, {j}}, 1);
    EXPECT_EQ(c.vertex_color(0), j);
  }
}

TEST(EmbedTest, RowsStochasticAndCountBoundedOverRandomProfiles) {
  Rng rng(5);
  for (int trial = 0; trial < 2000; ++trial) {
    const int k = 2 + trial % 3;
    const int m = 1 + static_cast<int>(rng() % 40);
    const int ncuts = static_cast<int>(rng() % 8);
    CutProfile p{k, {}, {}};
    for (int c = 0; c < ncuts; ++c) {
      // Some cuts land exactly on element boundaries.
      p.cuts.push_back(rng() % 4 == 0
                           ? static_cast<double>(rng() % (m + 1)) / m
                           : uniform01(rng));
    }
    std::sort(p.cuts.begin(), p.cuts.end());
    for (int s = 0; s <= ncuts; ++s) p.labels.push_back(rng() % k);
    const FractionalColoring c = embed(p, m);
    for (int g = 0; g < m; ++g) {
      double sum = 0.0;
      for (double w : c.row(g)) {
        ASSERT_GE(w, 0.0);
        sum += w;
      }
      ASSERT_NEAR(sum, 1.0, 1e-12);
    }
    ASSERT_LE(c.fractional_count(), ncuts);
  }
}

TEST(BalanceTest, Examples) {
  const Family ones = single(additive({1, 1}));
  EXPECT_EQ(balance_objective(ones, rows(2, {{1, 0}, {0, 1}})), 0.0);
  EXPECT_EQ(balance_objective(ones, rows(2, {{1, 0}, {1, 0}})), 2.0);
  const Family capped = single(capped_size(2, 1));
  EXPECT_NEAR(balance_objective(capped, rows(2, {{0.5, 0.5}, {0.5, 0.5}})),
              0.0, 1e-15);
}

TEST(BalanceTest, MatchesEnumerationOracle) {
  Rng rng(21);
  for (const char* kind : {"linf_vector_sum", "coverage", "tabulated"}) {
    const Family fam = generate(kind, 2, 8, 3);
    for (int trial = 0; trial < 10; ++trial) {
      std::vector<double> w;
      for (int g = 0; g < 8; ++g) {
        const double a = uniform01(rng);
        w.insert(w.end(), {a, 1 - a});
      }
      const FractionalColoring c(8, 2, w);
      EXPECT_NEAR(balance_objective(fam, c), oracle_balance(fam, c), 1e-12);
    }
  }
}

TEST(LpTest, EqualPairIsSplitIntegrally) {
  const FractionalSolution s = solve_lp_additive(single(additive({1, 1})), 2);
  EXPECT_EQ(s.report.fractional_count, 0);
  EXPECT_EQ(s.report.epsilon, 0.0);
  EXPECT_EQ(s.report.method, FractionalMethod::kLp);
  EXPECT_NE(s.coloring.vertex_color(0), s.coloring.vertex_color(1));
}

TEST(LpTest, ZeroFunctionIsIntegral) {
  const FractionalSolution s =
      solve_lp_additive(single(additive({0, 0, 0})), 2);
  EXPECT_EQ(s.report.fractional_count, 0);
  EXPECT_EQ(s.report.epsilon, 0.0);
}

TEST(LpTest, SingleElementIsSplit) {
  const FractionalSolution s = solve_lp_additive(single(additive({1})), 2);
  EXPECT_EQ(s.report.fractional_count, 1);
  EXPECT_NEAR(s.coloring.weight(0, 0), 0.5, 1e-12);
  EXPECT_NEAR(s.coloring.weight(0, 1), 0.5, 1e-12);
}

TEST(LpTest, RejectsNonAdditive) {
  try {
    solve_lp_additive(single(capped_size(2, 1)), 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kNotAdditive);
  }
}

TEST(LpTest, RandomAdditiveInstancesAreBalancedExtremePoints) {
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + trial % 6;
    const int m = 1 + (trial * 37) % 64;
    const int k = 2 + trial % 2;
    const Family fam = generate("additive", n, m, 500 + trial);
    const FractionalSolution s = solve_lp_additive(fam, k);
    EXPECT_LE(s.report.epsilon, 1e-9) << "trial " << trial;
    EXPECT_LE(s.report.fractional_count, n * (k - 1)) << "trial " << trial;
    EXPECT_EQ(s.report.fractional_count, s.coloring.fractional_count());
    // Independent recomputation of the color sums.
    for (const SetFunction& f : fam.functions()) {
      const auto& a = std::get<Additive>(f.kind()).coefficients;
      std::vector<double> sums(k, 0.0);
      for (int g = 0; g < m; ++g) {
        for (int j = 0; j < k; ++j) sums[j] += a[g] * s.coloring.weight(g, j);
      }
      for (int j = 1; j < k; ++j) EXPECT_NEAR(sums[j], sums[0], 1e-9);
    }
  }
}

TEST(CutSearchTest, FourOnesSplitInHalf) {
  CutSearchOptions opt;
  opt.eps_target = 1e-6;
  const FractionalSolution s =
      solve_cut_search(single(additive({1, 1, 1, 1})), 2, opt);
  EXPECT_TRUE(s.report.success);
  EXPECT_LE(s.report.epsilon, 1e-6);
  EXPECT_LE(s.report.fractional_count, 1);
  ASSERT_TRUE(s.profile.has_value());
  EXPECT_LE(s.profile->cuts.size(), 1u);
}

TEST(CutSearchTest, CappedSizeReachesZero) {
  CutSearchOptions opt;
  opt.eps_target = 1e-6;
  const FractionalSolution s = solve_cut_search(single(capped_size(4, 2)), 2, opt);
  EXPECT_LE(s.report.epsilon, 1e-6);
  EXPECT_EQ(s.report.method, FractionalMethod::kCutSearch);
}

TEST(CutSearchTest, ConstantFunctionNeedsNoCuts) {
  for (int k : {2, 3, 5}) {
    const FractionalSolution s =
        solve_cut_search(single(additive({0, 0, 0})), k);
    EXPECT_EQ(s.report.epsilon, 0.0);
    ASSERT_TRUE(s.profile.has_value());
    EXPECT_TRUE(s.profile->cuts.empty());
  }
}

TEST(CutSearchTest, FractionalCountWithinCutBudget) {
  for (const char* kind : {"linf_vector_sum", "coverage", "tabulated",
                           "dist_to_upset", "budgeted_additive"}) {
    for (int k : {2, 3}) {
      const Family fam = generate(kind, 2, 10, 8);
      CutSearchOptions opt;
      opt.budget = 4;
      const FractionalSolution s = solve_cut_search(fam, k, opt);
      ASSERT_TRUE(s.profile.has_value());
      EXPECT_LE(static_cast<int>(s.profile->cuts.size()), 2 * (k - 1));
      EXPECT_LE(s.report.fractional_count, 2 * (k - 1)) << kind;
      EXPECT_NEAR(s.report.epsilon, balance_objective(fam, s.coloring), 1e-12);
    }
  }
}

TEST(CutSearchTest, Deterministic) {
  const Family fam = generate("linf_vector_sum", 3, 16, 2);
  CutSearchOptions opt;
  opt.budget = 3;
  opt.seed = 42;
  const FractionalSolution a = solve_cut_search(fam, 2, opt);
  const FractionalSolution b = solve_cut_search(fam, 2, opt);
  EXPECT_EQ(a.coloring.weights(), b.coloring.weights());
  EXPECT_EQ(a.report.epsilon, b.report.epsilon);
  EXPECT_EQ(a.profile->cuts, b.profile->cuts);
  EXPECT_EQ(a.profile->labels, b.profile->labels);
}

TEST(CutSearchTest, ThreadCountDoesNotChangeResult) {
  const Family fam = generate("tabulated", 2, 10, 9);
  CutSearchOptions opt;
  opt.budget = 4;
  opt.eps_target = 1e-14;
  const FractionalSolution a = solve_cut_search(fam, 2, opt);
  opt.threads = 4;
  const FractionalSolution b = solve_cut_search(fam, 2, opt);
  EXPECT_EQ(a.coloring.weights(), b.coloring.weights());
}

TEST(CutSearchTest, BestEpsilonNonIncreasingInBudget) {
  for (const char* kind : {"linf_vector_sum", "tabulated", "coverage"}) {
    const Family fam = generate(kind, 6, 12, 77);
    CutSearchOptions opt;
    opt.seed = 3;
    opt.eps_target = 0.0;
    opt.evals_per_restart = 40;  // small enough that restarts stall
    std::vector<double> eps;
    for (int budget = 1; budget <= 6; ++budget) {
      opt.budget = budget;
      eps.push_back(solve_cut_search(fam, 3, opt).report.epsilon);
      if (budget > 1) {
        EXPECT_LE(eps.back(), eps[eps.size() - 2]) << kind << " " << budget;
      }
    }
    EXPECT_LT(eps.back(), eps.front()) << kind;
  }
}

TEST(SolveFractionalTest, AutoPicksLpForAdditive) {
  const Family add = generate("additive", 2, 12, 1);
  EXPECT_EQ(solve_fractional(add, 2, FractionalMethod::kAuto).report.method,
            FractionalMethod::kLp);
  const Family lin = generate("linf_vector_sum", 1, 6, 1);
  EXPECT_EQ(solve_fractional(lin, 2, FractionalMethod::kAuto).report.method,
            FractionalMethod::kCutSearch);
}

TEST(SolveFractionalTest, DefaultTarget) {
  EXPECT_DOUBLE_EQ(default_eps_target(1, 2), 1e-3);
  EXPECT_DOUBLE_EQ(default_eps_target(20, 5),
                   std::min(1e-3, 0.01 * theorem_bound(20, 5)));
}

TEST(MethodNameTest, RoundTrip) {
  EXPECT_EQ(method_from_name("lp"), FractionalMethod::kLp);
  EXPECT_EQ(method_from_name("cuts"), FractionalMethod::kCutSearch);
  EXPECT_EQ(method_from_name("auto"), FractionalMethod::kAuto);
  EXPECT_EQ(method_name(FractionalMethod::kCutSearch), "cut_search");
  EXPECT_THROW(method_from_name("simplex"), Error);
}

TEST(VerifyFractionalTest, LpOutputPasses) {
  const Family fam = generate("additive", 3, 20, 4);
  const FractionalSolution s = solve_lp_additive(fam, 2);
  EXPECT_TRUE(verify_fractional(fam, s.coloring, 1e-9).ok);
}

TEST(VerifyFractionalTest, MonochromeFails) {
  const FractionalCheck c = verify_fractional(
      single(additive({1, 1})), rows(2, {{1, 0}, {1, 0}}), 1e-3);
  EXPECT_FALSE(c.ok);
  EXPECT_EQ(c.epsilon, 2.0);
}

TEST(VerifyFractionalTest, QuarterCutIsUnbalanced) {
  // Color values are 0.5 and 1.5, so the balance condition fails.
  const Family fam = single(additive({1, 1}));
  const FractionalColoring c = embed(CutProfile{2, {0.25}, {0, 1}}, 2);
  EXPECT_NEAR(oracle_balance(fam, c), 1.0, 1e-15);
  const FractionalCheck check = verify_fractional(fam, c, 1e-9);
  EXPECT_FALSE(check.ok);
  EXPECT_EQ(check.fractional_count, 1);
  EXPECT_NEAR(check.epsilon, 1.0, 1e-15);
}

TEST(VerifyFractionalTest, TooManyFractionalRowsFails) {
  const Family fam = single(additive({1, 1}));
  const FractionalCheck c =
      verify_fractional(fam, rows(2, {{0.5, 0.5}, {0.5, 0.5}}), 1e-9);
  EXPECT_EQ(c.fractional_count, 2);
  EXPECT_FALSE(c.ok);
}

}  // namespace
}  // namespace lipdisc
