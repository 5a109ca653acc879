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

#include "lipdisc/fairdiv.h"

#include <atomic>
#include <bit>
#include <cstdint>
#include <memory>
#include <thread>
#include <vector>

#include "gtest/gtest.h"
#include "lipdisc/bounds.h"
#include "lipdisc/error.h"
#include "lipdisc/harness.h"
#include "lipdisc/lipschitz.h"
#include "lipdisc/rng.h"
#include "test_util.h"

namespace lipdisc {
namespace {

using ::lipdisc::testing::additive;
using ::lipdisc::testing::capped_size;

SetFunction count(int m) { return additive(std::vector<double>(m, 1.0)); }

UtilityProfile counting_profile(int m) {
  return UtilityProfile(GroundSet(m), {count(m)});
}

const char* const kProfileKinds[] = {"additive_nonneg", "coverage",
                                     "budgeted_additive",
                                     "monotone_tabulated"};

// u'(S) by scanning every T subset of S with |T| <= r.
double oracle_u_prime(const SetFunction& u, Subset s, int r) {
  double best = u(s);
  for (std::uint64_t t = s.bits();; t = (t - 1) & s.bits()) {
    if (std::popcount(t) <= r) best = std::min(best, u(s - Subset(t)));
    if (t == 0) break;
  }
  return best;
}

// Distance to M over every member of M, not only supersets.
int oracle_distance(const SetFunction& u, Subset s, int c) {
  const int m = u.ground_size();
  int best = m + 1;
  for (std::uint64_t t = 0; t < (std::uint64_t{1} << m); ++t) {
    if (in_M(u, Subset(t), c)) best = std::min(best, hamming(s, Subset(t)));
  }
  return best;
}

TEST(CBoundTest, Values) {
  EXPECT_EQ(c_bound(1), 4);
  EXPECT_EQ(c_bound(2), 7);
  EXPECT_EQ(c_bound(4), 10);
  for (int n = 1; n < 50; ++n) {
    EXPECT_GE(c_bound(n), 2 * theorem_bound(n, 2));
    EXPECT_LT(c_bound(n), 2 * theorem_bound(n, 2) + 1);
  }
}

TEST(UtilityProfileTest, RejectsNonMonotone) {
  try {
    UtilityProfile(GroundSet(3), {additive({1, -0.5, 1})});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kNotMonotone);
  }
  std::vector<double> t = {0, 1, 1, 0.5};  // u({1,2}) < u({1})
  EXPECT_THROW(UtilityProfile(GroundSet(2), {SetFunction(2, Tabulated{t})}),
               Error);
  EXPECT_NO_THROW(UtilityProfile(GroundSet(2), {capped_size(2, 1)}));
}

TEST(UtilityProfileTest, MonotonicityViolationWitness) {
  const auto v = find_monotonicity_violation(additive({1, -0.5, 1}));
  ASSERT_TRUE(v.has_value());
  EXPECT_EQ(v->second, 1);
  EXPECT_FALSE(find_monotonicity_violation(count(5)).has_value());
}

TEST(UPrimeTest, Examples) {
  EXPECT_EQ(u_prime(count(3), Subset::of({0, 1, 2}), 1), 2.0);
  EXPECT_EQ(u_prime(count(3), Subset::of({0, 1}), 5), 0.0);
  const SetFunction cover(3, Coverage{2, {{0}, {0}, {1}}});
  EXPECT_DOUBLE_EQ(u_prime(cover, Subset::of({0, 1, 2}), 1), 0.5);
}

TEST(UPrimeTest, MatchesAllRemovalSetsForMonotoneUtilities) {
  Rng rng(3);
  for (const char* kind : kProfileKinds) {
    const UtilityProfile p = generate_profile(kind, 2, 10, 17);
    for (int trial = 0; trial < 100; ++trial) {
      const Subset s(rng() & 0x3ff);
      const int r = static_cast<int>(rng() % 5);
      EXPECT_DOUBLE_EQ(u_prime(p[trial % 2], s, r),
                       oracle_u_prime(p[trial % 2], s, r))
          << kind;
    }
  }
}

TEST(UPrimeTest, RemovalCapIsEnforced) {
  try {
    min_after_removal(count(60), Subset::full(60), 10);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kTooLarge);
  }
}

TEST(InMTest, Examples) {
  EXPECT_TRUE(in_M(count(4), Subset::of({0, 1, 2}), 0));
  EXPECT_FALSE(in_M(count(4), Subset::of({0}), 0));
  EXPECT_TRUE(in_M(count(4), Subset::of({0, 1}), 2));
  EXPECT_TRUE(in_M(count(4), Subset::of({2, 3}), 2));
}

TEST(DistToMTest, Examples) {
  EXPECT_EQ(dist_to_M(count(3), Subset::of({0}), 0), 1);
  EXPECT_EQ(dist_to_M(count(3), Subset(), 0), 2);
  EXPECT_EQ(dist_to_M(count(3), Subset::of({0, 2}), 0), 0);
}

TEST(BuildFTest, CountingValues) {
  const SetFunction f = build_f(count(3), 0);
  EXPECT_EQ(f(Subset()), 2.0);
  EXPECT_EQ(f(Subset::of({0})), 1.0);
  EXPECT_EQ(f(Subset::of({0, 1})), 0.0);
  EXPECT_EQ(f.tag(), KindTag::kDistToMonotoneUpset);
}

TEST(BuildFTest, ConstantUtilityGivesZero) {
  const SetFunction u = additive({0, 0, 0, 0});
  for (int c : {0, 3}) {
    const SetFunction f = build_f(u, c);
    for (std::uint64_t s = 0; s < 16; ++s) EXPECT_EQ(f(Subset(s)), 0.0);
  }
}

TEST(StructuralTest, MIsCompleteAndMonotone) {
  for (const char* kind : kProfileKinds) {
    for (int n : {1, 2}) {
      const UtilityProfile p = generate_profile(kind, n, 12, 40 + n);
      const int c = c_bound(n);
      const std::uint64_t full = Subset::full(12).bits();
      for (const SetFunction& u : p.utilities()) {
        std::vector<bool> member(full + 1);
        for (std::uint64_t s = 0; s <= full; ++s) {
          member[s] = in_M(u, Subset(s), c);
        }
        for (std::uint64_t s = 0; s <= full; ++s) {
          ASSERT_TRUE(member[s] || member[full & ~s]) << kind;
          if (!member[s]) continue;
          for (int g = 0; g < 12; ++g) {
            ASSERT_TRUE(member[s | (std::uint64_t{1} << g)]) << kind;
          }
        }
      }
    }
  }
}

TEST(StructuralTest, SupersetSearchMatchesUnrestrictedDistance) {
  for (const char* kind : kProfileKinds) {
    const UtilityProfile p = generate_profile(kind, 1, 8, 5);
    for (int c : {0, 2, 4}) {
      for (std::uint64_t s = 0; s < 256; ++s) {
        ASSERT_EQ(dist_to_M(p[0], Subset(s), c),
                  oracle_distance(p[0], Subset(s), c))
            << kind << " c=" << c;
      }
    }
  }
}

TEST(StructuralTest, BuildFIsOneLipschitzAndHalvesVanish) {
  for (const char* kind : kProfileKinds) {
    const UtilityProfile p = generate_profile(kind, 1, 10, 9);
    for (int c : {0, 4, 7}) {
      const SetFunction f = build_f(p[0], c);
      EXPECT_TRUE(check_lipschitz_exhaustive(f).pass) << kind;
      for (std::uint64_t s = 0; s < 1024; ++s) {
        const Subset set(s);
        ASSERT_TRUE(f(set) == 0.0 || f(set.complement(10)) == 0.0);
      }
    }
  }
}

TEST(ValidSetUpsetTest, ConcurrentQueriesAgree) {
  const UtilityProfile p = generate_profile("coverage", 1, 12, 2);
  auto upset = std::make_shared<ValidSetUpset>(p[0], 4);
  std::vector<int> expected(4096);
  for (std::uint64_t s = 0; s < 4096; ++s) {
    expected[s] = dist_to_M(p[0], Subset(s), 4);
  }
  std::vector<std::thread> pool;
  std::atomic<int> mismatches{0};
  for (int w = 0; w < 4; ++w) {
    pool.emplace_back([&, w] {
      for (std::uint64_t s = w; s < 4096 + w; ++s) {
        const std::uint64_t q = (s * 2654435761u) & 4095;
        if (upset->distance(Subset(q)) != expected[q]) ++mismatches;
      }
    });
  }
  for (auto& t : pool) t.join();
  EXPECT_EQ(mismatches.load(), 0);
}

TEST(VerifyHalvingTest, Examples) {
  const UtilityProfile p = counting_profile(4);
  const HalvingCheck exact = verify_halving(p, Subset::of({0, 1}), 0);
  ASSERT_TRUE(exact.certificate.has_value());
  EXPECT_TRUE(exact.certificate->agents[0].r1.empty());
  EXPECT_TRUE(exact.certificate->agents[0].r2.empty());

  const HalvingCheck lopsided = verify_halving(p, Subset::of({0, 1, 2}), 0);
  EXPECT_FALSE(lopsided.certificate.has_value());
  EXPECT_EQ(lopsided.failed_agent, 0);

  const HalvingCheck loose = verify_halving(p, Subset::of({0, 1, 2}), 2);
  ASSERT_TRUE(loose.certificate.has_value());
  EXPECT_EQ(loose.certificate->agents[0].r1.size(), 2);
  EXPECT_TRUE(loose.certificate->agents[0].r1.is_subset_of(Subset::of({0, 1, 2})));
  EXPECT_EQ(loose.certificate->a2, Subset::of({3}));
}

TEST(VerifyEfTest, Examples) {
  const UtilityProfile p = counting_profile(2);
  EXPECT_FALSE(verify_ef(p, {0}, Subset(), 0).ok);
  EXPECT_EQ(verify_ef(p, {0}, Subset(), 0).failed_agent, 0);
  EXPECT_TRUE(verify_ef(p, {0}, Subset(), 2).ok);
  EXPECT_TRUE(verify_ef(p, {1}, Subset(), 0).ok);
}

TEST(VerifyEfTest, HalvingImpliesEnvyFreeness) {
  Rng rng(12);
  int certified = 0;
  for (const char* kind : kProfileKinds) {
    const UtilityProfile p = generate_profile(kind, 3, 10, 4);
    for (int trial = 0; trial < 25; ++trial) {
      const Subset a1(rng() & 0x3ff);
      const int c = static_cast<int>(rng() % 4);
      const HalvingCheck h = verify_halving(p, a1, c);
      if (!h.certificate) continue;
      ++certified;
      for (int g = 0; g < 100; ++g) {
        std::vector<int> groups(3);
        for (int& x : groups) x = static_cast<int>(rng() % 2);
        ASSERT_TRUE(verify_ef(p, groups, a1, c).ok);
      }
    }
  }
  EXPECT_GT(certified, 10);
}

TEST(ConsensusHalvingTest, EvenCountingSplitsInHalf) {
  const UtilityProfile p = counting_profile(8);
  const HalvingResult r = consensus_halving(p, {});
  ASSERT_TRUE(r.certificate.has_value());
  EXPECT_EQ(r.report.c, 4);
  EXPECT_EQ(r.a1.size(), 4);
  EXPECT_TRUE(r.certificate->agents[0].r1.empty());
  EXPECT_TRUE(r.certificate->agents[0].r2.empty());
}

TEST(ConsensusHalvingTest, OddCountingNeedsOneRemoval) {
  const UtilityProfile p = counting_profile(5);
  const HalvingResult r = consensus_halving(p, {});
  ASSERT_TRUE(r.certificate.has_value());
  EXPECT_LE(r.certificate->agents[0].r1.size(), 1);
  EXPECT_LE(r.certificate->agents[0].r2.size(), 1);
  EXPECT_EQ(std::abs(r.a1.size() - r.a2.size()), 1);
}

TEST(ConsensusHalvingTest, TwoCoverageAgents) {
  const UtilityProfile p = generate_profile("coverage", 2, 12, 8);
  const HalvingResult r = consensus_halving(p, {});
  ASSERT_TRUE(r.certificate.has_value());
  EXPECT_EQ(r.certificate->c, 7);
  EXPECT_TRUE(verify_halving(p, r.a1, 7).certificate.has_value());
  EXPECT_EQ(r.a1 | r.a2, Subset::full(12));
  EXPECT_TRUE((r.a1 & r.a2).empty());
}

TEST(ConsensusHalvingTest, RejectsOversizedGoods) {
  const UtilityProfile p(GroundSet(25), {count(25)});
  try {
    consensus_halving(p, {});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kTooLarge);
  }
}

}  // namespace
}  // namespace lipdisc
