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

// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "lipdisc/bounds.h"
#include "lipdisc/error.h"
#include "lipdisc/fairdiv.h"
#include "lipdisc/fractional.h"
#include "lipdisc/harness.h"
#include "lipdisc/lipschitz.h"
#include "lipdisc/multilinear.h"
#include "lipdisc/rng.h"
#include "lipdisc/rounding.h"
#include "lipdisc/sparse.h"
#include "test_util.h"

namespace lipdisc {
namespace {

using ::lipdisc::testing::unpruned_optimum;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string format(const char* fmt, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof(buf), fmt, args...);
  return buf;
}

std::uint64_t mix(std::uint64_t base, std::initializer_list<std::uint64_t> p) {
  return derive_seed(base, p);
}

// 1. k = 2, n in {1,2,4,8}, m in {16,32,64}, 100 instances per cell cycling
// through additive / linf_vector_sum / tabulated (coverage where m > 20,
// since tables stop at m = 20). At least 95% accepted in every cell, whole
// sweep under ten minutes.
Outcome bound_sweep() {
  const auto start = std::chrono::steady_clock::now();
  double worst_rate = 2.0;
  std::string worst_cell;
  int total = 0;
  int accepted = 0;
  int bound_violations = 0;
  for (int n : {1, 2, 4, 8}) {
    for (int m : {16, 32, 64}) {
      const char* third = m <= kMaxTabulatedSize ? "tabulated" : "coverage";
      const char* kinds[] = {"additive", "linf_vector_sum", third};
      int cell_ok = 0;
      for (int s = 0; s < 100; ++s) {
        const std::uint64_t seed = mix(1, {std::uint64_t(n), std::uint64_t(m),
                                           std::uint64_t(s)});
        const Family fam = generate(kinds[s % 3], n, m, seed);
        SolveOptions opt;
        opt.seed = seed;
        opt.trials = 1000;
        const SolveResult r = solve(fam, 2, opt);
        const double limit =
            std::sqrt(2.0 * n * (1.0 + std::log(2.0 * n))) + 2 * r.report.frac_eps;
        const bool ok = r.report.achieved_disc < limit;
        if (ok != r.report.accepted) ++bound_violations;
        cell_ok += ok;
      }
      total += 100;
      accepted += cell_ok;
      if (cell_ok / 100.0 < worst_rate) {
        worst_rate = cell_ok / 100.0;
        worst_cell = format("n=%d m=%d", n, m);
      }
    }
  }
  const double secs = std::chrono::duration<double>(
                          std::chrono::steady_clock::now() - start)
                          .count();
  return {worst_rate >= 0.95 && secs < 600 && bound_violations == 0,
          format("%d/%d accepted, worst cell %s at %.0f%%, %.1fs", accepted,
                 total, worst_cell.c_str(), 100 * worst_rate, secs)};
}

// 2. LP route: <= n k fractional and epsilon <= 1e-9 on 100 random additive
// instances; cut search: <= n (k-1) fractional on every emitted profile.
Outcome fractional_counts() {
  int lp_bad = 0;
  int lp_max_frac = 0;
  double lp_max_eps = 0.0;
  for (int s = 0; s < 100; ++s) {
    const int n = 1 + s % 6;
    const int m = 1 + static_cast<int>(mix(2, {std::uint64_t(s)}) % 64);
    const int k = 2 + (s / 6) % 2;
    const Family fam = generate("additive", n, m, mix(3, {std::uint64_t(s)}));
    const FractionalSolution sol = solve_lp_additive(fam, k);
    // Recompute the balance from the weights, independent of the report.
    double eps = 0.0;
    for (const SetFunction& f : fam.functions()) {
      const auto& a = std::get<Additive>(f.kind()).coefficients;
      std::vector<double> sums(k, 0.0);
      for (int g = 0; g < m; ++g) {
        for (int j = 0; j < k; ++j) sums[j] += a[g] * sol.coloring.weight(g, j);
      }
      const auto [lo, hi] = std::minmax_element(sums.begin(), sums.end());
      eps = std::max(eps, *hi - *lo);
    }
    const int frac = sol.coloring.fractional_count();
    lp_max_frac = std::max(lp_max_frac, frac - n * (k - 1));
    lp_max_eps = std::max(lp_max_eps, eps);
    if (frac > n * k || eps > 1e-9 || sol.report.fractional_count != frac) {
      ++lp_bad;
    }
  }
  int cut_bad = 0;
  int cut_runs = 0;
  const char* kinds[] = {"linf_vector_sum", "coverage", "budgeted_additive",
                         "dist_to_upset", "tabulated", "additive"};
  for (int s = 0; s < 60; ++s) {
    const int n = 1 + s % 4;
    const int k = 2 + (s / 4) % 2;
    const Family fam = generate(kinds[s % 6], n, 12, mix(4, {std::uint64_t(s)}));
    CutSearchOptions opt;
    opt.budget = 3;
    opt.seed = s;
    const FractionalSolution sol = solve_cut_search(fam, k, opt);
    ++cut_runs;
    const int limit = n * (k - 1);
    if (!sol.profile || static_cast<int>(sol.profile->cuts.size()) > limit ||
        sol.coloring.fractional_count() > limit ||
        embed(*sol.profile, 12).weights() != sol.coloring.weights()) {
      ++cut_bad;
    }
  }
  return {lp_bad == 0 && cut_bad == 0,
          format("lp: %d/100 bad, max eps %.1e, max excess over n(k-1) %d; "
                 "cuts: %d/%d bad",
                 lp_bad, lp_max_eps, std::max(lp_max_frac, 0), cut_bad,
                 cut_runs)};
}

// 3. 50 instances with m <= 12, k = 2: oracle optimum <= pipeline result,
// and the pruned oracle equals plain enumeration.
Outcome oracle_equivalence() {
  const char* kinds[] = {"additive", "linf_vector_sum", "coverage",
                         "budgeted_additive", "dist_to_upset", "tabulated"};
  int dominance_bad = 0;
  int mismatch = 0;
  for (int s = 0; s < 50; ++s) {
    const int n = 1 + s % 3;
    const int m = 4 + s % 9;
    const std::uint64_t seed = mix(5, {std::uint64_t(s)});
    const Family fam = generate(kinds[s % 6], n, m, seed);
    const OracleResult oracle = brute_force_disc(fam, 2);
    if (std::abs(oracle.optimal - unpruned_optimum(fam, 2)) > 1e-12) ++mismatch;
    SolveOptions opt;
    opt.seed = seed;
    const SolveResult r = solve(fam, 2, opt);
    if (oracle.optimal > r.report.achieved_disc + 1e-12) ++dominance_bad;
  }
  return {dominance_bad == 0 && mismatch == 0,
          format("50 instances: %d dominance failures, %d oracle mismatches",
                 dominance_bad, mismatch)};
}

// Exact E f(X) for X ~ x, with closed forms past the enumeration cap.
double exact_mean(const SetFunction& f, const std::vector<double>& x) {
  if (const auto* a = std::get_if<Additive>(&f.kind())) {
    double s = 0.0;
    for (std::size_t g = 0; g < x.size(); ++g) s += a->coefficients[g] * x[g];
    return s;
  }
  if (const auto* c = std::get_if<Coverage>(&f.kind())) {
    std::vector<double> miss(c->universe, 1.0);
    for (std::size_t g = 0; g < x.size(); ++g) {
      for (int item : c->covers[g]) miss[item] *= 1.0 - x[g];
    }
    double covered = 0.0;
    for (double p : miss) covered += 1.0 - p;
    return covered / c->universe;
  }
  return multilinear_exact(f, x);
}

// 4. Over 10,000 rounding seeds the tail frequency of |f(class 1) - mean|
// stays within 2 exp(-2 t^2 / q) + 0.01 for t in {0.5, 1, 1.5} sqrt(q).
Outcome concentration() {
  double worst_margin = -1.0;
  int checks = 0;
  int failures = 0;
  for (int q : {8, 16, 32}) {
    std::vector<const char*> kinds = {"additive", "coverage"};
    if (q <= kMaxExactSupport) {
      kinds.push_back("linf_vector_sum");
      kinds.push_back("dist_to_upset");
    }
    const int m = q + 6;
    for (const char* kind : kinds) {
      const Family fam = generate(kind, 1, m, mix(6, {std::uint64_t(q)}));
      Rng rng(mix(7, {std::uint64_t(q)}));
      std::vector<double> w;
      for (int g = 0; g < m; ++g) {
        const double p = g < q ? 0.2 + 0.6 * uniform01(rng) : (g % 2 ? 1.0 : 0.0);
        w.insert(w.end(), {p, 1.0 - p});
      }
      const FractionalColoring frac(m, 2, w);
      const double mean = exact_mean(fam[0], frac.column(0));
      std::vector<double> dev(10000);
      for (int s = 0; s < 10000; ++s) {
        const Coloring c = round_once(frac, mix(8, {std::uint64_t(q),
                                                    std::uint64_t(s)}));
        dev[s] = std::abs(fam[0](c.color_class(0)) - mean);
      }
      for (double mult : {0.5, 1.0, 1.5}) {
        const double t = mult * std::sqrt(q);
        const double freq =
            std::count_if(dev.begin(), dev.end(), [&](double d) { return d >= t; }) /
            10000.0;
        const double margin = freq - (mcdiarmid_tail(t, q) + 0.01);
        worst_margin = std::max(worst_margin, margin);
        ++checks;
        failures += margin > 0;
      }
    }
  }
  return {failures == 0,
          format("%d (q, t, kind) checks, %d over bound, worst freq - bound "
                 "%.4f",
                 checks, failures, worst_margin)};
}

// 5. 1000 random (f, x, y) per kind at m <= 12: the extension is 1-Lipschitz
// in L1 under exact evaluation.
Outcome extension_lipschitz() {
  const char* kinds[] = {"additive", "linf_vector_sum", "coverage",
                         "budgeted_additive", "dist_to_upset", "tabulated"};
  int violations = 0;
  double worst = -INFINITY;
  for (const char* kind : kinds) {
    Rng rng(mix(9, {std::uint64_t(kind[0]), std::uint64_t(kind[1])}));
    for (int trial = 0; trial < 1000; ++trial) {
      const int m = 2 + trial % 11;
      const Family fam = generate(kind, 1, m, mix(10, {std::uint64_t(trial)}));
      std::vector<double> x(m);
      std::vector<double> y(m);
      double l1 = 0.0;
      for (int g = 0; g < m; ++g) {
        x[g] = uniform01(rng);
        // Nearby points as well as far ones.
        y[g] = trial % 2 ? uniform01(rng)
                         : std::clamp(x[g] + 0.05 * (uniform01(rng) - 0.5), 0.0, 1.0);
        l1 += std::abs(x[g] - y[g]);
      }
      const double gap =
          std::abs(multilinear_exact(fam[0], x) - multilinear_exact(fam[0], y));
      worst = std::max(worst, gap - l1);
      violations += gap > l1 + 1e-9;
    }
  }
  return {violations == 0,
          format("6000 triples, %d violations, max gap - L1 = %.3g", violations,
                 worst)};
}

// 6. n in {1,2}, m in 8..20, three monotone profile kinds, 25 seeds: every
// run whose inner disc is below c/2 certifies; certificates pass EF under 10
// random groupings.
Outcome halving_end_to_end() {
  const char* kinds[] = {"additive_nonneg", "coverage", "monotone_tabulated"};
  int runs = 0;
  int below = 0;
  int certified = 0;
  int verification_failed = 0;
  int missing = 0;
  int ef_failures = 0;
  for (int n : {1, 2}) {
    for (int m = 8; m <= 20; ++m) {
      for (const char* kind : kinds) {
        for (int s = 0; s < 25; ++s) {
          const std::uint64_t seed =
              mix(11, {std::uint64_t(n), std::uint64_t(m), std::uint64_t(s),
                       std::uint64_t(kind[0])});
          const UtilityProfile p = generate_profile(kind, n, m, seed);
          SolveOptions opt;
          opt.seed = seed;
          ++runs;
          HalvingResult r;
          try {
            r = consensus_halving(p, opt);
          } catch (const Error& e) {
            if (e.kind() == ErrorKind::kVerificationFailed) {
              ++verification_failed;
              continue;
            }
            throw;
          }
          if (r.report.inner_below_half_c) {
            ++below;
            if (!r.certificate) ++missing;
          }
          if (!r.certificate) continue;
          ++certified;
          Rng rng(seed);
          for (int g = 0; g < 10; ++g) {
            std::vector<int> groups(n);
            for (int& x : groups) x = static_cast<int>(rng() % 2);
            ef_failures += !verify_ef(p, groups, r.a1, r.report.c).ok;
          }
        }
      }
    }
  }
  return {verification_failed == 0 && missing == 0 && ef_failures == 0,
          format("%d runs, %d with inner disc < c/2, %d certified, %d "
                 "VerificationFailed, %d EF failures",
                 runs, below, certified, verification_failed + missing,
                 ef_failures)};
}

// 7. Exhaustive at m = 12: M is complete and upward closed, the supersets-only
// distance equals brute force, and f = d(., M) is 1-Lipschitz.
Outcome fairdiv_structure() {
  const char* kinds[] = {"additive_nonneg", "coverage", "budgeted_additive",
                         "monotone_tabulated"};
  const int m = 12;
  const std::uint64_t full = Subset::full(m).bits();
  int bad = 0;
  int cases = 0;
  for (const char* kind : kinds) {
    for (int n : {1, 2, 4}) {
      const UtilityProfile p =
          generate_profile(kind, 1, m, mix(12, {std::uint64_t(n), std::uint64_t(kind[0])}));
      const int c = c_bound(n);
      const SetFunction& u = p[0];
      std::vector<char> member(full + 1);
      for (std::uint64_t s = 0; s <= full; ++s) member[s] = in_M(u, Subset(s), c);
      bool ok = true;
      for (std::uint64_t s = 0; s <= full && ok; ++s) {
        if (!member[s] && !member[full & ~s]) ok = false;
        if (!member[s]) continue;
        for (int g = 0; g < m; ++g) {
          if (!member[s | (std::uint64_t{1} << g)]) ok = false;
        }
      }
      // Brute-force distance: min Hamming distance over all members.
      std::vector<std::uint64_t> members;
      for (std::uint64_t s = 0; s <= full; ++s) {
        if (member[s]) members.push_back(s);
      }
      const SetFunction f = build_f(u, c);
      for (std::uint64_t s = 0; s <= full && ok; ++s) {
        int best = m + 1;
        for (std::uint64_t t : members) {
          best = std::min(best, std::popcount(s ^ t));
        }
        if (dist_to_M(u, Subset(s), c) != best || f(Subset(s)) != best) ok = false;
      }
      if (!check_lipschitz_exhaustive(f).pass) ok = false;
      ++cases;
      bad += !ok;
    }
  }
  return {bad == 0, format("%d utilities exhaustively checked at m=12, %d failed",
                           cases, bad)};
}

// 8. 50 sparse instances, t in {1,2,4}: measured disc <= inner disc + c.
Outcome sparse_decomposition() {
  int bad = 0;
  double worst = -INFINITY;
  int kept_total = 0;
  for (int s = 0; s < 50; ++s) {
    const int t = std::vector<int>{1, 2, 4}[s % 3];
    const int n = 4 + s % 9;
    const int m = 16 + (s * 7) % 49;
    const char* kind = s % 2 ? "linf_vector_sum" : "additive";
    const std::uint64_t seed = mix(13, {std::uint64_t(s)});
    const Family fam = generate_sparse(kind, n, m, t, seed);
    SolveOptions opt;
    opt.seed = seed;
    const SparseResult r = solve_sparse(fam, opt);
    const double slack =
        r.report.disc - (r.report.inner_disc + r.report.c);
    worst = std::max(worst, slack);
    kept_total += r.report.kept;
    if (slack > 1e-9 || r.report.t != sparsity(fam) ||
        std::abs(r.report.disc - discrepancy(fam, r.coloring)) > 1e-12) {
      ++bad;
    }
  }
  return {bad == 0, format("50 instances (%d functions kept overall), %d "
                           "failures, max disc - (inner + c) = %.3f",
                           kept_total, bad, worst)};
}

}  // namespace
}  // namespace lipdisc

int main() {
  using lipdisc::Outcome;
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"1 bound sweep (k=2, n<=8, m<=64)", lipdisc::bound_sweep},
      {"2 fractional counts (lp, cut search)", lipdisc::fractional_counts},
      {"3 oracle equivalence", lipdisc::oracle_equivalence},
      {"4 rounding concentration", lipdisc::concentration},
      {"5 multilinear extension 1-Lipschitz", lipdisc::extension_lipschitz},
      {"6 consensus halving end to end", lipdisc::halving_end_to_end},
      {"7 valid-set structure", lipdisc::fairdiv_structure},
      {"8 sparse decomposition", lipdisc::sparse_decomposition},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%s criterion %s: %s\n", o.pass ? "PASS" : "FAIL", name,
                o.detail.c_str());
    std::fflush(stdout);
    failed += !o.pass;
  }
  std::printf("%d/%zu criteria passed\n",
              static_cast<int>(std::size(criteria)) - failed, std::size(criteria));
  return failed == 0 ? 0 : 1;
}
