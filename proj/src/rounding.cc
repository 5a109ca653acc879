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

#include "lipdisc/rounding.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <thread>

#include "lipdisc/error.h"
#include "lipdisc/rng.h"

namespace lipdisc {

Coloring::Coloring(int k, std::vector<int> colors)
    : k_(k), colors_(std::move(colors)) {
  if (k < 1) throw Error(ErrorKind::kInvalidArgument, "coloring needs k >= 1");
  if (colors_.empty() || colors_.size() > kMaxGroundSize) {
    throw Error(ErrorKind::kInvalidArgument, "coloring needs 1..64 elements");
  }
  for (int c : colors_) {
    if (c < 0 || c >= k) {
      throw Error(ErrorKind::kInvalidArgument,
                  "color " + std::to_string(c + 1) + " outside [1," +
                      std::to_string(k) + "]");
    }
  }
}

Subset Coloring::color_class(int j) const {
  Subset s;
  for (int g = 0; g < m(); ++g) {
    if (colors_[g] == j) s = s.with(g);
  }
  return s;
}

Coloring round_once(const FractionalColoring& fractional, std::uint64_t seed) {
  Rng rng(seed);
  const int k = fractional.k();
  std::vector<int> colors(fractional.m());
  for (int g = 0; g < fractional.m(); ++g) {
    if (auto vertex = fractional.vertex_color(g)) {
      colors[g] = *vertex;
      continue;
    }
    const double u = uniform01(rng);
    double acc = 0.0;
    int pick = k - 1;
    for (int j = 0; j < k; ++j) {
      acc += fractional.weight(g, j);
      if (u < acc) {
        pick = j;
        break;
      }
    }
    // Never land on a zero-weight color through the fallback.
    while (fractional.weight(g, pick) == 0.0 && pick > 0) --pick;
    colors[g] = pick;
  }
  return Coloring(k, std::move(colors));
}

double discrepancy(const Family& family, const Coloring& coloring) {
  if (coloring.m() != family.m()) {
    throw Error(ErrorKind::kInvalidArgument,
                "coloring and family disagree on m");
  }
  const int k = coloring.k();
  std::vector<Subset> classes(k);
  for (int g = 0; g < coloring.m(); ++g) {
    classes[coloring[g]] = classes[coloring[g]].with(g);
  }
  double worst = 0.0;
  for (const SetFunction& f : family.functions()) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (Subset c : classes) {
      const double v = f.value(c);
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    worst = std::max(worst, hi - lo);
  }
  return worst;
}

RoundingResult round_fractional(const Family& family,
                                const FractionalColoring& fractional,
                                double frac_eps, int trials,
                                std::uint64_t seed, int threads) {
  if (trials < 1) throw Error(ErrorKind::kInvalidArgument, "trials must be >= 1");
  const int k = fractional.k();
  RoundingReport report;
  report.bound_2t = theorem_bound(family.n(), k);
  report.frac_eps = frac_eps;
  const double threshold = report.bound_2t + 2.0 * frac_eps;

  // Trials run in fixed-width blocks and are scanned in index order, so the
  // selected trial is the same for any thread count.
  constexpr int kBlock = 64;
  std::vector<double> disc(kBlock);
  std::vector<Coloring> colorings(kBlock, Coloring(k, std::vector<int>(
                                                          fractional.m(), 0)));
  double best_disc = std::numeric_limits<double>::infinity();
  Coloring best = colorings[0];
  const int workers = std::max(1, threads);
  for (int base = 0; base < trials; base += kBlock) {
    const int count = std::min(kBlock, trials - base);
    auto run = [&](int b) {
      colorings[b] = round_once(
          fractional,
          derive_seed(seed, {static_cast<std::uint64_t>(base + b)}));
      disc[b] = discrepancy(family, colorings[b]);
    };
    if (workers == 1) {
      for (int b = 0; b < count; ++b) run(b);
    } else {
      std::vector<std::thread> pool;
      for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
          for (int b = w; b < count; b += workers) run(b);
        });
      }
      for (auto& t : pool) t.join();
    }
    for (int b = 0; b < count; ++b) {
      if (disc[b] < threshold) {
        report.trials_used = base + b + 1;
        report.achieved_disc = disc[b];
        report.accepted = true;
        return RoundingResult{colorings[b], report};
      }
      if (disc[b] < best_disc) {
        best_disc = disc[b];
        best = colorings[b];
      }
    }
  }
  report.trials_used = trials;
  report.achieved_disc = best_disc;
  report.accepted = false;
  return RoundingResult{best, report};
}

SolveResult solve(const Family& family, int k, const SolveOptions& options) {
  CutSearchOptions cut = options.cut_search;
  cut.seed = derive_seed(options.seed, {0xf5ac});
  FractionalSolution frac =
      solve_fractional(family, k, options.method, cut);
  RoundingResult rounded =
      round_fractional(family, frac.coloring, frac.report.epsilon,
                       options.trials, derive_seed(options.seed, {0x50d}),
                       options.threads);
  return SolveResult{std::move(rounded.coloring), rounded.report,
                     std::move(frac)};
}

OracleResult brute_force_disc(const Family& family, int k) {
  if (k < 1) throw Error(ErrorKind::kInvalidArgument, "need k >= 1");
  const int m = family.m();
  double total = 1.0;
  for (int g = 0; g < m; ++g) total *= k;
  if (total > static_cast<double>(kMaxOracleColorings)) {
    throw Error(ErrorKind::kTooLarge,
                "k^m = " + std::to_string(total) +
                    " colorings exceed the oracle cap of 1e7");
  }
  // Odometer over colors of elements 1..m-1; element 0 stays color 0.
  std::vector<int> colors(m, 0);
  std::vector<Subset> classes(k);
  classes[0] = Subset::full(m);
  OracleResult result{std::numeric_limits<double>::infinity(),
                      Coloring(k, colors), 0};
  while (true) {
    ++result.colorings_checked;
    double worst = 0.0;
    for (const SetFunction& f : family.functions()) {
      double lo = std::numeric_limits<double>::infinity();
      double hi = -lo;
      for (Subset c : classes) {
        const double v = f.value(c);
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
      worst = std::max(worst, hi - lo);
      if (worst >= result.optimal) break;
    }
    if (worst < result.optimal) {
      result.optimal = worst;
      result.argmin = Coloring(k, colors);
    }
    int g = 1;
    while (g < m) {
      classes[colors[g]] = classes[colors[g]].without(g);
      if (++colors[g] < k) {
        classes[colors[g]] = classes[colors[g]].with(g);
        break;
      }
      colors[g] = 0;
      classes[0] = classes[0].with(g);
      ++g;
    }
    if (g >= m) break;
  }
  return result;
}

}  // namespace lipdisc
