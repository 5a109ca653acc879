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

#include "lipdisc/sparse.h"

#include <algorithm>
#include <cmath>

#include "lipdisc/error.h"
#include "lipdisc/rng.h"

namespace lipdisc {
namespace {

Subset exhaustive_relevant(const SetFunction& f) {
  const int m = f.ground_size();
  const std::uint64_t count = std::uint64_t{1} << m;
  std::vector<double> values(count);
  for (std::uint64_t s = 0; s < count; ++s) values[s] = f.value(Subset(s));
  Subset found;
  for (int g = 0; g < m; ++g) {
    const std::uint64_t bit = std::uint64_t{1} << g;
    for (std::uint64_t s = 0; s < count; ++s) {
      if (!(s & bit) && values[s] != values[s | bit]) {
        found = found.with(g);
        break;
      }
    }
  }
  return found;
}

}  // namespace

Subset relevant_set_structural(const SetFunction& f) {
  const int m = f.ground_size();
  if (f.output_scale() == 0.0) return Subset();
  const FunctionKind& kind = f.kind();
  Subset found;
  if (const auto* a = std::get_if<Additive>(&kind)) {
    for (int g = 0; g < m; ++g) {
      if (a->coefficients[g] != 0.0) found = found.with(g);
    }
    return found;
  }
  if (const auto* v = std::get_if<LinfVectorSum>(&kind)) {
    for (int g = 0; g < m; ++g) {
      const auto& vec = v->vectors[g];
      if (std::any_of(vec.begin(), vec.end(), [](double x) { return x != 0.0; })) {
        found = found.with(g);
      }
    }
    return found;
  }
  if (const auto* c = std::get_if<Coverage>(&kind)) {
    for (int g = 0; g < m; ++g) {
      if (!c->covers[g].empty()) found = found.with(g);
    }
    return found;
  }
  if (const auto* b = std::get_if<BudgetedAdditive>(&kind)) {
    // min(s + a_g, B) differs from min(s, B) for some reachable s iff the
    // smallest reachable sum without g stays below B (a_g > 0), or below
    // B - a_g (a_g < 0).
    double negatives = 0.0;
    for (double x : b->coefficients) negatives += std::min(x, 0.0);
    for (int g = 0; g < m; ++g) {
      const double a_g = b->coefficients[g];
      if (a_g == 0.0) continue;
      const double low = negatives - std::min(a_g, 0.0);
      if ((a_g > 0.0 && low < b->budget) || (a_g < 0.0 && low + a_g < b->budget)) {
        found = found.with(g);
      }
    }
    return found;
  }
  if (const auto* d = std::get_if<DistToMonotoneUpset>(&kind)) {
    if (auto rel = d->upset->relevant_elements()) return *rel;
    if (f.declared_relevant()) return *f.declared_relevant();
    throw Error(ErrorKind::kUnstructured,
                "relevant set of a black-box upset distance needs a declaration");
  }
  return exhaustive_relevant(f);  // tabulated, m <= 20
}

Subset relevant_set_probe(const SetFunction& f, int trials, std::uint64_t seed) {
  const int m = f.ground_size();
  Subset found = f.declared_relevant().value_or(Subset());
  Rng rng(derive_seed(seed, {0x9e1}));
  std::uniform_int_distribution<int> pick(0, m - 1);
  for (int trial = 0; trial < trials; ++trial) {
    const double density = uniform01(rng);
    Subset s;
    for (int g = 0; g < m; ++g) {
      if (uniform01(rng) < density) s = s.with(g);
    }
    const int g = pick(rng);
    if (found.contains(g)) continue;
    if (f.value(s.without(g)) != f.value(s.with(g))) found = found.with(g);
  }
  return found;
}

std::optional<int> undeclared_relevant_element(const SetFunction& f,
                                               int trials, std::uint64_t seed) {
  if (!f.declared_relevant()) return std::nullopt;
  const Subset extra = relevant_set_probe(f, trials, seed) - *f.declared_relevant();
  if (extra.empty()) return std::nullopt;
  return extra.elements().front();
}

int sparsity(const std::vector<Subset>& relevant, int m) {
  int t = 0;
  for (int g = 0; g < m; ++g) {
    int hits = 0;
    for (Subset r : relevant) hits += r.contains(g) ? 1 : 0;
    t = std::max(t, hits);
  }
  return t;
}

int sparsity(const Family& family) {
  std::vector<Subset> relevant;
  for (const SetFunction& f : family.functions()) {
    relevant.push_back(relevant_set_structural(f));
  }
  return sparsity(relevant, family.m());
}

double sparse_threshold(int m, int t, double log_base) {
  if (!(log_base > 1.0)) {
    throw Error(ErrorKind::kInvalidArgument, "log base must exceed 1");
  }
  const double mt = static_cast<double>(m) * t;
  if (mt <= 1.0) return 0.0;
  return std::cbrt(mt) * std::cbrt(std::log(mt) / std::log(log_base));
}

SparseResult solve_sparse(const Family& family, const SolveOptions& options,
                          const SparseOptions& sparse) {
  SparseReport report;
  for (const SetFunction& f : family.functions()) {
    report.relevant.push_back(relevant_set_structural(f));
  }
  const int m = family.m();
  report.t = sparsity(report.relevant, m);
  report.c = sparse_threshold(m, report.t, sparse.log_base);

  std::vector<SetFunction> kept;
  for (int i = 0; i < family.n(); ++i) {
    if (report.relevant[i].size() >= report.c) kept.push_back(family[i]);
  }
  report.kept = static_cast<int>(kept.size());

  std::vector<int> colors(m);
  for (int g = 0; g < m; ++g) colors[g] = g % 2;
  Coloring coloring(2, colors);
  if (!kept.empty()) {
    const Family inner(family.ground(), std::move(kept));
    SolveResult solved = solve(inner, 2, options);
    coloring = solved.coloring;
    report.inner_disc = solved.report.achieved_disc;
    report.inner_bound = solved.report.bound_2t + 2.0 * solved.report.frac_eps;
  }
  report.disc = discrepancy(family, coloring);
  report.decomposition_bound = report.inner_disc + report.c;
  return SparseResult{std::move(coloring), std::move(report)};
}

}  // namespace lipdisc
