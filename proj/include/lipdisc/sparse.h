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

#ifndef LIPDISC_SPARSE_H_
#define LIPDISC_SPARSE_H_

#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

#include "lipdisc/family.h"
#include "lipdisc/rounding.h"

namespace lipdisc {

// Elements g with f(S) != f(S + g) for some S, computed from the kind's
// parameters (additive, linf-vector-sum, coverage, budgeted-additive,
// generator-based upsets) or by an exhaustive scan (tabulated). Black-box
// kinds fall back to the declared relevant set and otherwise throw
// kUnstructured.
Subset relevant_set_structural(const SetFunction& f);

// Elements found relevant by 'trials' random probes, united with the
// declared relevant set. Probing never certifies irrelevance.
Subset relevant_set_probe(const SetFunction& f, int trials, std::uint64_t seed);

// An element found relevant by probing that the declaration omits, if any.
std::optional<int> undeclared_relevant_element(const SetFunction& f,
                                               int trials, std::uint64_t seed);

// Maximum over elements of the number of functions the element is relevant
// for, given per-function relevant sets.
int sparsity(const std::vector<Subset>& relevant, int m);
int sparsity(const Family& family);

struct SparseOptions {
  // Base of the logarithm in the threshold; e by default.
  double log_base = std::exp(1.0);
};

// (m t)^{1/3} (log(m t))^{1/3}, or 0 when m t <= 1.
double sparse_threshold(int m, int t, double log_base = std::exp(1.0));

struct SparseReport {
  int t = 0;
  double c = 0.0;
  int kept = 0;               // |F'|, functions with |R(f)| >= c
  double inner_disc = 0.0;    // discrepancy of F' under the coloring
  double inner_bound = 0.0;   // theorem_bound(|F'|, 2) + 2 frac_eps
  double disc = 0.0;          // measured discrepancy over all of F
  double decomposition_bound = 0.0;  // inner_disc + c
  std::vector<Subset> relevant;
};

struct SparseResult {
  Coloring coloring;
  SparseReport report;
};

// Colors F' = {f : |R(f)| >= c} with the main pipeline (k = 2) and applies
// the same coloring to every function. When F' is empty the elements are
// colored alternately.
SparseResult solve_sparse(const Family& family, const SolveOptions& options,
                          const SparseOptions& sparse = {});

}  // namespace lipdisc

#endif  // LIPDISC_SPARSE_H_
