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

#ifndef LIPDISC_ROUNDING_H_
#define LIPDISC_ROUNDING_H_

#include <cstdint>
#include <span>
#include <vector>

#include "lipdisc/bounds.h"
#include "lipdisc/family.h"
#include "lipdisc/fractional.h"

namespace lipdisc {

// An assignment of each element to a color in [0,k).
class Coloring {
 public:
  Coloring(int k, std::vector<int> colors);

  int k() const { return k_; }
  int m() const { return static_cast<int>(colors_.size()); }
  int operator[](int g) const { return colors_[g]; }
  const std::vector<int>& colors() const { return colors_; }

  // The color class chi^{-1}(j).
  Subset color_class(int j) const;

  friend bool operator==(const Coloring&, const Coloring&) = default;

 private:
  int k_;
  std::vector<int> colors_;
};

// Samples each element's color independently from its row; vertex rows keep
// their color. Deterministic in the seed.
Coloring round_once(const FractionalColoring& fractional, std::uint64_t seed);

// max over i and color pairs (j, l) of |f_i(class j) - f_i(class l)|.
double discrepancy(const Family& family, const Coloring& coloring);

struct RoundingReport {
  int trials_used = 0;
  double achieved_disc = 0.0;
  double bound_2t = 0.0;
  double frac_eps = 0.0;
  bool accepted = false;  // achieved_disc < bound_2t + 2 frac_eps
};

struct RoundingResult {
  Coloring coloring;
  RoundingReport report;
};

// Rounds 'fractional' up to 'trials' times with per-trial seeds derived from
// (seed, trial). Returns the lowest-index trial meeting the acceptance
// threshold, otherwise the minimum-discrepancy trial (ties to the lowest
// index).
RoundingResult round_fractional(const Family& family,
                                const FractionalColoring& fractional,
                                double frac_eps, int trials,
                                std::uint64_t seed, int threads = 1);

struct SolveOptions {
  int trials = 1000;
  std::uint64_t seed = 0;
  FractionalMethod method = FractionalMethod::kAuto;
  CutSearchOptions cut_search;  // its seed is derived from 'seed'
  int threads = 1;
};

struct SolveResult {
  Coloring coloring;
  RoundingReport report;
  FractionalSolution fractional;
};

// Balanced fractional coloring followed by randomized rounding.
SolveResult solve(const Family& family, int k, const SolveOptions& options);

struct OracleResult {
  double optimal = 0.0;
  Coloring argmin;
  std::uint64_t colorings_checked = 0;
};

inline constexpr std::uint64_t kMaxOracleColorings = 10'000'000;

// Exact minimum discrepancy over all k^m colorings, with element 0 fixed to
// color 0 (the objective is invariant under relabeling colors). Throws
// kTooLarge when k^m exceeds kMaxOracleColorings.
OracleResult brute_force_disc(const Family& family, int k);

}  // namespace lipdisc

#endif  // LIPDISC_ROUNDING_H_
