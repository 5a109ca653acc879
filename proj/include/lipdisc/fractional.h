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

#ifndef LIPDISC_FRACTIONAL_H_
#define LIPDISC_FRACTIONAL_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "lipdisc/family.h"

namespace lipdisc {

// A partition of [0,1] by sorted cut positions into |cuts|+1 segments, each
// labeled with a color in [0,k). Repeated cuts give empty segments.
struct CutProfile {
  int k = 2;
  std::vector<double> cuts;
  std::vector<int> labels;

  void validate() const;  // throws kInvalidArgument
};

// An m x k row-stochastic table: row g is the color distribution of element
// g. A row is integral when it is a vertex of the simplex.
class FractionalColoring {
 public:
  FractionalColoring(int m, int k, std::vector<double> weights);
  static FractionalColoring integral(std::span<const int> colors, int k);

  int m() const { return m_; }
  int k() const { return k_; }
  double weight(int g, int j) const { return weights_[g * k_ + j]; }
  std::span<const double> row(int g) const {
    return {weights_.data() + g * k_, static_cast<std::size_t>(k_)};
  }
  const std::vector<double>& weights() const { return weights_; }

  // The m-vector of color-j weights.
  std::vector<double> column(int j) const;

  // Color of an integral row, nullopt for a fractional one.
  std::optional<int> vertex_color(int g) const;
  int fractional_count() const;

 private:
  int m_;
  int k_;
  std::vector<double> weights_;
};

enum class FractionalMethod { kAuto, kLp, kCutSearch };
std::string_view method_name(FractionalMethod method);
FractionalMethod method_from_name(std::string_view name);

struct FractionalReport {
  double epsilon = 0.0;  // achieved max pairwise color-value gap
  int fractional_count = 0;
  int iterations = 0;
  FractionalMethod method = FractionalMethod::kLp;
  bool success = true;  // epsilon <= target (always true for lp)
};

// Element g owns [g/m, (g+1)/m]; its color-j weight is m times the length of
// that interval covered by segments labeled j. Cuts within 1e-9 element
// widths of a boundary are moved onto it.
FractionalColoring embed(const CutProfile& profile, int m);

// Multilinear values f_i(column j), as an n x k row-major table. Values use
// multilinear_value with per-(i,j) seeds derived from 'seed'.
std::vector<double> color_values(const Family& family,
                                 const FractionalColoring& coloring,
                                 std::uint64_t seed = 0);

// max over i, j, l of |f_i(column j) - f_i(column l)|.
double balance_objective(const Family& family,
                         const FractionalColoring& coloring,
                         std::uint64_t seed = 0);

struct FractionalSolution {
  FractionalColoring coloring;
  FractionalReport report;
  std::optional<CutProfile> profile;  // set by the cut search
};

// Extreme-point solution of the additive balance system. Throws
// kNotAdditive if any function is not additive.
FractionalSolution solve_lp_additive(const Family& family, int k);

struct CutSearchOptions {
  int budget = 12;  // number of restarts
  std::uint64_t seed = 0;
  double eps_target = -1.0;  // < 0 selects default_eps_target(n, k)
  int evals_per_restart = 1500;
  int threads = 1;
};

double default_eps_target(int n, int k);

// Numerical search over profiles with n(k-1) cuts for a balanced
// embedding. Deterministic in (family, k, options); the best epsilon never
// increases with the budget. report.success is false when the target was
// not reached (the best profile found is still returned).
FractionalSolution solve_cut_search(const Family& family, int k,
                                    const CutSearchOptions& options = {});

// kAuto picks the LP for all-additive families and the cut search otherwise.
FractionalSolution solve_fractional(const Family& family, int k,
                                    FractionalMethod method,
                                    const CutSearchOptions& options = {});

struct FractionalCheck {
  bool ok = false;
  int fractional_count = 0;
  double epsilon = 0.0;
};

// ok iff balance_objective <= eps and at most n(k-1) rows are fractional.
FractionalCheck verify_fractional(const Family& family,
                                  const FractionalColoring& coloring,
                                  double eps);

}  // namespace lipdisc

#endif  // LIPDISC_FRACTIONAL_H_
