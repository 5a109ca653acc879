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

// Extreme-point route for additive families. Starting from the uniform
// coloring, repeatedly move along a null-space direction of the active
// constraints (row sums plus color-balance equations, restricted to the
// fractional variables) until a variable reaches 0 or 1. When the restricted
// system has full column rank, the number of fractional variables is at most
// (#fractional rows) + n(k-1); since each fractional row holds at least two
// fractional variables, at most n(k-1) rows stay fractional.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "lipdisc/error.h"
#include "lipdisc/fractional.h"

namespace lipdisc {
namespace {

constexpr double kSnap = 1e-12;
constexpr double kRankThreshold = 1e-10;
constexpr double kCleanupTolerance = 1e-12;

double snap(double v) {
  if (v < kSnap) return 0.0;
  if (v > 1.0 - kSnap) return 1.0;
  return v;
}

bool is_fractional(double v) { return v > 0.0 && v < 1.0; }

// Restores exact stochasticity of row g after a pivot step.
void repair_row(std::vector<double>& x, int g, int k) {
  double* row = x.data() + static_cast<std::size_t>(g) * k;
  int frac = 0;
  int last = -1;
  int largest = 0;
  for (int j = 0; j < k; ++j) {
    row[j] = snap(row[j]);
    if (is_fractional(row[j])) {
      ++frac;
      last = j;
    }
    if (row[j] > row[largest]) largest = j;
  }
  const int absorb = frac == 1 ? last : largest;
  double others = 0.0;
  for (int j = 0; j < k; ++j) {
    if (j != absorb) others += row[j];
  }
  row[absorb] = snap(std::clamp(1.0 - others, 0.0, 1.0));
}

}  // namespace

FractionalSolution solve_lp_additive(const Family& family, int k) {
  if (k < 2) throw Error(ErrorKind::kInvalidArgument, "need k >= 2");
  if (!family.all_additive()) {
    throw Error(ErrorKind::kNotAdditive,
                "the LP route requires every function to be additive");
  }
  const int m = family.m();
  const int n = family.n();
  std::vector<std::vector<double>> coef(n);
  for (int i = 0; i < n; ++i) {
    coef[i] = std::get<Additive>(family[i].kind()).coefficients;
  }

  std::vector<double> x(static_cast<std::size_t>(m) * k, 1.0 / k);
  int pivots = 0;
  const int max_pivots = m * k + 1;
  while (pivots < max_pivots) {
    std::vector<int> frac;
    std::vector<int> column_of(x.size(), -1);
    for (std::size_t v = 0; v < x.size(); ++v) {
      if (is_fractional(x[v])) {
        column_of[v] = static_cast<int>(frac.size());
        frac.push_back(static_cast<int>(v));
      }
    }
    if (frac.empty()) break;

    std::vector<int> rows;
    for (int g = 0; g < m; ++g) {
      for (int j = 0; j < k; ++j) {
        if (column_of[g * k + j] >= 0) {
          rows.push_back(g);
          break;
        }
      }
    }
    const int balance_rows = n * (k - 1);
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(
        static_cast<Eigen::Index>(rows.size()) + balance_rows,
        static_cast<Eigen::Index>(frac.size()));
    for (std::size_t r = 0; r < rows.size(); ++r) {
      for (int j = 0; j < k; ++j) {
        const int c = column_of[rows[r] * k + j];
        if (c >= 0) a(static_cast<Eigen::Index>(r), c) = 1.0;
      }
    }
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j + 1 < k; ++j) {
        const Eigen::Index r =
            static_cast<Eigen::Index>(rows.size()) + i * (k - 1) + j;
        for (int g = 0; g < m; ++g) {
          const int cj = column_of[g * k + j];
          const int clast = column_of[g * k + k - 1];
          if (cj >= 0) a(r, cj) += coef[i][g];
          if (clast >= 0) a(r, clast) -= coef[i][g];
        }
      }
    }

    Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
    lu.setThreshold(kRankThreshold);
    if (lu.rank() >= static_cast<Eigen::Index>(frac.size())) break;
    Eigen::VectorXd d = lu.kernel().col(0);
    d /= d.cwiseAbs().maxCoeff();

    double step = std::numeric_limits<double>::infinity();
    int hit = -1;
    for (std::size_t c = 0; c < frac.size(); ++c) {
      const double v = x[frac[c]];
      const double dc = d(static_cast<Eigen::Index>(c));
      double t = std::numeric_limits<double>::infinity();
      if (dc > 1e-14) t = (1.0 - v) / dc;
      if (dc < -1e-14) t = v / -dc;
      if (t < step) {
        step = t;
        hit = static_cast<int>(c);
      }
    }
    if (hit < 0) break;
    for (std::size_t c = 0; c < frac.size(); ++c) {
      x[frac[c]] += step * d(static_cast<Eigen::Index>(c));
    }
    x[frac[hit]] = d(hit) > 0 ? 1.0 : 0.0;
    for (int g : rows) repair_row(x, g, k);
    ++pivots;
  }

  // Snap rows whose move to a vertex changes no color value by more than
  // the cleanup tolerance (elements every function ignores).
  for (int g = 0; g < m; ++g) {
    double* row = x.data() + static_cast<std::size_t>(g) * k;
    if (std::none_of(row, row + k, is_fractional)) continue;
    double reach = 0.0;
    for (int i = 0; i < n; ++i) reach = std::max(reach, std::abs(coef[i][g]));
    if (reach > kCleanupTolerance) continue;
    const int best = static_cast<int>(std::max_element(row, row + k) - row);
    std::fill(row, row + k, 0.0);
    row[best] = 1.0;
  }

  FractionalColoring coloring(m, k, std::move(x));
  FractionalReport report;
  report.method = FractionalMethod::kLp;
  report.iterations = pivots;
  report.fractional_count = coloring.fractional_count();
  report.epsilon = balance_objective(family, coloring);
  report.success = report.epsilon <= 1e-9;
  return FractionalSolution{std::move(coloring), report, std::nullopt};
}

}  // namespace lipdisc
