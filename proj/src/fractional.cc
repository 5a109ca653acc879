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

#include <algorithm>
#include <cmath>
#include <string>

#include "lipdisc/bounds.h"
#include "lipdisc/error.h"
#include "lipdisc/multilinear.h"
#include "lipdisc/rng.h"

namespace lipdisc {
namespace {

constexpr double kRowSumTolerance = 1e-12;
constexpr double kBoundarySnap = 1e-9;

void invalid(const std::string& what) {
  throw Error(ErrorKind::kInvalidArgument, what);
}

}  // namespace

void CutProfile::validate() const {
  if (k < 1) invalid("cut profile needs k >= 1");
  if (labels.size() != cuts.size() + 1) {
    invalid("cut profile needs exactly |cuts|+1 labels");
  }
  double prev = 0.0;
  for (double c : cuts) {
    if (!(c >= 0.0 && c <= 1.0)) invalid("cuts must lie in [0,1]");
    if (c < prev) invalid("cuts must be sorted");
    prev = c;
  }
  for (int label : labels) {
    if (label < 0 || label >= k) invalid("segment label outside [0,k)");
  }
}

FractionalColoring::FractionalColoring(int m, int k,
                                       std::vector<double> weights)
    : m_(m), k_(k), weights_(std::move(weights)) {
  if (m < 1 || k < 1) invalid("fractional coloring needs m >= 1, k >= 1");
  if (weights_.size() != static_cast<std::size_t>(m) * k) {
    invalid("fractional coloring needs m*k weights");
  }
  for (int g = 0; g < m_; ++g) {
    double sum = 0.0;
    for (double w : row(g)) {
      if (!(w >= 0.0 && w <= 1.0)) invalid("weights must lie in [0,1]");
      sum += w;
    }
    if (std::abs(sum - 1.0) > kRowSumTolerance * k_) {
      invalid("row " + std::to_string(g + 1) + " sums to " +
              std::to_string(sum) + ", expected 1");
    }
  }
}

FractionalColoring FractionalColoring::integral(std::span<const int> colors,
                                                int k) {
  std::vector<double> w(colors.size() * k, 0.0);
  for (std::size_t g = 0; g < colors.size(); ++g) {
    if (colors[g] < 0 || colors[g] >= k) invalid("color outside [0,k)");
    w[g * k + colors[g]] = 1.0;
  }
  return FractionalColoring(static_cast<int>(colors.size()), k, std::move(w));
}

std::vector<double> FractionalColoring::column(int j) const {
  std::vector<double> col(m_);
  for (int g = 0; g < m_; ++g) col[g] = weight(g, j);
  return col;
}

std::optional<int> FractionalColoring::vertex_color(int g) const {
  std::optional<int> color;
  for (int j = 0; j < k_; ++j) {
    const double w = weight(g, j);
    if (w == 1.0) {
      if (color) return std::nullopt;
      color = j;
    } else if (w != 0.0) {
      return std::nullopt;
    }
  }
  return color;
}

int FractionalColoring::fractional_count() const {
  int count = 0;
  for (int g = 0; g < m_; ++g) {
    if (!vertex_color(g)) ++count;
  }
  return count;
}

std::string_view method_name(FractionalMethod method) {
  switch (method) {
    case FractionalMethod::kAuto: return "auto";
    case FractionalMethod::kLp: return "lp";
    case FractionalMethod::kCutSearch: return "cut_search";
  }
  return "unknown";
}

FractionalMethod method_from_name(std::string_view name) {
  if (name == "auto") return FractionalMethod::kAuto;
  if (name == "lp") return FractionalMethod::kLp;
  if (name == "cuts" || name == "cut_search") {
    return FractionalMethod::kCutSearch;
  }
  invalid("unknown fractional method '" + std::string(name) + "'");
  return FractionalMethod::kAuto;
}

FractionalColoring embed(const CutProfile& profile, int m) {
  profile.validate();
  if (m < 1) invalid("embed needs m >= 1");
  const int k = profile.k;
  // Positions in element units: element g spans [g, g+1].
  std::vector<double> pos;
  pos.reserve(profile.cuts.size() + 2);
  pos.push_back(0.0);
  for (double c : profile.cuts) {
    double p = c * m;
    const double nearest = std::round(p);
    if (std::abs(p - nearest) <= kBoundarySnap) p = nearest;
    pos.push_back(std::max(p, pos.back()));
  }
  pos.push_back(static_cast<double>(m));

  std::vector<double> w(static_cast<std::size_t>(m) * k, 0.0);
  for (std::size_t s = 0; s + 1 < pos.size(); ++s) {
    const double a = pos[s];
    const double b = pos[s + 1];
    if (b <= a) continue;
    const int label = profile.labels[s];
    const int first = static_cast<int>(std::floor(a));
    const int last = std::min(m - 1, static_cast<int>(std::ceil(b)) - 1);
    for (int g = first; g <= last; ++g) {
      const double overlap = std::min(b, g + 1.0) - std::max(a, 1.0 * g);
      if (overlap > 0.0) w[static_cast<std::size_t>(g) * k + label] += overlap;
    }
  }
  // Make rows exactly stochastic: single-color rows become vertices, and the
  // largest entry of a mixed row absorbs the rounding residue.
  for (int g = 0; g < m; ++g) {
    double* row = w.data() + static_cast<std::size_t>(g) * k;
    int nonzero = 0;
    int largest = 0;
    for (int j = 0; j < k; ++j) {
      if (row[j] > 0.0) ++nonzero;
      if (row[j] > row[largest]) largest = j;
    }
    if (nonzero <= 1) {
      std::fill(row, row + k, 0.0);
      row[largest] = 1.0;
      continue;
    }
    double others = 0.0;
    for (int j = 0; j < k; ++j) {
      row[j] = std::clamp(row[j], 0.0, 1.0);
      if (j != largest) others += row[j];
    }
    row[largest] = 1.0 - others;
  }
  return FractionalColoring(m, k, std::move(w));
}

std::vector<double> color_values(const Family& family,
                                 const FractionalColoring& coloring,
                                 std::uint64_t seed) {
  if (coloring.m() != family.m()) {
    invalid("coloring and family disagree on m");
  }
  const int n = family.n();
  const int k = coloring.k();
  std::vector<double> values(static_cast<std::size_t>(n) * k);
  for (int j = 0; j < k; ++j) {
    const std::vector<double> col = coloring.column(j);
    for (int i = 0; i < n; ++i) {
      values[static_cast<std::size_t>(i) * k + j] = multilinear_value(
          family[i], col,
          derive_seed(seed, {static_cast<std::uint64_t>(i),
                             static_cast<std::uint64_t>(j)}));
    }
  }
  return values;
}

double balance_objective(const Family& family,
                         const FractionalColoring& coloring,
                         std::uint64_t seed) {
  const std::vector<double> values = color_values(family, coloring, seed);
  const int k = coloring.k();
  double worst = 0.0;
  for (int i = 0; i < family.n(); ++i) {
    const auto first = values.begin() + static_cast<std::ptrdiff_t>(i) * k;
    const auto [lo, hi] = std::minmax_element(first, first + k);
    worst = std::max(worst, *hi - *lo);
  }
  return worst;
}

double default_eps_target(int n, int k) {
  return std::min(1e-3, 0.01 * theorem_bound(n, k));
}

FractionalSolution solve_fractional(const Family& family, int k,
                                    FractionalMethod method,
                                    const CutSearchOptions& options) {
  if (method == FractionalMethod::kAuto) {
    method = family.all_additive() ? FractionalMethod::kLp
                                   : FractionalMethod::kCutSearch;
  }
  if (method == FractionalMethod::kLp) return solve_lp_additive(family, k);
  return solve_cut_search(family, k, options);
}

FractionalCheck verify_fractional(const Family& family,
                                  const FractionalColoring& coloring,
                                  double eps) {
  FractionalCheck check;
  check.fractional_count = coloring.fractional_count();
  check.epsilon = balance_objective(family, coloring);
  check.ok = check.epsilon <= eps &&
             check.fractional_count <= family.n() * (coloring.k() - 1);
  return check;
}

}  // namespace lipdisc
