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

#include "lipdisc/lipschitz.h"

#include <algorithm>
#include <cmath>

#include "lipdisc/error.h"
#include "lipdisc/rng.h"

namespace lipdisc {
namespace {

void require_tabulable(const SetFunction& f, const char* what) {
  if (f.ground_size() > kMaxTabulatedSize) {
    throw Error(ErrorKind::kTooLarge,
                std::string(what) + " requires m <= 20, got m=" +
                    std::to_string(f.ground_size()));
  }
}

// Visits every neighboring pair once, stopping early when fn returns false.
template <typename Fn>
void for_each_neighbor_pair(const SetFunction& f, Fn&& fn) {
  const int m = f.ground_size();
  const std::uint64_t count = std::uint64_t{1} << m;
  std::vector<double> values(count);
  for (std::uint64_t s = 0; s < count; ++s) values[s] = f.value(Subset(s));
  for (std::uint64_t s = 0; s < count; ++s) {
    for (int g = 0; g < m; ++g) {
      if ((s >> g) & 1U) continue;
      const std::uint64_t t = s | (std::uint64_t{1} << g);
      if (!fn(Subset(s), g, std::abs(values[t] - values[s]))) return;
    }
  }
}

}  // namespace

LipschitzReport check_lipschitz_exhaustive(const SetFunction& f) {
  require_tabulable(f, "exhaustive Lipschitz check");
  LipschitzReport report;
  const double limit = f.declared_lipschitz() + kLipschitzSlack;
  for_each_neighbor_pair(f, [&](Subset s, int g, double gap) {
    ++report.pairs_checked;
    if (gap > limit) {
      report.pass = false;
      report.witness = LipschitzWitness{s, g, gap};
      return false;
    }
    return true;
  });
  return report;
}

LipschitzReport check_lipschitz_sampled(const SetFunction& f, int trials,
                                        std::uint64_t seed) {
  LipschitzReport report;
  report.exhaustive = false;
  const int m = f.ground_size();
  const double limit = f.declared_lipschitz() + kLipschitzSlack;
  Rng rng(derive_seed(seed, {0x11b5}));
  std::uniform_int_distribution<int> pick(0, m - 1);
  for (int trial = 0; trial < trials; ++trial) {
    // Random base set with a random density so that both sparse and dense
    // regions of the cube are visited.
    const double density = uniform01(rng);
    Subset s;
    for (int g = 0; g < m; ++g) {
      if (uniform01(rng) < density) s = s.with(g);
    }
    const int g = pick(rng);
    s = s.without(g);
    const double gap = std::abs(f.value(s.with(g)) - f.value(s));
    ++report.pairs_checked;
    if (gap > limit) {
      report.pass = false;
      report.witness = LipschitzWitness{s, g, gap};
      break;
    }
  }
  return report;
}

double sensitivity(const SetFunction& f) {
  const FunctionKind& kind = f.kind();
  const double scale = std::abs(f.output_scale());
  if (const auto* a = std::get_if<Additive>(&kind)) {
    double best = 0.0;
    for (double x : a->coefficients) best = std::max(best, std::abs(x));
    return scale * best;
  }
  if (const auto* v = std::get_if<LinfVectorSum>(&kind)) {
    double best = 0.0;
    for (const auto& vec : v->vectors) {
      for (double x : vec) best = std::max(best, std::abs(x));
    }
    return scale * best;
  }
  if (const auto* c = std::get_if<Coverage>(&kind)) {
    // Adding g to the empty set gains every item g covers.
    std::size_t best = 0;
    for (const auto& cover : c->covers) {
      std::vector<int> items = cover;
      std::sort(items.begin(), items.end());
      items.erase(std::unique(items.begin(), items.end()), items.end());
      best = std::max(best, items.size());
    }
    return scale * static_cast<double>(best) / c->universe;
  }
  require_tabulable(f, "sensitivity scan");
  double best = 0.0;
  for_each_neighbor_pair(f, [&](Subset, int, double gap) {
    best = std::max(best, gap);
    return true;
  });
  return best;
}

Rescaled rescale_to_unit_lipschitz(const SetFunction& f) {
  const double factor = sensitivity(f);
  if (factor == 0.0) return Rescaled{f, 1.0, true};
  return Rescaled{f.divided_by(factor, 1.0), factor, false};
}

}  // namespace lipdisc
