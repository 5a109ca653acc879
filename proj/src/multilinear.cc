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

#include "lipdisc/multilinear.h"

#include <algorithm>
#include <cmath>
#include <string>
#include <thread>

#include "lipdisc/error.h"
#include "lipdisc/rng.h"

namespace lipdisc {
namespace {

constexpr int kMcBlock = 4096;

void validate_point(const SetFunction& f, std::span<const double> x) {
  if (static_cast<int>(x.size()) != f.ground_size()) {
    throw Error(ErrorKind::kInvalidArgument,
                "point has " + std::to_string(x.size()) +
                    " coordinates, function has m=" +
                    std::to_string(f.ground_size()));
  }
  for (double v : x) {
    if (!(v >= 0.0 && v <= 1.0)) {
      throw Error(ErrorKind::kInvalidArgument,
                  "point coordinates must lie in [0,1]");
    }
  }
}

struct BlockSums {
  double sum = 0.0;
  double sum_sq = 0.0;
};

BlockSums sample_block(const SetFunction& f, std::span<const double> x,
                       Subset ones, const std::vector<int>& frac, int count,
                       std::uint64_t seed) {
  Rng rng(seed);
  BlockSums out;
  for (int s = 0; s < count; ++s) {
    std::uint64_t bits = ones.bits();
    for (int g : frac) {
      if (uniform01(rng) < x[g]) bits |= std::uint64_t{1} << g;
    }
    const double v = f.value(Subset(bits));
    out.sum += v;
    out.sum_sq += v * v;
  }
  return out;
}

}  // namespace

FractionalPoint::FractionalPoint(std::vector<double> coords)
    : coords_(std::move(coords)) {
  for (double v : coords_) {
    if (!(v >= 0.0 && v <= 1.0)) {
      throw Error(ErrorKind::kInvalidArgument,
                  "fractional point coordinates must lie in [0,1]");
    }
  }
}

FractionalPoint FractionalPoint::indicator(Subset s, int m) {
  std::vector<double> x(m, 0.0);
  for (int g : s.elements()) x.at(g) = 1.0;
  return FractionalPoint(std::move(x));
}

Subset integral_ones(std::span<const double> x) {
  Subset s;
  for (std::size_t g = 0; g < x.size(); ++g) {
    if (x[g] == 1.0) s = s.with(static_cast<int>(g));
  }
  return s;
}

Subset fractional_support(std::span<const double> x) {
  Subset s;
  for (std::size_t g = 0; g < x.size(); ++g) {
    if (x[g] > 0.0 && x[g] < 1.0) s = s.with(static_cast<int>(g));
  }
  return s;
}

double multilinear_exact(const SetFunction& f, std::span<const double> x) {
  validate_point(f, x);
  const std::vector<int> frac = fractional_support(x).elements();
  if (static_cast<int>(frac.size()) > kMaxExactSupport) {
    throw Error(ErrorKind::kSupportTooLarge,
                "fractional support of size " + std::to_string(frac.size()) +
                    " exceeds the exact-enumeration cap of 20");
  }
  const std::uint64_t base = integral_ones(x).bits();
  const int q = static_cast<int>(frac.size());
  double total = 0.0;
  // Depth-first over the fractional coordinates, carrying the probability of
  // the partial assignment.
  auto visit = [&](auto&& self, int depth, std::uint64_t bits,
                   double prob) -> void {
    if (depth == q) {
      total += prob * f.value(Subset(bits));
      return;
    }
    const int g = frac[depth];
    self(self, depth + 1, bits, prob * (1.0 - x[g]));
    self(self, depth + 1, bits | (std::uint64_t{1} << g), prob * x[g]);
  };
  visit(visit, 0, base, 1.0);
  return total;
}

McEstimate multilinear_mc(const SetFunction& f, std::span<const double> x,
                          int samples, std::uint64_t seed, int threads) {
  validate_point(f, x);
  if (samples < 2) {
    throw Error(ErrorKind::kInvalidArgument, "need at least 2 samples");
  }
  const Subset ones = integral_ones(x);
  const std::vector<int> frac = fractional_support(x).elements();
  if (frac.empty()) return McEstimate{f.value(ones), 0.0};

  const int blocks = (samples + kMcBlock - 1) / kMcBlock;
  std::vector<BlockSums> sums(blocks);
  auto run_block = [&](int b) {
    const int count = std::min(kMcBlock, samples - b * kMcBlock);
    sums[b] = sample_block(f, x, ones, frac, count,
                           derive_seed(seed, {static_cast<std::uint64_t>(b)}));
  };
  const int workers = std::clamp(threads, 1, blocks);
  if (workers == 1) {
    for (int b = 0; b < blocks; ++b) run_block(b);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (int b = w; b < blocks; b += workers) run_block(b);
      });
    }
    for (auto& t : pool) t.join();
  }
  double sum = 0.0;
  double sum_sq = 0.0;
  for (const BlockSums& s : sums) {
    sum += s.sum;
    sum_sq += s.sum_sq;
  }
  const double n = samples;
  const double mean = sum / n;
  const double var = std::max(0.0, (sum_sq - n * mean * mean) / (n - 1.0));
  return McEstimate{mean, std::sqrt(var / n)};
}

double multilinear_value(const SetFunction& f, std::span<const double> x,
                         std::uint64_t seed) {
  if (const auto* a = std::get_if<Additive>(&f.kind())) {
    validate_point(f, x);
    double sum = 0.0;
    for (std::size_t g = 0; g < x.size(); ++g) sum += a->coefficients[g] * x[g];
    return f.output_scale() * sum;
  }
  if (fractional_support(x).size() <= kMaxExactSupport) {
    return multilinear_exact(f, x);
  }
  return multilinear_mc(f, x, kFallbackSamples, seed).estimate;
}

}  // namespace lipdisc
