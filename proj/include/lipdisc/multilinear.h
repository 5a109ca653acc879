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

#ifndef LIPDISC_MULTILINEAR_H_
#define LIPDISC_MULTILINEAR_H_

#include <cstdint>
#include <span>
#include <vector>

#include "lipdisc/set_function.h"
#include "lipdisc/subset.h"

namespace lipdisc {

// Exact enumeration is limited to this many strictly fractional coordinates.
inline constexpr int kMaxExactSupport = 20;

// Sample budget for the Monte Carlo fallback of multilinear_value.
inline constexpr int kFallbackSamples = 50000;

// A point of [0,1]^m. Coordinates in {0,1} are integral.
class FractionalPoint {
 public:
  explicit FractionalPoint(std::vector<double> coords);
  static FractionalPoint indicator(Subset s, int m);

  int size() const { return static_cast<int>(coords_.size()); }
  double operator[](int g) const { return coords_[g]; }
  std::span<const double> coords() const { return coords_; }
  operator std::span<const double>() const { return coords_; }

 private:
  std::vector<double> coords_;
};

// Elements with coordinate exactly 1, and those strictly inside (0,1).
Subset integral_ones(std::span<const double> x);
Subset fractional_support(std::span<const double> x);

// E[f(X)] where X contains each g independently with probability x[g].
// Enumerates the fractional support only; throws kSupportTooLarge when it
// exceeds kMaxExactSupport.
double multilinear_exact(const SetFunction& f, std::span<const double> x);

struct McEstimate {
  double estimate = 0.0;
  double stderr_of_mean = 0.0;
};

// Sample mean and its standard error over 'samples' >= 2 independent draws.
// Draws are generated in fixed-size blocks, each from its own stream derived
// from (seed, block), so the result does not depend on 'threads'.
McEstimate multilinear_mc(const SetFunction& f, std::span<const double> x,
                          int samples, std::uint64_t seed, int threads = 1);

// The value used by the solvers: the additive closed form when available,
// exact enumeration when the support permits, otherwise a Monte Carlo
// estimate with kFallbackSamples draws seeded by 'seed'.
double multilinear_value(const SetFunction& f, std::span<const double> x,
                         std::uint64_t seed);

}  // namespace lipdisc

#endif  // LIPDISC_MULTILINEAR_H_
