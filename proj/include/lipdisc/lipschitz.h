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

#ifndef LIPDISC_LIPSCHITZ_H_
#define LIPDISC_LIPSCHITZ_H_

#include <cstdint>
#include <optional>

#include "lipdisc/set_function.h"
#include "lipdisc/subset.h"

namespace lipdisc {

// A neighboring pair (S, S + g) whose values differ by 'gap'.
struct LipschitzWitness {
  Subset set;
  int element = 0;
  double gap = 0.0;
};

// Sampled reports are one-sided: 'pass' only means no violation was seen.
struct LipschitzReport {
  bool pass = true;
  bool exhaustive = true;
  std::uint64_t pairs_checked = 0;
  std::optional<LipschitzWitness> witness;
};

inline constexpr double kLipschitzSlack = 1e-12;

// Scans every pair (S, S + g). Requires m <= 20.
LipschitzReport check_lipschitz_exhaustive(const SetFunction& f);

// Checks 'trials' random pairs drawn from a stream seeded by 'seed'.
LipschitzReport check_lipschitz_sampled(const SetFunction& f, int trials,
                                        std::uint64_t seed);

// Largest single-element change max |f(S + g) - f(S)|. Closed form for
// additive, linf-vector-sum and coverage kinds; an exhaustive scan
// otherwise (m <= 20).
double sensitivity(const SetFunction& f);

struct Rescaled {
  SetFunction function;
  double factor = 1.0;
  bool zero = false;  // sensitivity was 0; function returned unchanged
};

// f / L with declared Lipschitz constant 1, where L = sensitivity(f).
Rescaled rescale_to_unit_lipschitz(const SetFunction& f);

}  // namespace lipdisc

#endif  // LIPDISC_LIPSCHITZ_H_
