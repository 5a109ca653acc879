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

#include "lipdisc/bounds.h"

#include <cmath>

#include "lipdisc/error.h"

namespace lipdisc {

double theorem_bound(int n, int k) {
  if (n < 1 || k < 2) {
    throw Error(ErrorKind::kInvalidArgument, "theorem_bound needs n>=1, k>=2");
  }
  const double nk = static_cast<double>(n) * k;
  return std::sqrt(2.0 * n * (k - 1) * (1.0 + std::log(nk)));
}

double mcdiarmid_tail(double t, int q) {
  if (q < 1 || !(t >= 0.0)) {
    throw Error(ErrorKind::kInvalidArgument, "mcdiarmid_tail needs q>=1, t>=0");
  }
  return 2.0 * std::exp(-2.0 * t * t / q);
}

bool is_prime(int k) {
  if (k < 2) return false;
  for (int d = 2; d * d <= k; ++d) {
    if (k % d == 0) return false;
  }
  return true;
}

}  // namespace lipdisc
