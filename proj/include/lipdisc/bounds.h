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

#ifndef LIPDISC_BOUNDS_H_
#define LIPDISC_BOUNDS_H_

namespace lipdisc {

// sqrt(2 n (k-1) (1 + ln(n k))): the discrepancy guarantee for n 1-Lipschitz
// functions and k colors. Equal to 2t for the rounding deviation t.
double theorem_bound(int n, int k);

// 2 exp(-2 t^2 / q): bounded-differences tail for a 1-Lipschitz function of
// q independent variables.
double mcdiarmid_tail(double t, int q);

bool is_prime(int k);

}  // namespace lipdisc

#endif  // LIPDISC_BOUNDS_H_
