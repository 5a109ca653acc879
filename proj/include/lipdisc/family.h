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

#ifndef LIPDISC_FAMILY_H_
#define LIPDISC_FAMILY_H_

#include <vector>

#include "lipdisc/set_function.h"
#include "lipdisc/subset.h"

namespace lipdisc {

// An ordered list of n >= 1 set functions over a common ground set.
class Family {
 public:
  Family(GroundSet ground, std::vector<SetFunction> functions);

  const GroundSet& ground() const { return ground_; }
  int m() const { return ground_.size(); }
  int n() const { return static_cast<int>(functions_.size()); }
  const std::vector<SetFunction>& functions() const { return functions_; }
  const SetFunction& operator[](int i) const { return functions_[i]; }

  bool all_additive() const;

 private:
  GroundSet ground_;
  std::vector<SetFunction> functions_;
};

}  // namespace lipdisc

#endif  // LIPDISC_FAMILY_H_
