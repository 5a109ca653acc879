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

#include "lipdisc/family.h"

#include <algorithm>
#include <utility>

#include "lipdisc/error.h"

namespace lipdisc {

Family::Family(GroundSet ground, std::vector<SetFunction> functions)
    : ground_(ground), functions_(std::move(functions)) {
  if (functions_.empty()) {
    throw Error(ErrorKind::kInvalidArgument, "a family needs n >= 1 functions");
  }
  for (const SetFunction& f : functions_) {
    if (f.ground_size() != ground_.size()) {
      throw Error(ErrorKind::kInvalidArgument,
                  "all functions of a family must share the ground set");
    }
  }
}

bool Family::all_additive() const {
  return std::all_of(functions_.begin(), functions_.end(),
                     [](const SetFunction& f) { return f.is_additive(); });
}

}  // namespace lipdisc
