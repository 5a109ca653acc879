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

#include "lipdisc/upset.h"

#include <algorithm>
#include <limits>

#include "lipdisc/error.h"

namespace lipdisc {

int UpsetOracle::distance(Subset s) const {
  const Subset missing = s.complement(m_);
  for (int d = 0; d <= missing.size(); ++d) {
    bool found = false;
    // for_each_subset_of_size has no early exit; levels are small at desk
    // scale and the caller memoizes.
    for_each_subset_of_size(missing, d, [&](Subset added) {
      if (!found && contains(s | added)) found = true;
    });
    if (found) return d;
  }
  throw Error(ErrorKind::kInvalidArgument, "distance to an empty upset");
}

GeneratedUpset::GeneratedUpset(int m, std::vector<Subset> generators)
    : UpsetOracle(m) {
  if (generators.empty()) {
    throw Error(ErrorKind::kInvalidArgument, "upset needs a generator");
  }
  const Subset full = Subset::full(m);
  for (Subset g : generators) {
    if (!g.is_subset_of(full)) {
      throw Error(ErrorKind::kIndexOutOfRange,
                  "generator " + g.to_string() + " outside ground set");
    }
  }
  for (std::size_t i = 0; i < generators.size(); ++i) {
    bool minimal = true;
    for (std::size_t j = 0; j < generators.size() && minimal; ++j) {
      if (i == j) continue;
      const Subset a = generators[i];
      const Subset b = generators[j];
      // Drop strict supersets, and keep only the first of duplicates.
      if (b.is_subset_of(a) && (a != b || j < i)) minimal = false;
    }
    if (minimal) generators_.push_back(generators[i]);
  }
}

bool GeneratedUpset::contains(Subset s) const {
  return std::any_of(generators_.begin(), generators_.end(),
                     [s](Subset g) { return g.is_subset_of(s); });
}

int GeneratedUpset::distance(Subset s) const {
  int best = std::numeric_limits<int>::max();
  for (Subset g : generators_) best = std::min(best, (g - s).size());
  return best;
}

std::optional<Subset> GeneratedUpset::relevant_elements() const {
  Subset all;
  for (Subset g : generators_) all = all | g;
  return all;
}

}  // namespace lipdisc
