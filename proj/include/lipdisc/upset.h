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

#ifndef LIPDISC_UPSET_H_
#define LIPDISC_UPSET_H_

#include <optional>
#include <vector>

#include "lipdisc/subset.h"

namespace lipdisc {

// A monotone (upward-closed) family of subsets of [m], queried by membership.
class UpsetOracle {
 public:
  explicit UpsetOracle(int m) : m_(m) {}
  virtual ~UpsetOracle() = default;

  int ground_size() const { return m_; }

  virtual bool contains(Subset s) const = 0;

  // Hamming distance from s to the nearest member. Upward closure means the
  // nearest member is reachable by additions only, so the default searches
  // supersets of s level by level. Throws if the family is empty.
  virtual int distance(Subset s) const;

  // Exact set of elements the distance function depends on, when the
  // representation makes that cheap to state.
  virtual std::optional<Subset> relevant_elements() const {
    return std::nullopt;
  }

 private:
  int m_;
};

// The upset generated by a list of sets: S is a member iff it contains at
// least one generator.
class GeneratedUpset final : public UpsetOracle {
 public:
  GeneratedUpset(int m, std::vector<Subset> generators);

  bool contains(Subset s) const override;
  int distance(Subset s) const override;
  std::optional<Subset> relevant_elements() const override;

  // Inclusion-minimal generators, in input order.
  const std::vector<Subset>& generators() const { return generators_; }

 private:
  std::vector<Subset> generators_;
};

}  // namespace lipdisc

#endif  // LIPDISC_UPSET_H_
