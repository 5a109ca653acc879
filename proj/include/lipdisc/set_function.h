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

#ifndef LIPDISC_SET_FUNCTION_H_
#define LIPDISC_SET_FUNCTION_H_

#include <cstdint>
#include <memory>
#include <optional>
#include <string_view>
#include <variant>
#include <vector>

#include "lipdisc/subset.h"
#include "lipdisc/upset.h"

namespace lipdisc {

// Tabulated functions store all 2^m values.
inline constexpr int kMaxTabulatedSize = 20;

// f(S) = sum of a_g over g in S.
struct Additive {
  std::vector<double> coefficients;
};

// f(S) = || sum of a_g over g in S ||_inf, one vector a_g per element.
struct LinfVectorSum {
  std::vector<std::vector<double>> vectors;
};

// f(S) = |union of covers[g] over g in S| / universe. Universe items are
// 0-based indices below 'universe'.
struct Coverage {
  int universe = 1;
  std::vector<std::vector<int>> covers;
};

// f(S) = min(sum of a_g over g in S, budget).
struct BudgetedAdditive {
  std::vector<double> coefficients;
  double budget = 0.0;
};

// f(S) = Hamming distance from S to a monotone family of sets.
struct DistToMonotoneUpset {
  std::shared_ptr<const UpsetOracle> upset;
};

// Explicit value table indexed by subset bitmask; length exactly 2^m.
struct Tabulated {
  std::vector<double> values;
};

using FunctionKind = std::variant<Additive, LinfVectorSum, Coverage,
                                  BudgetedAdditive, DistToMonotoneUpset,
                                  Tabulated>;

enum class KindTag {
  kAdditive,
  kLinfVectorSum,
  kCoverage,
  kBudgetedAdditive,
  kDistToMonotoneUpset,
  kTabulated,
};

std::string_view kind_name(KindTag tag);
KindTag kind_from_name(std::string_view name);  // throws kUnknownKind

// A real-valued function on subsets of [m] together with its declared
// Lipschitz constant and, optionally, a declared superset of its relevant
// elements. Evaluation is pure; a SetFunction may be shared across threads.
class SetFunction {
 public:
  SetFunction(int m, FunctionKind kind, double lipschitz = 1.0,
              std::optional<Subset> declared_relevant = std::nullopt);

  int ground_size() const { return m_; }
  KindTag tag() const { return static_cast<KindTag>(kind_.index()); }
  std::string_view kind_name() const { return lipdisc::kind_name(tag()); }
  const FunctionKind& kind() const { return kind_; }
  bool is_additive() const { return tag() == KindTag::kAdditive; }

  double declared_lipschitz() const { return lipschitz_; }
  const std::optional<Subset>& declared_relevant() const { return relevant_; }

  // Output multiplier applied on top of the kind's own value. Only kinds
  // whose data cannot absorb a rescaling carry a factor other than 1.
  double output_scale() const { return scale_; }

  // Checked evaluation; throws kIndexOutOfRange if s has elements >= m.
  double operator()(Subset s) const;

  // Unchecked evaluation for inner loops that construct s themselves.
  double value(Subset s) const;

  // Returns f / divisor with the given declared Lipschitz constant.
  SetFunction divided_by(double divisor, double new_lipschitz) const;

 private:
  double raw_value(Subset s) const;

  int m_;
  FunctionKind kind_;
  double lipschitz_;
  std::optional<Subset> relevant_;
  double scale_ = 1.0;
  // Coverage only: covers packed as 'words_' machine words per element.
  std::vector<std::uint64_t> cover_bits_;
  int words_ = 0;
};

}  // namespace lipdisc

#endif  // LIPDISC_SET_FUNCTION_H_
