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

#include "lipdisc/set_function.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>
#include <utility>

#include "lipdisc/error.h"

namespace lipdisc {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorKind::kInvalidArgument, what);
}

void require_length(std::size_t got, int m, std::string_view what) {
  require(got == static_cast<std::size_t>(m),
          std::string(what) + ": expected " + std::to_string(m) +
              " entries, got " + std::to_string(got));
}

}  // namespace

std::string_view kind_name(KindTag tag) {
  switch (tag) {
    case KindTag::kAdditive: return "additive";
    case KindTag::kLinfVectorSum: return "linf_vector_sum";
    case KindTag::kCoverage: return "coverage";
    case KindTag::kBudgetedAdditive: return "budgeted_additive";
    case KindTag::kDistToMonotoneUpset: return "dist_to_upset";
    case KindTag::kTabulated: return "tabulated";
  }
  return "unknown";
}

KindTag kind_from_name(std::string_view name) {
  for (KindTag t : {KindTag::kAdditive, KindTag::kLinfVectorSum,
                    KindTag::kCoverage, KindTag::kBudgetedAdditive,
                    KindTag::kDistToMonotoneUpset, KindTag::kTabulated}) {
    if (kind_name(t) == name) return t;
  }
  throw Error(ErrorKind::kUnknownKind,
              "unknown function kind '" + std::string(name) + "'");
}

SetFunction::SetFunction(int m, FunctionKind kind, double lipschitz,
                         std::optional<Subset> declared_relevant)
    : m_(GroundSet(m).size()),
      kind_(std::move(kind)),
      lipschitz_(lipschitz),
      relevant_(declared_relevant) {
  require(std::isfinite(lipschitz) && lipschitz >= 0.0,
          "declared Lipschitz constant must be finite and >= 0");
  if (relevant_ && !relevant_->is_subset_of(Subset::full(m_))) {
    throw Error(ErrorKind::kIndexOutOfRange,
                "declared relevant set outside ground set");
  }
  std::visit(
      Overloaded{
          [&](const Additive& a) {
            require_length(a.coefficients.size(), m_, "additive coefficients");
          },
          [&](const LinfVectorSum& v) {
            require_length(v.vectors.size(), m_, "linf vectors");
            for (const auto& vec : v.vectors) {
              require(!vec.empty() && vec.size() == v.vectors[0].size(),
                      "linf vectors must share a nonzero dimension");
            }
          },
          [&](const Coverage& c) {
            require_length(c.covers.size(), m_, "coverage covers");
            require(c.universe >= 1, "coverage universe must be >= 1");
            words_ = (c.universe + 63) / 64;
            cover_bits_.assign(static_cast<std::size_t>(m_) * words_, 0);
            for (int g = 0; g < m_; ++g) {
              for (int item : c.covers[g]) {
                if (item < 0 || item >= c.universe) {
                  throw Error(ErrorKind::kIndexOutOfRange,
                              "coverage item outside universe");
                }
                cover_bits_[static_cast<std::size_t>(g) * words_ + item / 64] |=
                    std::uint64_t{1} << (item % 64);
              }
            }
          },
          [&](const BudgetedAdditive& b) {
            require_length(b.coefficients.size(), m_, "budgeted coefficients");
            require(std::isfinite(b.budget), "budget must be finite");
          },
          [&](const DistToMonotoneUpset& d) {
            require(d.upset != nullptr, "dist_to_upset needs an upset");
            require(d.upset->ground_size() == m_,
                    "upset ground size differs from function");
          },
          [&](const Tabulated& t) {
            require(m_ <= kMaxTabulatedSize,
                    "tabulated functions need m <= 20");
            require(t.values.size() == (std::size_t{1} << m_),
                    "tabulated table length must be exactly 2^m");
          },
      },
      kind_);
}

double SetFunction::operator()(Subset s) const {
  if (!s.is_subset_of(Subset::full(m_))) {
    throw Error(ErrorKind::kIndexOutOfRange,
                "subset " + s.to_string() + " references elements beyond m=" +
                    std::to_string(m_));
  }
  return value(s);
}

double SetFunction::value(Subset s) const {
  return scale_ == 1.0 ? raw_value(s) : scale_ * raw_value(s);
}

double SetFunction::raw_value(Subset s) const {
  return std::visit(
      Overloaded{
          [&](const Additive& a) {
            double sum = 0.0;
            for (std::uint64_t b = s.bits(); b != 0; b &= b - 1) {
              sum += a.coefficients[std::countr_zero(b)];
            }
            return sum;
          },
          [&](const LinfVectorSum& v) {
            const std::size_t d = v.vectors[0].size();
            double acc[16];
            std::vector<double> heap;
            double* sum = acc;
            if (d > 16) {
              heap.assign(d, 0.0);
              sum = heap.data();
            } else {
              std::fill(acc, acc + d, 0.0);
            }
            for (std::uint64_t b = s.bits(); b != 0; b &= b - 1) {
              const auto& vec = v.vectors[std::countr_zero(b)];
              for (std::size_t r = 0; r < d; ++r) sum[r] += vec[r];
            }
            double best = 0.0;
            for (std::size_t r = 0; r < d; ++r) {
              best = std::max(best, std::abs(sum[r]));
            }
            return best;
          },
          [&](const Coverage& c) {
            int covered = 0;
            for (int w = 0; w < words_; ++w) {
              std::uint64_t word = 0;
              for (std::uint64_t b = s.bits(); b != 0; b &= b - 1) {
                word |= cover_bits_[static_cast<std::size_t>(
                                        std::countr_zero(b)) * words_ + w];
              }
              covered += std::popcount(word);
            }
            return static_cast<double>(covered) / c.universe;
          },
          [&](const BudgetedAdditive& b) {
            double sum = 0.0;
            for (std::uint64_t bits = s.bits(); bits != 0; bits &= bits - 1) {
              sum += b.coefficients[std::countr_zero(bits)];
            }
            return std::min(sum, b.budget);
          },
          [&](const DistToMonotoneUpset& d) {
            return static_cast<double>(d.upset->distance(s));
          },
          [&](const Tabulated& t) { return t.values[s.bits()]; },
      },
      kind_);
}

SetFunction SetFunction::divided_by(double divisor,
                                    double new_lipschitz) const {
  require(std::isfinite(divisor) && divisor > 0.0, "divisor must be > 0");
  FunctionKind kind = kind_;
  double scale = scale_;
  std::visit(Overloaded{
                 [&](Additive& a) {
                   for (double& x : a.coefficients) x /= divisor;
                 },
                 [&](LinfVectorSum& v) {
                   for (auto& vec : v.vectors) {
                     for (double& x : vec) x /= divisor;
                   }
                 },
                 [&](BudgetedAdditive& b) {
                   for (double& x : b.coefficients) x /= divisor;
                   b.budget /= divisor;
                 },
                 [&](Tabulated& t) {
                   for (double& x : t.values) x /= divisor;
                 },
                 [&](auto&) { scale /= divisor; },
             },
             kind);
  SetFunction out(m_, std::move(kind), new_lipschitz, relevant_);
  out.scale_ = scale;
  return out;
}

}  // namespace lipdisc
