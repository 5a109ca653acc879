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

#ifndef LIPDISC_SUBSET_H_
#define LIPDISC_SUBSET_H_

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

#include "lipdisc/error.h"

namespace lipdisc {

// Ground sets are capped at 64 elements so that a subset is one machine word.
inline constexpr int kMaxGroundSize = 64;

// A subset of a ground set, stored as a membership bitmask. Element indices
// are 0-based in code; files and the CLI present them as 1..m.
class Subset {
 public:
  constexpr Subset() = default;
  constexpr explicit Subset(std::uint64_t bits) : bits_(bits) {}

  static Subset of(std::initializer_list<int> elements) {
    Subset s;
    for (int g : elements) s = s.with(g);
    return s;
  }
  static Subset of(const std::vector<int>& elements) {
    Subset s;
    for (int g : elements) s = s.with(g);
    return s;
  }
  static constexpr Subset full(int m) {
    return Subset(m >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << m) - 1);
  }

  constexpr std::uint64_t bits() const { return bits_; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr int size() const { return std::popcount(bits_); }
  constexpr bool contains(int g) const { return (bits_ >> g) & 1U; }
  constexpr Subset with(int g) const {
    return Subset(bits_ | (std::uint64_t{1} << g));
  }
  constexpr Subset without(int g) const {
    return Subset(bits_ & ~(std::uint64_t{1} << g));
  }
  constexpr Subset complement(int m) const {
    return Subset(~bits_ & full(m).bits_);
  }
  constexpr bool is_subset_of(Subset other) const {
    return (bits_ & ~other.bits_) == 0;
  }
  // Highest element index + 1, i.e. the smallest m this subset fits in.
  constexpr int span() const { return 64 - std::countl_zero(bits_); }

  std::vector<int> elements() const {
    std::vector<int> out;
    out.reserve(size());
    for (std::uint64_t b = bits_; b != 0; b &= b - 1) {
      out.push_back(std::countr_zero(b));
    }
    return out;
  }

  std::string to_string() const;  // "{1,3,4}" in 1-based notation

  friend constexpr Subset operator|(Subset a, Subset b) {
    return Subset(a.bits_ | b.bits_);
  }
  friend constexpr Subset operator&(Subset a, Subset b) {
    return Subset(a.bits_ & b.bits_);
  }
  friend constexpr Subset operator-(Subset a, Subset b) {
    return Subset(a.bits_ & ~b.bits_);
  }
  friend constexpr bool operator==(Subset a, Subset b) = default;

 private:
  std::uint64_t bits_ = 0;
};

// Hamming distance between two subsets.
constexpr int hamming(Subset a, Subset b) {
  return std::popcount(a.bits() ^ b.bits());
}

class GroundSet {
 public:
  explicit GroundSet(int m) : m_(m) {
    if (m < 1 || m > kMaxGroundSize) {
      throw Error(ErrorKind::kInvalidArgument,
                  "ground set size must be in [1, 64], got " +
                      std::to_string(m));
    }
  }
  int size() const { return m_; }
  Subset full() const { return Subset::full(m_); }
  bool contains(Subset s) const { return s.is_subset_of(full()); }

  friend bool operator==(GroundSet, GroundSet) = default;

 private:
  int m_;
};

// Calls fn(Subset) for every subset of 'pool' with exactly r elements.
template <typename Fn>
void for_each_subset_of_size(Subset pool, int r, Fn&& fn) {
  const std::vector<int> idx = pool.elements();
  const int n = static_cast<int>(idx.size());
  if (r < 0 || r > n) return;
  if (r == 0) {
    fn(Subset());
    return;
  }
  if (r == n) {
    fn(pool);
    return;
  }
  // Gosper's hack over positions of 'pool'.
  std::uint64_t comb = (std::uint64_t{1} << r) - 1;
  const std::uint64_t limit = n >= 64 ? 0 : (std::uint64_t{1} << n);
  while (true) {
    std::uint64_t bits = 0;
    for (std::uint64_t b = comb; b != 0; b &= b - 1) {
      bits |= std::uint64_t{1} << idx[std::countr_zero(b)];
    }
    fn(Subset(bits));
    const std::uint64_t low = comb & (~comb + 1);
    const std::uint64_t ripple = comb + low;
    if (ripple == 0) break;  // wrapped past 64 bits
    comb = (((ripple ^ comb) >> 2) / low) | ripple;
    if (limit != 0 && comb >= limit) break;
  }
}

// Binomial coefficient saturating at UINT64_MAX.
std::uint64_t binomial(int n, int r);

}  // namespace lipdisc

#endif  // LIPDISC_SUBSET_H_
