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

#ifndef LIPDISC_FAIRDIV_H_
#define LIPDISC_FAIRDIV_H_

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <unordered_map>
#include <vector>

#include "lipdisc/family.h"
#include "lipdisc/rounding.h"
#include "lipdisc/set_function.h"
#include "lipdisc/upset.h"

namespace lipdisc {

// Utility comparisons treat values within this tolerance as equal.
inline constexpr double kUtilityTolerance = 1e-9;

// Removal-set enumerations are capped at this many candidate sets.
inline constexpr std::uint64_t kMaxRemovalSets = 1'000'000;

// Largest ground set the consensus-halving pipeline accepts.
inline constexpr int kMaxHalvingGoods = 24;

// Kinds whose monotonicity follows from their parameters: coverage,
// additive and budgeted-additive with nonnegative coefficients.
bool monotone_by_construction(const SetFunction& u);

// First pair (S, g) with u(S + g) < u(S), scanning all 2^m sets (m <= 20).
std::optional<std::pair<Subset, int>> find_monotonicity_violation(
    const SetFunction& u);

// n monotone utilities over a common set of goods. Monotonicity is checked
// exhaustively for m <= 16; above that it must follow by construction
// (tabulated utilities are always checked). Throws kNotMonotone.
class UtilityProfile {
 public:
  UtilityProfile(GroundSet goods, std::vector<SetFunction> utilities);

  int m() const { return goods_.size(); }
  int n() const { return static_cast<int>(utilities_.size()); }
  const GroundSet& goods() const { return goods_; }
  const std::vector<SetFunction>& utilities() const { return utilities_; }
  const SetFunction& operator[](int i) const { return utilities_[i]; }

 private:
  GroundSet goods_;
  std::vector<SetFunction> utilities_;
};

// ceil(2 * theorem_bound(n, 2)).
int c_bound(int n);

struct Removal {
  double value = 0.0;  // u(S \ removed)
  Subset removed;
};

// min over T subset of S with |T| = min(r, |S|) of u(S \ T), with a
// minimizing T. For monotone u this equals the minimum over |T| <= r.
// Throws kTooLarge when C(|S|, r) exceeds kMaxRemovalSets.
Removal min_after_removal(const SetFunction& u, Subset s, int r);

// u'(S) = min over T subset of S, |T| <= r, of u(S \ T). The reduction uses
// r = floor(c/2).
double u_prime(const SetFunction& u, Subset s, int r);

// S belongs to M iff u'(S) >= u'(complement of S), with r = floor(c/2).
bool in_M(const SetFunction& u, Subset s, int c);

// Hamming distance from S to M (additions only, since M is upward closed).
int dist_to_M(const SetFunction& u, Subset s, int c);

// M as an upset oracle with memoized membership and distance. Safe for
// concurrent queries.
class ValidSetUpset final : public UpsetOracle {
 public:
  ValidSetUpset(SetFunction utility, int c);

  bool contains(Subset s) const override;
  int distance(Subset s) const override;

  int c() const { return c_; }

 private:
  SetFunction utility_;
  int c_;
  mutable std::shared_mutex mu_;
  mutable std::unordered_map<std::uint64_t, bool> member_;
  mutable std::unordered_map<std::uint64_t, int> dist_;
};

// f(S) = d(S, M) for the agent with utility u; 1-Lipschitz.
SetFunction build_f(const SetFunction& u, int c);

struct AgentRemovals {
  Subset r1;  // removed from A1 to kill envy toward A1
  Subset r2;
};

struct HalvingCertificate {
  int c = 0;
  Subset a1;
  Subset a2;
  std::vector<AgentRemovals> agents;
};

struct HalvingCheck {
  std::optional<HalvingCertificate> certificate;
  int failed_agent = -1;  // 0-based; -1 when certified
};

// Checks that (A1, complement) is a consensus halving up to c goods. Each
// certificate removal set is a smallest one that works.
HalvingCheck verify_halving(const UtilityProfile& profile, Subset a1, int c);

struct EnvyCheck {
  bool ok = false;
  int failed_agent = -1;
};

// groups[i] in {0, 1}: agent i receives A1 (0) or A2 (1).
EnvyCheck verify_ef(const UtilityProfile& profile,
                    const std::vector<int>& groups, Subset a1, int c);

struct HalvingReport {
  int c = 0;
  double inner_disc = 0.0;
  bool inner_below_half_c = false;
  bool certified = false;
  RoundingReport rounding;
  FractionalReport fractional;
};

struct HalvingResult {
  Subset a1;
  Subset a2;
  std::optional<HalvingCertificate> certificate;
  HalvingReport report;
};

// Builds f_i = d(., M_i) with c = c_bound(n), 2-colors {f_i} with the
// fractional + rounding pipeline, and certifies the resulting partition.
// Throws kVerificationFailed if the rounding stage reached disc < c/2 but the
// partition does not certify.
HalvingResult consensus_halving(const UtilityProfile& profile,
                                const SolveOptions& options);

}  // namespace lipdisc

#endif  // LIPDISC_FAIRDIV_H_
