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

#include "lipdisc/fairdiv.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "lipdisc/error.h"
#include "lipdisc/rng.h"

namespace lipdisc {
namespace {

constexpr int kExhaustiveMonotoneCheck = 16;

// Smallest removal R from 'from' (|R| <= c) with u(from \ R) <= target, if
// any. Monotonicity makes the check per size a minimum over |R| = size.
std::optional<Subset> smallest_removal(const SetFunction& u, Subset from,
                                       double target, int c) {
  const int limit = std::min(c, from.size());
  for (int r = 0; r <= limit; ++r) {
    const Removal best = min_after_removal(u, from, r);
    if (best.value <= target + kUtilityTolerance) return best.removed;
  }
  return std::nullopt;
}

}  // namespace

bool monotone_by_construction(const SetFunction& u) {
  const FunctionKind& kind = u.kind();
  auto nonneg = [](const std::vector<double>& a) {
    return std::all_of(a.begin(), a.end(), [](double x) { return x >= 0.0; });
  };
  if (u.output_scale() < 0.0) return false;
  if (std::holds_alternative<Coverage>(kind)) return true;
  if (const auto* a = std::get_if<Additive>(&kind)) return nonneg(a->coefficients);
  if (const auto* b = std::get_if<BudgetedAdditive>(&kind)) {
    return nonneg(b->coefficients);
  }
  return false;
}

std::optional<std::pair<Subset, int>> find_monotonicity_violation(
    const SetFunction& u) {
  const int m = u.ground_size();
  if (m > kMaxTabulatedSize) {
    throw Error(ErrorKind::kTooLarge, "exhaustive monotonicity check needs m <= 20");
  }
  const std::uint64_t count = std::uint64_t{1} << m;
  std::vector<double> values(count);
  for (std::uint64_t s = 0; s < count; ++s) values[s] = u.value(Subset(s));
  for (std::uint64_t s = 0; s < count; ++s) {
    for (int g = 0; g < m; ++g) {
      if ((s >> g) & 1U) continue;
      if (values[s | (std::uint64_t{1} << g)] < values[s]) {
        return std::make_pair(Subset(s), g);
      }
    }
  }
  return std::nullopt;
}

UtilityProfile::UtilityProfile(GroundSet goods,
                               std::vector<SetFunction> utilities)
    : goods_(goods), utilities_(std::move(utilities)) {
  if (utilities_.empty()) {
    throw Error(ErrorKind::kInvalidArgument, "a profile needs n >= 1 agents");
  }
  for (std::size_t i = 0; i < utilities_.size(); ++i) {
    const SetFunction& u = utilities_[i];
    if (u.ground_size() != goods_.size()) {
      throw Error(ErrorKind::kInvalidArgument,
                  "all utilities must share the set of goods");
    }
    const bool check = goods_.size() <= kExhaustiveMonotoneCheck ||
                       u.tag() == KindTag::kTabulated;
    if (check) {
      if (auto bad = find_monotonicity_violation(u)) {
        throw Error(ErrorKind::kNotMonotone,
                    "utility of agent " + std::to_string(i + 1) +
                        " decreases when adding good " +
                        std::to_string(bad->second + 1) + " to " +
                        bad->first.to_string());
      }
    } else if (!monotone_by_construction(u)) {
      throw Error(ErrorKind::kNotMonotone,
                  "utility of agent " + std::to_string(i + 1) +
                      " is not monotone by construction and m > 16");
    }
  }
}

int c_bound(int n) {
  return static_cast<int>(std::ceil(2.0 * theorem_bound(n, 2)));
}

Removal min_after_removal(const SetFunction& u, Subset s, int r) {
  if (r < 0) throw Error(ErrorKind::kInvalidArgument, "removal size must be >= 0");
  const int size = std::min(r, s.size());
  if (binomial(s.size(), size) > kMaxRemovalSets) {
    throw Error(ErrorKind::kTooLarge,
                "C(" + std::to_string(s.size()) + "," + std::to_string(size) +
                    ") removal sets exceed the cap of 1e6");
  }
  Removal best{std::numeric_limits<double>::infinity(), Subset()};
  for_each_subset_of_size(s, size, [&](Subset t) {
    const double v = u.value(s - t);
    if (v < best.value) best = Removal{v, t};
  });
  return best;
}

double u_prime(const SetFunction& u, Subset s, int r) {
  return min_after_removal(u, s, r).value;
}

bool in_M(const SetFunction& u, Subset s, int c) {
  const int r = c / 2;
  const Subset rest = s.complement(u.ground_size());
  return u_prime(u, s, r) >= u_prime(u, rest, r) - kUtilityTolerance;
}

int dist_to_M(const SetFunction& u, Subset s, int c) {
  return ValidSetUpset(u, c).distance(s);
}

ValidSetUpset::ValidSetUpset(SetFunction utility, int c)
    : UpsetOracle(utility.ground_size()), utility_(std::move(utility)), c_(c) {
  if (c < 0) throw Error(ErrorKind::kInvalidArgument, "c must be >= 0");
}

bool ValidSetUpset::contains(Subset s) const {
  {
    std::shared_lock lock(mu_);
    if (auto it = member_.find(s.bits()); it != member_.end()) {
      return it->second;
    }
  }
  const bool member = in_M(utility_, s, c_);
  std::unique_lock lock(mu_);
  member_.emplace(s.bits(), member);
  return member;
}

int ValidSetUpset::distance(Subset s) const {
  {
    std::shared_lock lock(mu_);
    if (auto it = dist_.find(s.bits()); it != dist_.end()) return it->second;
  }
  const int d = UpsetOracle::distance(s);
  std::unique_lock lock(mu_);
  dist_.emplace(s.bits(), d);
  return d;
}

SetFunction build_f(const SetFunction& u, int c) {
  return SetFunction(u.ground_size(),
                     DistToMonotoneUpset{std::make_shared<ValidSetUpset>(u, c)},
                     1.0);
}

HalvingCheck verify_halving(const UtilityProfile& profile, Subset a1, int c) {
  if (!profile.goods().contains(a1)) {
    throw Error(ErrorKind::kIndexOutOfRange, "A1 outside the set of goods");
  }
  const Subset a2 = a1.complement(profile.m());
  HalvingCertificate cert{c, a1, a2, {}};
  for (int i = 0; i < profile.n(); ++i) {
    const SetFunction& u = profile[i];
    const auto r1 = smallest_removal(u, a1, u.value(a2), c);
    const auto r2 = smallest_removal(u, a2, u.value(a1), c);
    if (!r1 || !r2) return HalvingCheck{std::nullopt, i};
    cert.agents.push_back(AgentRemovals{*r1, *r2});
  }
  return HalvingCheck{std::move(cert), -1};
}

EnvyCheck verify_ef(const UtilityProfile& profile,
                    const std::vector<int>& groups, Subset a1, int c) {
  if (static_cast<int>(groups.size()) != profile.n()) {
    throw Error(ErrorKind::kInvalidArgument, "need one group per agent");
  }
  if (!profile.goods().contains(a1)) {
    throw Error(ErrorKind::kIndexOutOfRange, "A1 outside the set of goods");
  }
  const Subset a2 = a1.complement(profile.m());
  for (int i = 0; i < profile.n(); ++i) {
    if (groups[i] != 0 && groups[i] != 1) {
      throw Error(ErrorKind::kInvalidArgument, "groups must be 1 or 2");
    }
    const Subset own = groups[i] == 0 ? a1 : a2;
    const Subset other = groups[i] == 0 ? a2 : a1;
    const SetFunction& u = profile[i];
    if (!smallest_removal(u, other, u.value(own), c)) {
      return EnvyCheck{false, i};
    }
  }
  return EnvyCheck{true, -1};
}

HalvingResult consensus_halving(const UtilityProfile& profile,
                                const SolveOptions& options) {
  if (profile.m() > kMaxHalvingGoods) {
    throw Error(ErrorKind::kTooLarge,
                "consensus halving supports at most 24 goods");
  }
  const int c = c_bound(profile.n());
  std::vector<SetFunction> fs;
  fs.reserve(profile.n());
  for (const SetFunction& u : profile.utilities()) fs.push_back(build_f(u, c));
  const Family family(profile.goods(), std::move(fs));

  SolveResult solved = solve(family, 2, options);
  HalvingResult result;
  result.a1 = solved.coloring.color_class(0);
  result.a2 = solved.coloring.color_class(1);
  result.report.c = c;
  result.report.inner_disc = discrepancy(family, solved.coloring);
  result.report.inner_below_half_c = result.report.inner_disc < c / 2.0;
  result.report.rounding = solved.report;
  result.report.fractional = solved.fractional.report;

  HalvingCheck check = verify_halving(profile, result.a1, c);
  if (!check.certificate && result.report.inner_below_half_c) {
    throw Error(ErrorKind::kVerificationFailed,
                "partition with inner discrepancy " +
                    std::to_string(result.report.inner_disc) + " < c/2 = " +
                    std::to_string(c / 2.0) + " failed for agent " +
                    std::to_string(check.failed_agent + 1));
  }
  result.report.certified = check.certificate.has_value();
  result.certificate = std::move(check.certificate);
  return result;
}

}  // namespace lipdisc
