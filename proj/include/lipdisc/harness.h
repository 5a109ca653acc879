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

#ifndef LIPDISC_HARNESS_H_
#define LIPDISC_HARNESS_H_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "lipdisc/fairdiv.h"
#include "lipdisc/family.h"

namespace lipdisc {

// Random 1-Lipschitz families. Kinds: additive, linf_vector_sum, coverage,
// budgeted_additive, dist_to_upset, tabulated (m <= 20). Deterministic in
// the seed; every function passes a Lipschitz check before it is returned.
Family generate(const std::string& kind, int n, int m, std::uint64_t seed);

// Random monotone utility profiles. Kinds: additive_nonneg, coverage,
// budgeted_additive, monotone_tabulated (m <= 20).
UtilityProfile generate_profile(const std::string& kind, int n, int m,
                                std::uint64_t seed);

// A t-sparse family of n functions (additive or linf_vector_sum): each
// element is relevant to exactly min(t, n) functions, chosen with skewed
// weights so that support sizes vary.
Family generate_sparse(const std::string& kind, int n, int m, int t,
                       std::uint64_t seed);

struct ExperimentConfig {
  std::vector<std::string> kinds;
  std::vector<int> n;
  std::vector<int> m;
  std::vector<int> k;
  std::vector<std::uint64_t> seeds;
  // "product": every kind for every seed. "cycle": the s-th seed uses
  // kinds[s mod |kinds|].
  std::string kind_mode = "product";
  int trials = 1000;
  double eps = -1.0;  // < 0: default target
  int budget = 12;    // cut-search restarts
  bool oracle = false;
  bool wall_clock = true;  // false writes wall_ms = 0
  int threads = 1;
  std::string output;

  void validate() const;  // throws kInvalidArgument ("config error: ...")
};

ExperimentConfig config_from_json(const nlohmann::json& doc);

struct ResultRow {
  int id = 0;
  int n = 0;
  int m = 0;
  int k = 0;
  std::string kind;
  std::uint64_t seed = 0;
  std::string method;
  double achieved_disc = 0.0;
  double theorem_bound = 0.0;
  std::optional<double> oracle_disc;
  double frac_eps = 0.0;
  bool accepted = false;
  double wall_ms = 0.0;
};

inline constexpr const char* kCsvVersionLine = "# lipdisc-results v1";

std::string csv_header();
std::string csv_line(const ResultRow& row);

// Runs every instance of the config and returns rows in id order. When
// 'csv' is given, the header and rows are streamed to it in id order as
// instances finish. Failed instances are logged to 'log' and skipped.
std::vector<ResultRow> run_sweep(const ExperimentConfig& config,
                                 std::ostream* csv = nullptr,
                                 std::ostream* log = nullptr);

// Minimal scatter of achieved_disc against theorem_bound.
std::string scatter_svg(const std::vector<ResultRow>& rows);

}  // namespace lipdisc

#endif  // LIPDISC_HARNESS_H_
