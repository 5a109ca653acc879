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

// Command-line front end. Every subcommand reads and writes the JSON formats
// in docs/ and prints a JSON report on stdout.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "lipdisc/error.h"
#include "lipdisc/fairdiv.h"
#include "lipdisc/fractional.h"
#include "lipdisc/harness.h"
#include "lipdisc/json_io.h"
#include "lipdisc/rounding.h"
#include "lipdisc/sparse.h"

namespace {

using lipdisc::io::Json;

void emit(const Json& doc, const std::string& out) {
  if (out.empty()) {
    std::cout << doc.dump(2) << '\n';
  } else {
    lipdisc::io::write_file(out, doc);
  }
}

void print(const Json& doc) { std::cout << doc.dump(2) << '\n'; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Discrepancy of Lipschitz set-function families"};
  app.require_subcommand(1);
  int status = 0;

  // gen
  auto* gen = app.add_subcommand("gen", "Generate a random instance or profile");
  std::string gen_kind = "additive";
  int gen_n = 2, gen_m = 16, gen_t = 0;
  std::uint64_t gen_seed = 0;
  bool gen_profile = false;
  std::string gen_out;
  gen->add_option("--kind", gen_kind, "Function or utility kind");
  gen->add_option("--n", gen_n, "Number of functions")->check(CLI::PositiveNumber);
  gen->add_option("--m", gen_m, "Ground set size")->check(CLI::Range(1, 64));
  gen->add_option("--t", gen_t, "Sparsity (additive/linf_vector_sum only)");
  gen->add_option("--seed", gen_seed);
  gen->add_flag("--profile", gen_profile, "Emit a monotone utility profile");
  gen->add_option("--out", gen_out, "Output file (default stdout)");
  gen->callback([&] {
    if (gen_profile) {
      emit(lipdisc::io::to_json(
               lipdisc::generate_profile(gen_kind, gen_n, gen_m, gen_seed)),
           gen_out);
    } else if (gen_t > 0) {
      emit(lipdisc::io::to_json(lipdisc::generate_sparse(gen_kind, gen_n, gen_m,
                                                         gen_t, gen_seed)),
           gen_out);
    } else {
      emit(lipdisc::io::to_json(
               lipdisc::generate(gen_kind, gen_n, gen_m, gen_seed)),
           gen_out);
    }
  });

  // fractional
  auto* frac = app.add_subcommand("fractional", "Balanced fractional coloring");
  std::string frac_instance, frac_method = "auto", frac_out;
  int frac_k = 2, frac_budget = 12, frac_threads = 1;
  std::uint64_t frac_seed = 0;
  double frac_eps = -1.0;
  frac->add_option("--instance", frac_instance)->required();
  frac->add_option("--k", frac_k)->check(CLI::Range(2, 64));
  frac->add_option("--method", frac_method)
      ->check(CLI::IsMember({"auto", "lp", "cuts", "cut_search"}));
  frac->add_option("--budget", frac_budget, "Cut-search restarts");
  frac->add_option("--seed", frac_seed);
  frac->add_option("--eps", frac_eps, "Cut-search target (default automatic)");
  frac->add_option("--threads", frac_threads);
  frac->add_option("--out", frac_out);
  frac->callback([&] {
    const lipdisc::Family fam =
        lipdisc::io::family_from_json(lipdisc::io::read_file(frac_instance));
    if (frac_method != "lp" && !lipdisc::is_prime(frac_k)) {
      std::cerr << "warning: k=" << frac_k
                << " is not prime; a balanced profile may not exist\n";
    }
    lipdisc::CutSearchOptions opt;
    opt.budget = frac_budget;
    opt.seed = frac_seed;
    opt.eps_target = frac_eps;
    opt.threads = frac_threads;
    const lipdisc::FractionalSolution s = lipdisc::solve_fractional(
        fam, frac_k, lipdisc::method_from_name(frac_method), opt);
    Json doc = lipdisc::io::to_json(s.coloring);
    doc["report"] = lipdisc::io::to_json(s.report);
    if (s.profile) doc["profile"] = lipdisc::io::to_json(*s.profile);
    emit(doc, frac_out);
    if (!frac_out.empty()) print(doc["report"]);
    if (!s.report.success) status = 1;
  });

  // round
  auto* round = app.add_subcommand("round", "Round a fractional coloring");
  std::string round_frac, round_instance, round_out;
  int round_trials = 1000, round_threads = 1;
  std::uint64_t round_seed = 0;
  round->add_option("--frac", round_frac)->required();
  round->add_option("--instance", round_instance)->required();
  round->add_option("--trials", round_trials)->check(CLI::PositiveNumber);
  round->add_option("--seed", round_seed);
  round->add_option("--threads", round_threads);
  round->add_option("--out", round_out);
  round->callback([&] {
    const lipdisc::Family fam =
        lipdisc::io::family_from_json(lipdisc::io::read_file(round_instance));
    const lipdisc::FractionalColoring chi =
        lipdisc::io::fractional_from_json(lipdisc::io::read_file(round_frac));
    const double eps = lipdisc::balance_objective(fam, chi, round_seed);
    const lipdisc::RoundingResult r = lipdisc::round_fractional(
        fam, chi, eps, round_trials, round_seed, round_threads);
    Json doc = lipdisc::io::to_json(r.coloring);
    doc["report"] = lipdisc::io::to_json(r.report);
    emit(doc, round_out);
    if (!round_out.empty()) print(doc["report"]);
  });

  // oracle
  auto* oracle = app.add_subcommand("oracle", "Exact minimum discrepancy");
  std::string oracle_instance;
  int oracle_k = 2;
  oracle->add_option("--instance", oracle_instance)->required();
  oracle->add_option("--k", oracle_k)->check(CLI::Range(2, 64));
  oracle->callback([&] {
    const lipdisc::Family fam =
        lipdisc::io::family_from_json(lipdisc::io::read_file(oracle_instance));
    const lipdisc::OracleResult r = lipdisc::brute_force_disc(fam, oracle_k);
    Json doc = lipdisc::io::to_json(r.argmin);
    doc["optimal"] = r.optimal;
    doc["colorings_checked"] = r.colorings_checked;
    print(doc);
  });

  // solve
  auto* solve = app.add_subcommand("solve", "Fractional coloring + rounding");
  std::string solve_instance, solve_out;
  int solve_k = 2, solve_trials = 1000, solve_threads = 1, solve_budget = 12;
  std::uint64_t solve_seed = 0;
  solve->add_option("--instance", solve_instance)->required();
  solve->add_option("--k", solve_k)->check(CLI::Range(2, 64));
  solve->add_option("--trials", solve_trials)->check(CLI::PositiveNumber);
  solve->add_option("--seed", solve_seed);
  solve->add_option("--budget", solve_budget, "Cut-search restarts");
  solve->add_option("--threads", solve_threads);
  solve->add_option("--out", solve_out);
  solve->callback([&] {
    const lipdisc::Family fam =
        lipdisc::io::family_from_json(lipdisc::io::read_file(solve_instance));
    lipdisc::SolveOptions opt;
    opt.trials = solve_trials;
    opt.seed = solve_seed;
    opt.threads = solve_threads;
    opt.cut_search.budget = solve_budget;
    opt.cut_search.threads = solve_threads;
    const lipdisc::SolveResult r = lipdisc::solve(fam, solve_k, opt);
    Json doc = lipdisc::io::to_json(r.coloring);
    doc["report"] = lipdisc::io::to_json(r.report);
    doc["fractional"] = lipdisc::io::to_json(r.fractional.report);
    emit(doc, solve_out);
    if (!solve_out.empty()) print(doc["report"]);
  });

  // fairdiv
  auto* fair = app.add_subcommand("fairdiv", "Consensus halving up to c goods");
  std::string fair_profile, fair_out;
  int fair_trials = 1000, fair_threads = 1;
  std::uint64_t fair_seed = 0;
  fair->add_option("--profile", fair_profile)->required();
  fair->add_option("--trials", fair_trials)->check(CLI::PositiveNumber);
  fair->add_option("--seed", fair_seed);
  fair->add_option("--threads", fair_threads);
  fair->add_option("--out", fair_out);
  fair->callback([&] {
    const lipdisc::UtilityProfile profile =
        lipdisc::io::profile_from_json(lipdisc::io::read_file(fair_profile));
    lipdisc::SolveOptions opt;
    opt.trials = fair_trials;
    opt.seed = fair_seed;
    opt.threads = fair_threads;
    const lipdisc::HalvingResult r = lipdisc::consensus_halving(profile, opt);
    Json report = {{"c", r.report.c},
                   {"inner_disc", r.report.inner_disc},
                   {"inner_below_half_c", r.report.inner_below_half_c},
                   {"certified", r.report.certified},
                   {"A1", lipdisc::io::subset_to_json(r.a1)},
                   {"A2", lipdisc::io::subset_to_json(r.a2)}};
    if (r.certificate) emit(lipdisc::io::to_json(*r.certificate), fair_out);
    print(report);
    if (!r.certificate) status = 1;
  });

  // verify
  auto* verify = app.add_subcommand("verify", "Check a halving or EF partition");
  std::string verify_profile, verify_partition, verify_groups;
  int verify_c = 0;
  bool verify_ef = false;
  verify->add_option("--profile", verify_profile)->required();
  verify->add_option("--partition", verify_partition)->required();
  verify->add_option("--c", verify_c)->required()->check(CLI::NonNegativeNumber);
  verify->add_flag("--ef", verify_ef, "Check envy-freeness instead");
  verify->add_option("--groups", verify_groups, "Agent groups for --ef");
  verify->callback([&] {
    const lipdisc::UtilityProfile profile =
        lipdisc::io::profile_from_json(lipdisc::io::read_file(verify_profile));
    const lipdisc::Subset a1 = lipdisc::io::partition_from_json(
        lipdisc::io::read_file(verify_partition), profile.m());
    if (verify_ef) {
      if (verify_groups.empty()) {
        throw CLI::ValidationError("--ef requires --groups");
      }
      const std::vector<int> groups =
          lipdisc::io::groups_from_json(lipdisc::io::read_file(verify_groups));
      const lipdisc::EnvyCheck e =
          lipdisc::verify_ef(profile, groups, a1, verify_c);
      Json doc = {{"ok", e.ok}};
      if (!e.ok) doc["failed_agent"] = e.failed_agent + 1;
      print(doc);
      if (!e.ok) status = 1;
      return;
    }
    const lipdisc::HalvingCheck h =
        lipdisc::verify_halving(profile, a1, verify_c);
    if (h.certificate) {
      Json doc = lipdisc::io::to_json(*h.certificate);
      doc["ok"] = true;
      print(doc);
    } else {
      print(Json{{"ok", false}, {"failed_agent", h.failed_agent + 1}});
      status = 1;
    }
  });

  // sparse
  auto* sparse = app.add_subcommand("sparse", "Thresholded solve for t-sparse families");
  std::string sparse_instance, sparse_out;
  int sparse_trials = 1000;
  std::uint64_t sparse_seed = 0;
  double sparse_log_base = std::exp(1.0);
  sparse->add_option("--instance", sparse_instance)->required();
  sparse->add_option("--trials", sparse_trials)->check(CLI::PositiveNumber);
  sparse->add_option("--seed", sparse_seed);
  sparse->add_option("--log-base", sparse_log_base, "Base of the threshold log");
  sparse->add_option("--out", sparse_out, "Write the coloring here");
  sparse->callback([&] {
    const lipdisc::Family fam =
        lipdisc::io::family_from_json(lipdisc::io::read_file(sparse_instance));
    lipdisc::SolveOptions opt;
    opt.trials = sparse_trials;
    opt.seed = sparse_seed;
    lipdisc::SparseOptions sopt;
    sopt.log_base = sparse_log_base;
    const lipdisc::SparseResult r = lipdisc::solve_sparse(fam, opt, sopt);
    if (!sparse_out.empty()) {
      lipdisc::io::write_file(sparse_out, lipdisc::io::to_json(r.coloring));
    }
    print(lipdisc::io::to_json(r.report));
  });

  // bench
  auto* bench = app.add_subcommand("bench", "Run an experiment sweep");
  std::string bench_config, bench_out, bench_svg;
  int bench_threads = 0;
  bench->add_option("--config", bench_config)->required();
  bench->add_option("--out", bench_out, "CSV path (default: config output)");
  bench->add_option("--svg", bench_svg, "Scatter plot path");
  bench->add_option("--threads", bench_threads, "Override config threads");
  bench->callback([&] {
    lipdisc::ExperimentConfig config =
        lipdisc::config_from_json(lipdisc::io::read_file(bench_config));
    if (bench_threads > 0) config.threads = bench_threads;
    const std::string path = bench_out.empty() ? config.output : bench_out;
    std::ofstream file;
    std::ostream* csv = &std::cout;
    if (!path.empty()) {
      file.open(path, std::ios::binary);
      if (!file) {
        throw lipdisc::Error(lipdisc::ErrorKind::kInvalidArgument,
                             "cannot write '" + path + "'");
      }
      csv = &file;
    }
    const std::vector<lipdisc::ResultRow> rows =
        lipdisc::run_sweep(config, csv, &std::cerr);
    if (!bench_svg.empty()) {
      std::ofstream(bench_svg, std::ios::binary) << lipdisc::scatter_svg(rows);
    }
    if (!path.empty()) {
      int accepted = 0;
      for (const auto& r : rows) accepted += r.accepted;
      std::cerr << rows.size() << " rows, " << accepted << " accepted\n";
    }
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const lipdisc::Error& e) {
    std::cerr << "error (" << lipdisc::error_kind_name(e.kind())
              << "): " << e.what() << '\n';
    return 3;
  }
  return status;
}
