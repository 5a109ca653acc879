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

#include "lipdisc/harness.h"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include "lipdisc/bounds.h"
#include "lipdisc/error.h"
#include "lipdisc/lipschitz.h"
#include "lipdisc/rng.h"
#include "lipdisc/rounding.h"

namespace lipdisc {
namespace {

constexpr int kExhaustiveCheckLimit = 12;
constexpr int kSampledCheckTrials = 2000;
constexpr int kLinfDimension = 3;

double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

std::vector<double> uniform_vector(Rng& rng, int m, double lo, double hi) {
  std::vector<double> v(m);
  for (double& x : v) x = uniform(rng, lo, hi);
  return v;
}

Subset random_subset(Rng& rng, int m, int min_size, int max_size) {
  const int size = std::uniform_int_distribution<int>(min_size, max_size)(rng);
  std::vector<int> order(m);
  for (int g = 0; g < m; ++g) order[g] = g;
  std::shuffle(order.begin(), order.end(), rng);
  order.resize(size);
  return Subset::of(order);
}

void require_tabulable(const std::string& kind, int m) {
  if (m > kMaxTabulatedSize) {
    throw Error(ErrorKind::kTooLarge, kind + " instances need m <= 20");
  }
}

// Built in increasing mask order, so every S - g is known before S. The
// proposal is clamped into [max f(S-g) - 1, min f(S-g) + 1], which is
// nonempty because any two sets S-g, S-h are both neighbors of S-g-h.
SetFunction lipschitz_tabulated(Rng& rng, int m) {
  require_tabulable("tabulated", m);
  std::vector<double> t(std::size_t{1} << m, 0.0);
  for (std::uint64_t s = 1; s < t.size(); ++s) {
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();
    for (std::uint64_t b = s; b != 0; b &= b - 1) {
      const double below = t[s & ~(b & (~b + 1))];
      lo = std::max(lo, below - 1.0);
      hi = std::min(hi, below + 1.0);
    }
    const double anchor = t[s & (s - 1)];
    t[s] = std::clamp(anchor + uniform(rng, -1.0, 1.0), lo, hi);
  }
  return SetFunction(m, Tabulated{std::move(t)});
}

SetFunction monotone_tabulated(Rng& rng, int m) {
  require_tabulable("monotone_tabulated", m);
  std::vector<double> t(std::size_t{1} << m, 0.0);
  for (std::uint64_t s = 1; s < t.size(); ++s) {
    double top = 0.0;
    for (std::uint64_t b = s; b != 0; b &= b - 1) {
      top = std::max(top, t[s & ~(b & (~b + 1))]);
    }
    t[s] = top + uniform(rng, 0.0, 1.0);
  }
  return SetFunction(m, Tabulated{std::move(t)});
}

SetFunction coverage(Rng& rng, int m) {
  Coverage c;
  c.universe = std::max(4, m);
  std::uniform_int_distribution<int> item(0, c.universe - 1);
  std::uniform_int_distribution<int> count(1, 3);
  for (int g = 0; g < m; ++g) {
    std::vector<int> cover;
    for (int r = count(rng); r > 0; --r) cover.push_back(item(rng));
    std::sort(cover.begin(), cover.end());
    cover.erase(std::unique(cover.begin(), cover.end()), cover.end());
    c.covers.push_back(std::move(cover));
  }
  return SetFunction(m, std::move(c));
}

SetFunction generate_one(const std::string& kind, int m, Rng& rng) {
  if (kind == "additive") {
    return SetFunction(m, Additive{uniform_vector(rng, m, -1.0, 1.0)});
  }
  if (kind == "additive_nonneg") {
    return SetFunction(m, Additive{uniform_vector(rng, m, 0.0, 1.0)});
  }
  if (kind == "linf_vector_sum") {
    LinfVectorSum v;
    for (int g = 0; g < m; ++g) {
      v.vectors.push_back(uniform_vector(rng, kLinfDimension, -1.0, 1.0));
    }
    return SetFunction(m, std::move(v));
  }
  if (kind == "coverage") return coverage(rng, m);
  if (kind == "budgeted_additive") {
    std::vector<double> a = uniform_vector(rng, m, 0.0, 1.0);
    double total = 0.0;
    for (double x : a) total += x;
    const double budget = uniform(rng, 0.25, 0.75) * total;
    return SetFunction(m, BudgetedAdditive{std::move(a), budget});
  }
  if (kind == "dist_to_upset") {
    std::vector<Subset> gens;
    const int count = std::uniform_int_distribution<int>(1, 3)(rng);
    for (int r = 0; r < count; ++r) {
      gens.push_back(random_subset(rng, m, 1, std::max(1, m / 2)));
    }
    return SetFunction(
        m, DistToMonotoneUpset{std::make_shared<GeneratedUpset>(m, gens)});
  }
  if (kind == "tabulated") return lipschitz_tabulated(rng, m);
  if (kind == "monotone_tabulated") return monotone_tabulated(rng, m);
  throw Error(ErrorKind::kUnknownKind, "unknown instance kind '" + kind + "'");
}

void check_generated(const SetFunction& f, std::uint64_t seed) {
  const LipschitzReport report =
      f.ground_size() <= kExhaustiveCheckLimit
          ? check_lipschitz_exhaustive(f)
          : check_lipschitz_sampled(f, kSampledCheckTrials, seed);
  if (!report.pass) {
    throw Error(ErrorKind::kInvalidArgument,
                "generator produced a function violating its Lipschitz bound");
  }
}

std::string format_double(double v) {
  std::ostringstream out;
  out << std::setprecision(std::numeric_limits<double>::max_digits10) << v;
  return out.str();
}

}  // namespace

Family generate(const std::string& kind, int n, int m, std::uint64_t seed) {
  if (kind == "additive_nonneg" || kind == "monotone_tabulated") {
    throw Error(ErrorKind::kUnknownKind,
                "'" + kind + "' is a utility kind; use generate_profile");
  }
  const GroundSet ground(m);
  if (n < 1) throw Error(ErrorKind::kInvalidArgument, "need n >= 1");
  std::vector<SetFunction> fs;
  for (int i = 0; i < n; ++i) {
    const std::uint64_t stream = derive_seed(seed, {static_cast<std::uint64_t>(i)});
    Rng rng(stream);
    fs.push_back(generate_one(kind, m, rng));
    check_generated(fs.back(), stream);
  }
  return Family(ground, std::move(fs));
}

UtilityProfile generate_profile(const std::string& kind, int n, int m,
                                std::uint64_t seed) {
  if (kind != "additive_nonneg" && kind != "coverage" &&
      kind != "budgeted_additive" && kind != "monotone_tabulated") {
    throw Error(ErrorKind::kUnknownKind, "unknown utility kind '" + kind + "'");
  }
  const GroundSet goods(m);
  std::vector<SetFunction> us;
  for (int i = 0; i < n; ++i) {
    Rng rng(derive_seed(seed, {0x0a6e, static_cast<std::uint64_t>(i)}));
    us.push_back(generate_one(kind, m, rng));
  }
  return UtilityProfile(goods, std::move(us));
}

Family generate_sparse(const std::string& kind, int n, int m, int t,
                       std::uint64_t seed) {
  if (t < 1) throw Error(ErrorKind::kInvalidArgument, "need t >= 1");
  if (kind != "additive" && kind != "linf_vector_sum") {
    throw Error(ErrorKind::kUnknownKind, "sparse kinds: additive, linf_vector_sum");
  }
  const GroundSet ground(m);
  Rng rng(derive_seed(seed, {0x5a7}));
  std::vector<Subset> support(n);
  for (int g = 0; g < m; ++g) {
    // Weighted sampling without replacement; weight 1/(i+1) skews support
    // sizes toward low-index functions.
    std::vector<double> w(n);
    for (int i = 0; i < n; ++i) w[i] = 1.0 / (i + 1);
    for (int r = 0; r < std::min(t, n); ++r) {
      std::discrete_distribution<int> pick(w.begin(), w.end());
      const int i = pick(rng);
      support[i] = support[i].with(g);
      w[i] = 0.0;
    }
  }
  std::vector<SetFunction> fs;
  for (int i = 0; i < n; ++i) {
    if (kind == "additive") {
      std::vector<double> a(m, 0.0);
      for (int g : support[i].elements()) a[g] = uniform(rng, -1.0, 1.0);
      fs.emplace_back(m, Additive{std::move(a)});
    } else {
      LinfVectorSum v;
      v.vectors.assign(m, std::vector<double>(kLinfDimension, 0.0));
      for (int g : support[i].elements()) {
        v.vectors[g] = uniform_vector(rng, kLinfDimension, -1.0, 1.0);
      }
      fs.emplace_back(m, std::move(v));
    }
  }
  return Family(ground, std::move(fs));
}

void ExperimentConfig::validate() const {
  auto fail = [](const std::string& what) {
    throw Error(ErrorKind::kInvalidArgument, "config error: " + what);
  };
  if (kinds.empty()) fail("kinds list is empty");
  if (n.empty()) fail("n list is empty");
  if (m.empty()) fail("m list is empty");
  if (k.empty()) fail("k list is empty");
  if (seeds.empty()) fail("seed list is empty");
  if (kind_mode != "product" && kind_mode != "cycle") {
    fail("kind_mode must be 'product' or 'cycle'");
  }
  if (trials < 1) fail("trials must be >= 1");
  if (budget < 1) fail("budget must be >= 1");
  for (int v : k) {
    if (v < 2) fail("k values must be >= 2");
  }
}

ExperimentConfig config_from_json(const nlohmann::json& doc) {
  ExperimentConfig c;
  try {
    c.kinds = doc.at("kinds").get<std::vector<std::string>>();
    c.n = doc.at("n").get<std::vector<int>>();
    c.m = doc.at("m").get<std::vector<int>>();
    c.k = doc.value("k", std::vector<int>{2});
    c.seeds = doc.at("seeds").get<std::vector<std::uint64_t>>();
    c.kind_mode = doc.value("kind_mode", c.kind_mode);
    c.trials = doc.value("trials", c.trials);
    c.eps = doc.value("eps", c.eps);
    c.budget = doc.value("budget", c.budget);
    c.oracle = doc.value("oracle", c.oracle);
    c.wall_clock = doc.value("wall_clock", c.wall_clock);
    c.threads = doc.value("threads", c.threads);
    c.output = doc.value("output", c.output);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::kInvalidArgument,
                std::string("config error: ") + e.what());
  }
  c.validate();
  return c;
}

std::string csv_header() {
  return "id,n,m,k,kind,seed,method,achieved_disc,theorem_bound,oracle_disc,"
         "frac_eps,accepted,wall_ms";
}

std::string csv_line(const ResultRow& r) {
  std::ostringstream out;
  out << r.id << ',' << r.n << ',' << r.m << ',' << r.k << ',' << r.kind << ','
      << r.seed << ',' << r.method << ',' << format_double(r.achieved_disc)
      << ',' << format_double(r.theorem_bound) << ','
      << (r.oracle_disc ? format_double(*r.oracle_disc) : std::string()) << ','
      << format_double(r.frac_eps) << ',' << (r.accepted ? 1 : 0) << ','
      << std::fixed << std::setprecision(3) << r.wall_ms;
  return out.str();
}

std::vector<ResultRow> run_sweep(const ExperimentConfig& config,
                                 std::ostream* csv, std::ostream* log) {
  config.validate();
  struct Job {
    std::string kind;
    int n, m, k;
    std::uint64_t seed;
  };
  std::vector<Job> jobs;
  for (int n : config.n) {
    for (int m : config.m) {
      for (int k : config.k) {
        for (std::size_t s = 0; s < config.seeds.size(); ++s) {
          if (config.kind_mode == "cycle") {
            jobs.push_back({config.kinds[s % config.kinds.size()], n, m, k,
                            config.seeds[s]});
          } else {
            for (const std::string& kind : config.kinds) {
              jobs.push_back({kind, n, m, k, config.seeds[s]});
            }
          }
        }
      }
    }
  }

  std::vector<std::optional<ResultRow>> rows(jobs.size());
  std::vector<bool> finished(jobs.size(), false);
  std::mutex mu;
  std::size_t next_to_write = 0;
  if (csv != nullptr) *csv << kCsvVersionLine << '\n' << csv_header() << '\n';

  auto run_job = [&](std::size_t id) {
    const Job& job = jobs[id];
    const auto start = std::chrono::steady_clock::now();
    std::optional<ResultRow> row;
    try {
      const Family family = generate(job.kind, job.n, job.m, job.seed);
      SolveOptions options;
      options.trials = config.trials;
      options.seed = job.seed;
      options.cut_search.budget = config.budget;
      options.cut_search.eps_target = config.eps;
      const SolveResult solved = solve(family, job.k, options);
      ResultRow r;
      r.id = static_cast<int>(id);
      r.n = job.n;
      r.m = job.m;
      r.k = job.k;
      r.kind = job.kind;
      r.seed = job.seed;
      r.method = std::string(method_name(solved.fractional.report.method));
      r.achieved_disc = solved.report.achieved_disc;
      r.theorem_bound = solved.report.bound_2t;
      r.frac_eps = solved.report.frac_eps;
      r.accepted = solved.report.accepted;
      if (config.oracle) {
        double total = std::pow(static_cast<double>(job.k), job.m);
        if (total <= static_cast<double>(kMaxOracleColorings)) {
          r.oracle_disc = brute_force_disc(family, job.k).optimal;
        }
      }
      if (config.wall_clock) {
        r.wall_ms = std::chrono::duration<double, std::milli>(
                        std::chrono::steady_clock::now() - start)
                        .count();
      }
      row = std::move(r);
    } catch (const Error& e) {
      std::lock_guard lock(mu);
      if (log != nullptr) {
        *log << "instance " << id << " (" << job.kind << ", n=" << job.n
             << ", m=" << job.m << ", seed=" << job.seed << ") failed: "
             << error_kind_name(e.kind()) << ": " << e.what() << '\n';
      }
    }
    std::lock_guard lock(mu);
    rows[id] = std::move(row);
    finished[id] = true;
    while (next_to_write < jobs.size() && finished[next_to_write]) {
      if (csv != nullptr && rows[next_to_write]) {
        *csv << csv_line(*rows[next_to_write]) << '\n';
        csv->flush();
      }
      ++next_to_write;
    }
  };

  const int workers = std::max(1, config.threads);
  if (workers == 1) {
    for (std::size_t id = 0; id < jobs.size(); ++id) run_job(id);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t id = next++; id < jobs.size(); id = next++) run_job(id);
      });
    }
    for (auto& t : pool) t.join();
  }

  std::vector<ResultRow> out;
  for (auto& r : rows) {
    if (r) out.push_back(std::move(*r));
  }
  return out;
}

std::string scatter_svg(const std::vector<ResultRow>& rows) {
  constexpr double kSize = 400.0;
  constexpr double kPad = 40.0;
  double top = 1.0;
  for (const ResultRow& r : rows) {
    top = std::max({top, r.theorem_bound, r.achieved_disc});
  }
  top *= 1.05;
  auto px = [&](double v) { return kPad + v / top * kSize; };
  auto py = [&](double v) { return kPad + kSize - v / top * kSize; };
  std::ostringstream svg;
  svg << std::fixed << std::setprecision(2);
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kSize + 2 * kPad
      << "\" height=\"" << kSize + 2 * kPad << "\">\n";
  svg << "<rect x=\"" << kPad << "\" y=\"" << kPad << "\" width=\"" << kSize
      << "\" height=\"" << kSize << "\" fill=\"none\" stroke=\"black\"/>\n";
  svg << "<line x1=\"" << px(0) << "\" y1=\"" << py(0) << "\" x2=\"" << px(top)
      << "\" y2=\"" << py(top) << "\" stroke=\"gray\" stroke-dasharray=\"4\"/>\n";
  for (const ResultRow& r : rows) {
    svg << "<circle cx=\"" << px(r.theorem_bound) << "\" cy=\""
        << py(r.achieved_disc) << "\" r=\"2.5\" fill=\""
        << (r.accepted ? "steelblue" : "crimson") << "\"/>\n";
  }
  svg << "<text x=\"" << kPad + kSize / 2 << "\" y=\"" << kSize + 1.7 * kPad
      << "\" text-anchor=\"middle\" font-size=\"12\">theorem bound</text>\n";
  svg << "<text x=\"12\" y=\"" << kPad + kSize / 2
      << "\" font-size=\"12\" transform=\"rotate(-90 12 " << kPad + kSize / 2
      << ")\" text-anchor=\"middle\">achieved discrepancy</text>\n";
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace lipdisc
