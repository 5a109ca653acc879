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

// Numerical search for a balanced cut profile. Each restart starts from a
// profile with n(k-1) cuts whose segment labels cycle through the colors,
// then alternates
//   * Gauss-Newton steps on the residuals f_i(col j) - f_i(col k-1), with a
//     forward-difference Jacobian (values are multilinear in each cut while
//     it stays inside one element, so the differences are exact there),
//   * golden-section line searches on each cut between its neighbors,
//   * label moves (swap adjacent segment labels, recolor one segment),
// and, once these stall, perturbs the restart's best profile with a
// shrinking noise scale, accepting worse profiles with a Metropolis rule.
//
// For k = 2 a restart first runs Levenberg-Marquardt on the sphere: a unit
// vector z of length n+1 encodes segment lengths z_s^2 and colors sign(z_s).
// The residual map is odd in z, and no ordering constraint has to be
// maintained.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>
#include <vector>

#include "lipdisc/error.h"
#include "lipdisc/fractional.h"
#include "lipdisc/rng.h"

namespace lipdisc {
namespace {

constexpr double kFdStep = 1e-7;
constexpr int kGoldenIterations = 24;
constexpr int kNewtonIterations = 12;
constexpr int kSphereIterations = 60;
constexpr double kGolden = 0.6180339887498949;

class Evaluator {
 public:
  Evaluator(const Family& family, int k, std::uint64_t seed, int budget)
      : family_(family), k_(k), seed_(seed), budget_(budget) {}

  bool exhausted() const { return evals_ >= budget_; }
  int evals() const { return evals_; }

  double objective(const CutProfile& p) {
    ++evals_;
    return balance_objective(family_, embed(p, family_.m()), seed_);
  }

  // Residual vector r[i*(k-1)+j] = v(i,j) - v(i,k-1); returns the objective.
  double residuals(const CutProfile& p, Eigen::VectorXd& r) {
    ++evals_;
    const std::vector<double> v =
        color_values(family_, embed(p, family_.m()), seed_);
    const int n = family_.n();
    r.resize(static_cast<Eigen::Index>(n) * (k_ - 1));
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
      const double* row = v.data() + static_cast<std::size_t>(i) * k_;
      double lo = row[0];
      double hi = row[0];
      for (int j = 0; j < k_; ++j) {
        lo = std::min(lo, row[j]);
        hi = std::max(hi, row[j]);
        if (j + 1 < k_) r(i * (k_ - 1) + j) = row[j] - row[k_ - 1];
      }
      worst = std::max(worst, hi - lo);
    }
    return worst;
  }

 private:
  const Family& family_;
  int k_;
  std::uint64_t seed_;
  int budget_;
  int evals_ = 0;
};

struct Candidate {
  CutProfile profile;
  double eps = std::numeric_limits<double>::infinity();
};

void clamp_and_sort(std::vector<double>& cuts) {
  for (double& c : cuts) c = std::clamp(c, 0.0, 1.0);
  std::sort(cuts.begin(), cuts.end());
}

CutProfile profile_from_sphere(const Eigen::VectorXd& z) {
  CutProfile p;
  p.k = 2;
  const double norm2 = z.squaredNorm();
  double acc = 0.0;
  for (Eigen::Index s = 0; s < z.size(); ++s) {
    if (s > 0) p.cuts.push_back(std::min(acc, 1.0));
    acc += z(s) * z(s) / norm2;
    p.labels.push_back(z(s) >= 0.0 ? 0 : 1);
  }
  return p;
}

Eigen::VectorXd sphere_from_profile(const CutProfile& p) {
  Eigen::VectorXd z(p.labels.size());
  double prev = 0.0;
  for (std::size_t s = 0; s < p.labels.size(); ++s) {
    const double next = s < p.cuts.size() ? p.cuts[s] : 1.0;
    const double len = std::sqrt(std::max(next - prev, 0.0));
    z(static_cast<Eigen::Index>(s)) = p.labels[s] == 0 ? len : -len;
    prev = next;
  }
  return z;
}

class RestartSearch {
 public:
  RestartSearch(const Family& family, int k, double target,
                std::uint64_t stream, std::uint64_t eval_seed, int budget)
      : k_(k),
        target_(target),
        rng_(stream),
        eval_(family, k, eval_seed, budget) {}

  Candidate run(CutProfile start) {
    Candidate cur{std::move(start), 0.0};
    cur.eps = eval_.objective(cur.profile);
    if (k_ == 2) sphere(cur);
    Candidate best = cur;
    double noise = 0.5;
    double temperature = 0.1 * std::max(cur.eps, 1e-6);
    while (!done(best.eps)) {
      local_search(cur);
      if (cur.eps < best.eps) best = cur;
      if (done(best.eps)) break;
      // Perturb from the current point (or the best when noise is small).
      Candidate trial = noise > 0.05 ? cur : best;
      perturb(trial.profile, noise);
      trial.eps = eval_.objective(trial.profile);
      local_search(trial);
      if (trial.eps < best.eps) best = trial;
      const double delta = trial.eps - cur.eps;
      if (delta <= 0.0 ||
          uniform01(rng_) < std::exp(-delta / std::max(temperature, 1e-15))) {
        cur = std::move(trial);
      }
      noise = std::max(noise * 0.7, 0.01);
      temperature *= 0.7;
    }
    return best;
  }

 private:
  bool done(double eps) const { return eps <= target_ || eval_.exhausted(); }

  void local_search(Candidate& c) {
    while (!done(c.eps)) {
      const double before = c.eps;
      newton(c);
      if (done(c.eps)) return;
      golden(c);
      if (done(c.eps)) return;
      relabel(c);
      if (!(c.eps < before * (1.0 - 1e-9))) return;
    }
  }

  void newton(Candidate& c) {
    const int cuts = static_cast<int>(c.profile.cuts.size());
    Eigen::VectorXd r;
    Eigen::VectorXd probe;
    for (int it = 0; it < kNewtonIterations && !done(c.eps); ++it) {
      c.eps = eval_.residuals(c.profile, r);
      if (done(c.eps)) return;
      Eigen::MatrixXd jac(r.size(), cuts);
      for (int s = 0; s < cuts; ++s) {
        CutProfile moved = c.profile;
        const double lower = s > 0 ? moved.cuts[s - 1] : 0.0;
        const double upper = s + 1 < cuts ? moved.cuts[s + 1] : 1.0;
        double h = kFdStep;
        if (moved.cuts[s] + h > upper) h = -kFdStep;
        if (moved.cuts[s] + h < lower) {
          jac.col(s).setZero();  // pinned between its neighbors
          continue;
        }
        moved.cuts[s] += h;
        eval_.residuals(moved, probe);
        jac.col(s) = (probe - r) / h;
      }
      const Eigen::VectorXd step =
          jac.completeOrthogonalDecomposition().solve(-r);
      if (!step.allFinite() || step.norm() == 0.0) return;
      bool improved = false;
      for (double alpha = 1.0; alpha > 1.0 / 64 && !eval_.exhausted();
           alpha *= 0.5) {
        CutProfile next = c.profile;
        for (int s = 0; s < cuts; ++s) next.cuts[s] += alpha * step(s);
        clamp_and_sort(next.cuts);
        const double eps = eval_.objective(next);
        if (eps < c.eps) {
          c.profile = std::move(next);
          c.eps = eps;
          improved = true;
          break;
        }
      }
      if (!improved) return;
    }
  }

  void sphere(Candidate& c) {
    Eigen::VectorXd z = sphere_from_profile(c.profile);
    z.normalize();
    Eigen::VectorXd r;
    Eigen::VectorXd probe;
    double merit = 0.0;
    c.eps = eval_.residuals(profile_from_sphere(z), r);
    merit = r.squaredNorm();
    double lambda = 1e-3;
    const Eigen::Index dim = z.size();
    for (int it = 0; it < kSphereIterations && !done(c.eps); ++it) {
      Eigen::MatrixXd jac(r.size(), dim);
      for (Eigen::Index s = 0; s < dim; ++s) {
        Eigen::VectorXd moved = z;
        moved(s) += kFdStep;
        eval_.residuals(profile_from_sphere(moved), probe);
        jac.col(s) = (probe - r) / kFdStep;
      }
      // Restrict to the tangent space so steps do not just rescale z.
      const Eigen::MatrixXd tangent =
          Eigen::MatrixXd::Identity(dim, dim) - z * z.transpose();
      jac = jac * tangent;
      const Eigen::MatrixXd jtj = jac.transpose() * jac;
      const Eigen::VectorXd jtr = jac.transpose() * r;
      bool improved = false;
      while (!eval_.exhausted() && lambda < 1e8) {
        Eigen::MatrixXd a = jtj;
        a.diagonal().array() += lambda * (1.0 + jtj.diagonal().array());
        const Eigen::VectorXd step = tangent * a.ldlt().solve(-jtr);
        if (!step.allFinite()) break;
        Eigen::VectorXd next = (z + step).normalized();
        Eigen::VectorXd rn;
        const double eps = eval_.residuals(profile_from_sphere(next), rn);
        if (rn.squaredNorm() < merit) {
          z = std::move(next);
          r = std::move(rn);
          merit = r.squaredNorm();
          c.eps = eps;
          lambda = std::max(lambda * 0.3, 1e-12);
          improved = true;
          break;
        }
        lambda *= 10.0;
      }
      if (!improved) break;
    }
    c.profile = profile_from_sphere(z);
    normalize_order(c.profile);
  }

  // Sphere profiles can carry repeated cuts; keep them sorted and in range.
  static void normalize_order(CutProfile& p) {
    for (double& x : p.cuts) x = std::clamp(x, 0.0, 1.0);
    for (std::size_t s = 1; s < p.cuts.size(); ++s) {
      p.cuts[s] = std::max(p.cuts[s], p.cuts[s - 1]);
    }
  }

  void golden(Candidate& c) {
    const int cuts = static_cast<int>(c.profile.cuts.size());
    for (int s = 0; s < cuts && !done(c.eps); ++s) {
      double lo = s > 0 ? c.profile.cuts[s - 1] : 0.0;
      double hi = s + 1 < cuts ? c.profile.cuts[s + 1] : 1.0;
      if (hi - lo <= 0.0) continue;
      CutProfile probe = c.profile;
      auto at = [&](double pos) {
        probe.cuts[s] = pos;
        return eval_.objective(probe);
      };
      double x1 = hi - kGolden * (hi - lo);
      double x2 = lo + kGolden * (hi - lo);
      double f1 = at(x1);
      double f2 = at(x2);
      for (int it = 0; it < kGoldenIterations && !eval_.exhausted(); ++it) {
        if (f1 <= f2) {
          hi = x2;
          x2 = x1;
          f2 = f1;
          x1 = hi - kGolden * (hi - lo);
          f1 = at(x1);
        } else {
          lo = x1;
          x1 = x2;
          f1 = f2;
          x2 = lo + kGolden * (hi - lo);
          f2 = at(x2);
        }
      }
      const double pos = f1 <= f2 ? x1 : x2;
      const double eps = std::min(f1, f2);
      if (eps < c.eps) {
        c.profile.cuts[s] = pos;
        c.eps = eps;
      }
    }
  }

  void relabel(Candidate& c) {
    auto try_labels = [&](const std::vector<int>& labels) {
      CutProfile next = c.profile;
      next.labels = labels;
      const double eps = eval_.objective(next);
      if (eps < c.eps) {
        c.profile = std::move(next);
        c.eps = eps;
        return true;
      }
      return false;
    };
    const std::size_t segments = c.profile.labels.size();
    for (std::size_t s = 0; s + 1 < segments && !done(c.eps); ++s) {
      std::vector<int> labels = c.profile.labels;
      if (labels[s] == labels[s + 1]) continue;
      std::swap(labels[s], labels[s + 1]);
      try_labels(labels);
    }
    for (std::size_t s = 0; s < segments && !done(c.eps); ++s) {
      for (int j = 0; j < k_ && !done(c.eps); ++j) {
        if (c.profile.labels[s] == j) continue;
        std::vector<int> labels = c.profile.labels;
        labels[s] = j;
        try_labels(labels);
      }
    }
  }

  void perturb(CutProfile& p, double noise) {
    std::normal_distribution<double> gauss(0.0, noise / (p.cuts.size() + 1));
    for (double& c : p.cuts) c += gauss(rng_);
    clamp_and_sort(p.cuts);
    if (p.labels.size() > 1 && uniform01(rng_) < noise) {
      std::uniform_int_distribution<std::size_t> pick(0, p.labels.size() - 2);
      const std::size_t s = pick(rng_);
      std::swap(p.labels[s], p.labels[s + 1]);
    }
  }

  int k_;
  double target_;
  Rng rng_;
  Evaluator eval_;
};

CutProfile initial_profile(int cuts, int k, int restart, Rng& rng) {
  CutProfile p;
  p.k = k;
  p.cuts.resize(cuts);
  p.labels.resize(cuts + 1);
  int offset = 0;
  if (restart == 0) {
    for (int s = 0; s < cuts; ++s) p.cuts[s] = (s + 1.0) / (cuts + 1.0);
  } else {
    for (double& c : p.cuts) c = uniform01(rng);
    std::sort(p.cuts.begin(), p.cuts.end());
    offset = std::uniform_int_distribution<int>(0, k - 1)(rng);
  }
  for (int s = 0; s <= cuts; ++s) p.labels[s] = (s + offset) % k;
  return p;
}

// Drops empty segments and merges equal neighbors: neither changes the
// embedding.
void normalize(CutProfile& p) {
  std::vector<double> bounds;
  bounds.push_back(0.0);
  bounds.insert(bounds.end(), p.cuts.begin(), p.cuts.end());
  bounds.push_back(1.0);
  CutProfile out;
  out.k = p.k;
  for (std::size_t s = 0; s < p.labels.size(); ++s) {
    if (bounds[s + 1] <= bounds[s]) continue;
    if (!out.labels.empty() && out.labels.back() == p.labels[s]) continue;
    if (!out.labels.empty()) out.cuts.push_back(bounds[s]);
    out.labels.push_back(p.labels[s]);
  }
  if (out.labels.empty()) out.labels.push_back(p.labels.front());
  p = std::move(out);
}

// Post-processing toward fewer fractional elements without making the
// balance worse: remove cuts, then move interior cuts onto element
// boundaries.
void simplify(const Family& family, Candidate& c, std::uint64_t eval_seed) {
  Evaluator eval(family, c.profile.k, eval_seed,
                 std::numeric_limits<int>::max());
  normalize(c.profile);
  bool changed = true;
  while (changed && !c.profile.cuts.empty()) {
    changed = false;
    for (std::size_t s = 0; s < c.profile.cuts.size() && !changed; ++s) {
      for (int side = 0; side < 2 && !changed; ++side) {
        CutProfile next = c.profile;
        next.cuts.erase(next.cuts.begin() + static_cast<std::ptrdiff_t>(s));
        // Keep either the left or the right label for the merged segment.
        next.labels.erase(next.labels.begin() +
                          static_cast<std::ptrdiff_t>(side == 0 ? s + 1 : s));
        const double eps = eval.objective(next);
        if (eps <= c.eps) {
          c.profile = std::move(next);
          c.eps = eps;
          normalize(c.profile);
          changed = true;
        }
      }
    }
  }
  const int m = family.m();
  for (std::size_t s = 0; s < c.profile.cuts.size(); ++s) {
    const double pos = c.profile.cuts[s] * m;
    if (pos == std::floor(pos)) continue;
    for (double target : {std::round(pos), std::floor(pos), std::ceil(pos)}) {
      CutProfile next = c.profile;
      next.cuts[s] = target / m;
      if (std::is_sorted(next.cuts.begin(), next.cuts.end())) {
        const double eps = eval.objective(next);
        if (eps <= c.eps) {
          c.profile = std::move(next);
          c.eps = eps;
          break;
        }
      }
    }
  }
  normalize(c.profile);
}

}  // namespace

FractionalSolution solve_cut_search(const Family& family, int k,
                                    const CutSearchOptions& options) {
  if (k < 2) throw Error(ErrorKind::kInvalidArgument, "need k >= 2");
  if (options.budget < 1) {
    throw Error(ErrorKind::kInvalidArgument, "cut search budget must be >= 1");
  }
  const int n = family.n();
  const int cuts = n * (k - 1);
  const double target = options.eps_target >= 0.0
                            ? options.eps_target
                            : default_eps_target(n, k);
  const std::uint64_t eval_seed = derive_seed(options.seed, {0xe7a1});

  // Restarts are independent; they run in waves and are merged in restart
  // order, so the outcome does not depend on the wave width.
  const int width = std::max(1, options.threads);
  std::vector<Candidate> results;
  int chosen = -1;
  bool reached = false;
  for (int wave = 0; wave < options.budget && chosen < 0; wave += width) {
    const int count = std::min(width, options.budget - wave);
    std::vector<Candidate> batch(count);
    auto run = [&](int b) {
      const int restart = wave + b;
      const std::uint64_t stream =
          derive_seed(options.seed, {static_cast<std::uint64_t>(restart)});
      Rng init(stream);
      RestartSearch search(family, k, target, mix64(stream), eval_seed,
                           options.evals_per_restart);
      batch[b] = search.run(initial_profile(cuts, k, restart, init));
      simplify(family, batch[b], eval_seed);
    };
    if (count == 1) {
      run(0);
    } else {
      std::vector<std::thread> pool;
      for (int b = 0; b < count; ++b) pool.emplace_back(run, b);
      for (auto& t : pool) t.join();
    }
    for (int b = 0; b < count; ++b) {
      results.push_back(std::move(batch[b]));
      if (chosen < 0 && results.back().eps <= target) {
        chosen = static_cast<int>(results.size()) - 1;
        reached = true;
      }
    }
  }
  if (chosen < 0) {
    chosen = 0;
    for (std::size_t r = 1; r < results.size(); ++r) {
      if (results[r].eps < results[chosen].eps) chosen = static_cast<int>(r);
    }
  }

  Candidate best = results[chosen];
  FractionalColoring coloring = embed(best.profile, family.m());

  FractionalReport report;
  report.method = FractionalMethod::kCutSearch;
  report.epsilon = balance_objective(family, coloring, eval_seed);
  report.fractional_count = coloring.fractional_count();
  report.iterations = reached ? chosen + 1 : static_cast<int>(results.size());
  report.success = report.epsilon <= target;
  return FractionalSolution{std::move(coloring), report,
                            std::move(best.profile)};
}

}  // namespace lipdisc
