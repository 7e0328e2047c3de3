// Copyright 2026 The splitsamp Authors
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

// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
// exits nonzero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "experiment.h"
#include "splitsamp/bounds.h"
#include "splitsamp/designs.h"
#include "splitsamp/distribution.h"
#include "splitsamp/montecarlo.h"
#include "splitsamp/oracle.h"
#include "splitsamp/population.h"
#include "splitsamp/rng.h"
#include "splitsamp/splitting.h"

namespace splitsamp {
namespace {

struct Outcome {
  bool passed = true;
  std::string detail;
};

const std::vector<double> kBaseX = {1, 2, 3, 4, 5, 6};
constexpr int kBaseN = 3;
constexpr DesignKind kUnequalDesigns[] = {DesignKind::kChao, DesignKind::kTilleElimination,
                                          DesignKind::kGeneralizedMidzuno, DesignKind::kBrewer};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::vector<double> random_sizes(std::size_t N, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> x(N);
  for (double& v : x) v = 1.0 + rng.exponential();
  return x;
}

Outcome exact_inclusion() {
  Outcome o;
  const auto inputs = DesignInputs::from_sizes(kBaseX, kBaseN);
  double worst = 0.0;
  for (DesignKind kind : kUnequalDesigns) {
    const ExactDesignDistribution d = enumerate_design(kind, inputs);
    const auto target = design_target_pi(kind, inputs);
    const InclusionMatrix m = inclusion_probabilities(d);
    double gap = 0.0;
    for (std::size_t k = 0; k < target.size(); ++k) {
      gap = std::max(gap, std::abs(m.first[k] - target[k]));
    }
    bool sized = true;
    for (const auto& [s, p] : d.support()) sized = sized && s.size() == kBaseN;
    worst = std::max(worst, gap);
    if (gap > 1e-9 || !sized) {
      o.passed = false;
      o.detail += std::string(design_tag(kind)) + " gap=" + fmt(gap) +
                  (sized ? "" : " wrong sizes") + "; ";
    }
  }
  o.detail += "max|pi_hat - pi|=" + fmt(worst);
  return o;
}

Outcome csyg() {
  Outcome o;
  std::vector<std::vector<double>> instances = {kBaseX};
  for (std::uint64_t s = 1; s <= 3; ++s) instances.push_back(random_sizes(6, derive_seed(2024, s)));
  double worst = -std::numeric_limits<double>::infinity();
  std::size_t checked = 0;
  for (const auto& x : instances) {
    const auto inputs = DesignInputs::from_sizes(x, kBaseN);
    for (DesignKind kind : {DesignKind::kChao, DesignKind::kTilleElimination,
                            DesignKind::kGeneralizedMidzuno}) {
      const CsygReport r = check_csyg(enumerate_design(kind, inputs));
      worst = std::max(worst, r.max_violation);
      checked += r.checked_count;
      if (r.max_violation > 1e-12) {
        o.passed = false;
        o.detail += std::string(design_tag(kind)) + " violation=" + fmt(r.max_violation) + "; ";
      }
    }
  }
  o.detail += "max_violation=" + fmt(worst) + " over " + std::to_string(checked) + " checks";
  return o;
}

Outcome complementarity() {
  const auto inputs = DesignInputs::from_sizes(kBaseX, kBaseN);
  const ExactDesignDistribution midzuno =
      enumerate_design(DesignKind::kGeneralizedMidzuno, inputs);
  std::vector<double> rest;
  for (double p : inputs.pi().values()) rest.push_back(1.0 - p);
  const ExactDesignDistribution tille = enumerate_design(
      DesignKind::kTilleElimination,
      DesignInputs::from_sizes(rest, static_cast<int>(kBaseX.size()) - kBaseN));
  const double tv = total_variation(midzuno, complement(tille));
  return {tv <= 1e-9, "TV=" + fmt(tv)};
}

Outcome brewer_identity() {
  const auto x = random_sizes(50, 4242);
  const InclusionProbabilities pi = compute_pips(x, 10);
  double worst = 0.0;
  double max_l1 = 0.0;
  std::size_t steps = 0;
  for (std::uint64_t r = 0; r < 10000; ++r) {
    const DesignRun run = sample_brewer(pi, derive_seed(99, r), TraceMode::kOn);
    const SplittingTrace& trace = *run.trace;
    const auto path = trace.path();
    for (std::size_t t = 0; t < trace.steps.size(); ++t) {
      const auto& delta = trace.steps[t].realized_delta();
      const std::size_t J = static_cast<std::size_t>(
          std::max_element(delta.begin(), delta.end()) - delta.begin());
      double l1 = 0.0;
      for (double d : delta) l1 += std::abs(d);
      worst = std::max(worst, std::abs(l1 - 2.0 * (1.0 - path[t][J])));
      max_l1 = std::max(max_l1, l1);
      ++steps;
    }
  }
  return {worst <= 1e-12 && max_l1 <= 2.0,
          "max deviation=" + fmt(worst) + " max sum|delta|=" + fmt(max_l1) + " over " +
              std::to_string(steps) + " steps"};
}

Outcome tail_dominance() {
  Outcome o;
  constexpr std::size_t N = 200;
  constexpr int n = 40;
  const auto x = random_sizes(N, 777);
  Rng rng(778);
  std::vector<double> y(N);
  for (double& v : y) v = rng.uniform();
  std::vector<double> eps;
  for (int j = 1; j <= 20; ++j) eps.push_back(j / 20.0);
  const auto inputs = DesignInputs::from_sizes(x, n);
  const unsigned threads = std::max(1u, std::thread::hardware_concurrency());
  for (DesignKind kind : kUnequalDesigns) {
    const auto start = std::chrono::steady_clock::now();
    const TailEstimate tail = estimate_tail(kind, inputs, y, eps, 100000, 5150, threads);
    const CheckedStudyVector study = check_study_vector(y, design_target_pi(kind, inputs));
    const BoundInputs b = BoundInputs::from_study(study, N, n, 0.0, false);
    const auto reports = evaluate_bounds(b, eps, true);
    const CertifyResult c = certify(tail, reports, BoundKind::kCna);
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    double max_freq = 0.0;
    for (double f : tail.freq_two_sided) max_freq = std::max(max_freq, f);
    o.detail += std::string(design_tag(kind)) + ": " + (c.passed ? "ok" : "VIOLATED") +
                " (" + fmt(secs) + "s, max freq " + fmt(max_freq) + ")";
    if (secs > 300) {
      o.passed = false;
      o.detail += " over 5 min";
    }
    for (const CertifyFailure& f : c.failures) {
      o.detail += " [eps=" + fmt(f.eps) + " freq=" + fmt(f.frequency) + " bound=" +
                  fmt(f.bound) + "]";
    }
    o.detail += "; ";
    o.passed = o.passed && c.passed;
  }
  return o;
}

Outcome bound_arithmetic() {
  const std::vector<double> y(100, 1.0);
  const CheckedStudyVector study = check_study_vector(y, std::vector<double>(100, 0.2));
  const BoundInputs in = BoundInputs::from_study(study, 100, 20, 0.5, true);
  const double cna = cna_bound(in);
  const double bern = bernstein_bound(in);
  const double lip = lipschitz_bound(in);
  const bool ok = std::abs(cna - 0.535261) <= 1e-5 && std::abs(bern - 0.985815) <= 1e-5 &&
                  std::abs(lip - 0.993770) <= 1e-5;
  return {ok, "cna=" + fmt(cna) + " (expect 0.535261) bernstein=" + fmt(bern) +
                  " (expect 0.985815) lipschitz=" + fmt(lip) + " (expect 0.993770)"};
}

Outcome dominance_relation() {
  Outcome o;
  Rng rng(31337);
  std::size_t bad = 0;
  std::size_t strict = 0;
  for (int i = 0; i < 1000; ++i) {
    const std::size_t N = 2 + static_cast<std::size_t>(rng.uniform() * 499);
    const int n = 1 + static_cast<int>(rng.uniform() * static_cast<double>(N - 1));
    std::vector<double> x(N), y(N);
    for (std::size_t k = 0; k < N; ++k) {
      x[k] = 0.1 + rng.exponential();
      y[k] = rng.normal();
    }
    const InclusionProbabilities pi = compute_pips(x, n);
    const CheckedStudyVector study = check_study_vector(y, pi);
    BoundInputs in = BoundInputs::from_study(study, static_cast<double>(N), n, 0.0, false);
    in.eps = rng.uniform() * 2.0 * study.sup_y_abs;
    const double lc = log_cna_bound(in);
    const double ll = log_lipschitz_bound(in);
    if (lc > ll) ++bad;
    if (lc < ll) ++strict;
  }
  std::size_t unequal = 0;
  for (int i = 0; i < 100; ++i) {
    const std::size_t N = 2 + static_cast<std::size_t>(rng.uniform() * 199);
    std::vector<double> y(N, 0.0);
    y[static_cast<std::size_t>(rng.uniform() * static_cast<double>(N))] = 0.5 + rng.uniform();
    const InclusionProbabilities pi = compute_pips(random_sizes(N, derive_seed(5, i)), 1);
    const CheckedStudyVector study = check_study_vector(y, pi);
    BoundInputs in = BoundInputs::from_study(study, static_cast<double>(N), 1, 0.0, false);
    in.eps = rng.uniform() * study.sup_y_abs;
    if (std::abs(cna_bound(in) - lipschitz_bound(in)) > 1e-12) ++unequal;
  }
  o.passed = bad == 0 && unequal == 0 && strict == 1000;
  o.detail = "cna > lipschitz on " + std::to_string(bad) + "/1000, strict on " +
             std::to_string(strict) + "/1000, single-nonzero mismatches " +
             std::to_string(unequal) + "/100";
  return o;
}

// Largest log cna - log bernstein over the grid for y = 1, pi = n / N.
double worst_gap(double N, double n, const std::vector<double>& grid) {
  const std::vector<double> y(static_cast<std::size_t>(N), 1.0);
  const CheckedStudyVector study =
      check_study_vector(y, std::vector<double>(static_cast<std::size_t>(N), n / N));
  BoundInputs in = BoundInputs::from_study(study, N, n, 0.0, true);
  double worst = -std::numeric_limits<double>::infinity();
  for (double e : grid) {
    in.eps = e;
    worst = std::max(worst, log_cna_bound(in) - log_bernstein_bound(in));
  }
  return worst;
}

Outcome proposition1() {
  Outcome o;
  constexpr double N = 1e4;
  const double threshold = prop1_small_n_threshold(N);
  o.passed = std::abs(threshold - 394.97) <= 0.01;
  o.detail = "threshold=" + fmt(threshold) + "; ";
  const std::vector<double> grid = log_grid(2.0, 512);
  for (double n : {100.0, 300.0}) {
    const double gap = worst_gap(N, n, grid);
    o.passed = o.passed && gap <= 0.0;
    o.detail += "n=" + fmt(n) + " max log(cna/bernstein)=" + fmt(gap) + "; ";
  }
  const double star = 2.0 * (1.0 - 6000 / N);
  const double gap = worst_gap(N, 6000, log_grid(star, 512));
  o.passed = o.passed && gap <= 0.0;
  o.detail += "n=6000 on (0, eps*=" + fmt(star) + "] max log(cna/bernstein)=" + fmt(gap);
  if (const auto limit = dominance_limit(N, 6000, 1.0)) {
    o.detail += " (cna <= bernstein only up to eps~" + fmt(*limit) + ")";
  }
  return o;
}

Outcome figure1() {
  Outcome o;
  cli::ExperimentConfig config;
  config.sigma_list = {0.0, 5.0};
  const auto rows = cli::run_experiment(config);
  const double big = std::pow(10.0, 3.5);
  std::size_t nonpositive = 0;
  bool neg = false, pos = false;
  for (const auto& r : rows) {
    if (r.sigma == 0.0 && !(r.diff > 0.0)) ++nonpositive;
    if (r.sigma == 5.0 && std::abs(r.n - big) < 1e-6) {
      neg = neg || r.diff < 0.0;
      pos = pos || r.diff > 0.0;
    }
  }
  o.passed = nonpositive == 0 && neg && pos;
  o.detail = "sigma=0 rows with diff <= 0: " + std::to_string(nonpositive) +
             "; sigma=5 n=10^3.5 sign change: " + (neg && pos ? "yes" : "no");
  return o;
}

Outcome unbiasedness() {
  const auto inputs = DesignInputs::from_sizes(kBaseX, kBaseN);
  double worst = 0.0;
  for (DesignKind kind : kAllDesigns) {
    const ExactDesignDistribution d = enumerate_design(kind, inputs);
    worst = std::max(worst, unbiasedness_check(d, kBaseX, design_target_pi(kind, inputs)));
  }
  return {worst <= 1e-8, "max|E t_hat - t_y|=" + fmt(worst)};
}

struct Criterion {
  int id;
  const char* name;
  double budget_seconds;
  std::function<Outcome()> run;
};

}  // namespace
}  // namespace splitsamp

int main() {
  using namespace splitsamp;
  const std::vector<Criterion> criteria = {
      {1, "exact inclusion probabilities", 30, exact_inclusion},
      {2, "conditional Sen-Yates-Grundy closure", 60, csyg},
      {3, "Midzuno / Tille complementarity", 60, complementarity},
      {4, "Brewer increment identity", 10, brewer_identity},
      {5, "Monte Carlo tail dominance", 1200, tail_dominance},
      {6, "bound arithmetic at the reference instance", 10, bound_arithmetic},
      {7, "cna <= lipschitz", 10, dominance_relation},
      {8, "cna <= bernstein regimes", 10, proposition1},
      {9, "bernstein - cna sign pattern", 10, figure1},
      {10, "design unbiasedness", 10, unbiasedness},
  };
  int failures = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > c.budget_seconds) {
      o.passed = false;
      o.detail += " [exceeded " + fmt(c.budget_seconds) + "s budget]";
    }
    if (!o.passed) ++failures;
    std::printf("criterion %2d %s  %s (%.2fs): %s\n", c.id, o.passed ? "PASS" : "FAIL", c.name,
                secs, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}
