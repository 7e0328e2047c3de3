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

#include "splitsamp/montecarlo.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <ostream>
#include <string>
#include <thread>

#include "splitsamp/error.h"
#include "splitsamp/rng.h"

namespace splitsamp {

WilsonInterval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z) {
  if (successes > trials) {
    throw Error(ErrorCode::kInvalidInput, "more successes than trials");
  }
  if (trials == 0) return {0.0, 1.0};
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double centre = (p + z2 / (2.0 * n)) / (1.0 + z2 / n);
  const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / (1.0 + z2 / n);
  WilsonInterval out{std::max(0.0, centre - half), std::min(1.0, centre + half)};
  // Keep the point estimate inside the interval despite rounding.
  out.lower = std::min(out.lower, p);
  out.upper = std::max(out.upper, p);
  return out;
}

namespace {

struct Counts {
  std::vector<std::uint64_t> one;
  std::vector<std::uint64_t> two;
};

void run_block(const AnyProcess& process, std::span<const double> y_check, double t_y,
               std::span<const double> thresholds, std::uint64_t base_seed,
               std::uint64_t begin, std::uint64_t end, Counts& counts) {
  for (std::uint64_t i = begin; i < end; ++i) {
    Sample sample;
    try {
      sample = sample_process(process, derive_seed(base_seed, i));
    } catch (const Error& e) {
      throw Error(e.code(), "replicate " + std::to_string(i) + ": " + e.detail());
    }
    double estimate = 0.0;
    for (std::size_t k : sample.selected()) estimate += y_check[k];
    const double error = estimate - t_y;
    for (std::size_t j = 0; j < thresholds.size(); ++j) {
      if (error >= thresholds[j]) ++counts.one[j];
      if (std::abs(error) >= thresholds[j]) ++counts.two[j];
    }
  }
}

}  // namespace

TailEstimate estimate_tail(DesignKind kind, const DesignInputs& inputs,
                           std::span<const double> y, std::span<const double> eps_grid,
                           std::uint64_t replicates, std::uint64_t base_seed,
                           unsigned threads) {
  if (replicates == 0) throw Error(ErrorCode::kInvalidInput, "need at least one replicate");
  if (y.size() != inputs.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "y must have one entry per unit");
  }
  if (!std::is_sorted(eps_grid.begin(), eps_grid.end())) {
    throw Error(ErrorCode::kInvalidInput, "eps grid must be sorted ascending");
  }
  const std::vector<double> pi = design_target_pi(kind, inputs);
  std::vector<double> y_check(y.size());
  double t_y = 0.0;
  for (std::size_t k = 0; k < y.size(); ++k) {
    y_check[k] = y[k] / pi[k];
    t_y += y[k];
  }
  std::vector<double> thresholds(eps_grid.size());
  for (std::size_t j = 0; j < eps_grid.size(); ++j) {
    thresholds[j] = static_cast<double>(inputs.size()) * eps_grid[j];
  }
  const AnyProcess process = make_process(kind, inputs);

  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(
                                                         std::min<std::uint64_t>(replicates, 256))));
  std::vector<Counts> partial(threads, Counts{std::vector<std::uint64_t>(eps_grid.size(), 0),
                                              std::vector<std::uint64_t>(eps_grid.size(), 0)});
  if (threads == 1) {
    run_block(process, y_check, t_y, thresholds, base_seed, 0, replicates, partial[0]);
  } else {
    std::vector<std::exception_ptr> errors(threads);
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < threads; ++w) {
      const std::uint64_t begin = replicates * w / threads;
      const std::uint64_t end = replicates * (w + 1) / threads;
      pool.emplace_back([&, w, begin, end] {
        try {
          run_block(process, y_check, t_y, thresholds, base_seed, begin, end, partial[w]);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (auto& t : pool) t.join();
    for (const auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  TailEstimate out;
  out.eps_grid.assign(eps_grid.begin(), eps_grid.end());
  out.count_one_sided.assign(eps_grid.size(), 0);
  out.count_two_sided.assign(eps_grid.size(), 0);
  for (const Counts& c : partial) {
    for (std::size_t j = 0; j < eps_grid.size(); ++j) {
      out.count_one_sided[j] += c.one[j];
      out.count_two_sided[j] += c.two[j];
    }
  }
  out.replicates = replicates;
  out.seed = base_seed;
  const double r = static_cast<double>(replicates);
  for (std::size_t j = 0; j < eps_grid.size(); ++j) {
    out.freq_one_sided.push_back(static_cast<double>(out.count_one_sided[j]) / r);
    out.freq_two_sided.push_back(static_cast<double>(out.count_two_sided[j]) / r);
    out.wilson_1s.push_back(wilson_interval(out.count_one_sided[j], replicates));
    out.wilson_2s.push_back(wilson_interval(out.count_two_sided[j], replicates));
  }
  return out;
}

CertifyResult certify(const TailEstimate& tail, std::span<const double> bounds,
                      TailSide side) {
  if (bounds.size() != tail.eps_grid.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "bound list does not match the eps grid");
  }
  const auto& freq = side == TailSide::kOneSided ? tail.freq_one_sided : tail.freq_two_sided;
  const auto& wilson = side == TailSide::kOneSided ? tail.wilson_1s : tail.wilson_2s;
  CertifyResult out;
  for (std::size_t j = 0; j < bounds.size(); ++j) {
    const double slack = wilson[j].upper - freq[j];
    ++out.checked;
    if (!(freq[j] <= bounds[j] + slack)) {
      out.passed = false;
      out.failures.push_back({j, tail.eps_grid[j], freq[j], bounds[j], slack});
    }
  }
  return out;
}

CertifyResult certify(const TailEstimate& tail, std::span<const TailBoundReport> reports,
                      BoundKind bound) {
  if (reports.size() != tail.eps_grid.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "report list does not match the eps grid");
  }
  std::vector<double> values;
  bool two_sided = false;
  for (std::size_t j = 0; j < reports.size(); ++j) {
    const TailBoundReport& r = reports[j];
    if (std::abs(r.eps - tail.eps_grid[j]) > 1e-12 * std::max(1.0, std::abs(r.eps))) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "eps grids differ at index " + std::to_string(j));
    }
    if (j > 0 && r.two_sided_factor_applied != two_sided) {
      throw Error(ErrorCode::kInvalidInput, "reports mix one- and two-sided bounds");
    }
    two_sided = r.two_sided_factor_applied;
    switch (bound) {
      case BoundKind::kCna: values.push_back(r.cna); break;
      case BoundKind::kBernstein: values.push_back(r.bernstein); break;
      case BoundKind::kLipschitz: values.push_back(r.lipschitz); break;
      case BoundKind::kCnaMc:
        if (!r.cna_Mc_form) {
          throw Error(ErrorCode::kNotApplicable, "reports carry no M/c bound");
        }
        values.push_back(*r.cna_Mc_form);
        break;
    }
  }
  return certify(tail, values, two_sided ? TailSide::kTwoSided : TailSide::kOneSided);
}

void write_tail_csv(const TailEstimate& tail, std::ostream& out) {
  out << "eps,freq_one_sided,freq_two_sided,wilson_upper_1s,wilson_upper_2s\n";
  char buf[160];
  for (std::size_t j = 0; j < tail.eps_grid.size(); ++j) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g\n", tail.eps_grid[j],
                  tail.freq_one_sided[j], tail.freq_two_sided[j], tail.wilson_1s[j].upper,
                  tail.wilson_2s[j].upper);
    out << buf;
  }
}

}  // namespace splitsamp
