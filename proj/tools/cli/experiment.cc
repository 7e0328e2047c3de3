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

#include "experiment.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "splitsamp/bounds.h"
#include "splitsamp/error.h"
#include "splitsamp/rng.h"

namespace splitsamp::cli {

void ExperimentConfig::validate() const {
  if (N < 2) throw Error(ErrorCode::kValidation, "experiment needs N >= 2");
  if (sigma_list.empty()) throw Error(ErrorCode::kValidation, "empty sigma list");
  for (double s : sigma_list) {
    if (!(s >= 0.0) || !std::isfinite(s)) {
      throw Error(ErrorCode::kValidation, "sigma values must be nonnegative");
    }
  }
  for (double n : effective_n_list()) {
    if (!(n > 0.0) || n > static_cast<double>(N)) {
      throw Error(ErrorCode::kValidation, "every n must lie in (0, N]");
    }
  }
  if (eps_count == 0) throw Error(ErrorCode::kValidation, "eps count must be positive");
  if (eps_max && !(*eps_max > 0.0)) {
    throw Error(ErrorCode::kValidation, "eps max must be positive");
  }
}

std::vector<double> ExperimentConfig::effective_n_list() const {
  if (!n_list.empty()) return n_list;
  return {std::pow(10.0, 2.0), std::pow(10.0, 2.5), std::pow(10.0, 3.0), std::pow(10.0, 3.5)};
}

std::vector<ExperimentRow> run_experiment(const ExperimentConfig& config) {
  config.validate();
  const std::size_t N = config.N;
  Rng rng(config.seed);
  std::vector<double> x(N);
  std::vector<double> noise(N);
  for (double& v : x) v = 1.0 + rng.exponential();
  for (double& v : noise) v = rng.normal();
  double sum_x = 0.0;
  for (double v : x) sum_x += v;

  std::vector<ExperimentRow> rows;
  const std::vector<double> n_list = config.effective_n_list();
  rows.reserve(config.sigma_list.size() * n_list.size() * config.eps_count);
  std::vector<double> y(N);
  for (double sigma : config.sigma_list) {
    double total = 0.0;
    for (std::size_t k = 0; k < N; ++k) {
      y[k] = x[k] + sigma * noise[k];
      total += y[k];
    }
    const double pop_mean = total / static_cast<double>(N);
    const double eps_max = config.eps_max.value_or(2.0 * std::abs(pop_mean));
    for (double n : n_list) {
      BoundInputs in;
      in.N = static_cast<double>(N);
      in.n = n;
      for (std::size_t k = 0; k < N; ++k) {
        const double pi = n * x[k] / sum_x;
        const double check = y[k] / pi;
        in.sup_ycheck = std::max(in.sup_ycheck, std::abs(check));
        in.sum_sq_ycheck += check * check;
        in.sup_y = std::max(in.sup_y, std::abs(y[k]));
        in.sup_y2_over_pi = std::max(in.sup_y2_over_pi, y[k] * y[k] / pi);
      }
      for (std::size_t j = 1; j <= config.eps_count; ++j) {
        in.eps = eps_max * static_cast<double>(j) / static_cast<double>(config.eps_count);
        rows.push_back({sigma, n, in.eps, bernstein_bound(in) - cna_bound(in), pop_mean});
      }
    }
  }
  return rows;
}

void write_experiment_csv(const std::vector<ExperimentRow>& rows, std::ostream& out) {
  out << "sigma,n,eps,diff,pop_mean\n";
  char buf[160];
  for (const ExperimentRow& r : rows) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g\n", r.sigma, r.n, r.eps,
                  r.diff, r.pop_mean);
    out << buf;
  }
}

}  // namespace splitsamp::cli
