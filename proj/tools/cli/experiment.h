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

#ifndef SPLITSAMP_TOOLS_CLI_EXPERIMENT_H_
#define SPLITSAMP_TOOLS_CLI_EXPERIMENT_H_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

namespace splitsamp::cli {

// Synthetic population x_k = 1 + gamma_k, y_k = x_k + sigma e_k with
// gamma ~ Exp(1) and e ~ N(0, 1), and pi = n x / sum(x) without capping.
struct ExperimentConfig {
  std::size_t N = 10000;
  std::vector<double> sigma_list = {0.0, 0.5, 1.0, 5.0};
  std::vector<double> n_list;  // empty means 10^2, 10^2.5, 10^3, 10^3.5
  std::size_t eps_count = 200;
  std::optional<double> eps_max;  // default 2 * population mean of y, per sigma
  std::uint64_t seed = 20260101;

  // Throws kValidation on N < 2, n outside (0, N], negative sigma, empty
  // lists or a zero eps count.
  void validate() const;
  std::vector<double> effective_n_list() const;
};

struct ExperimentRow {
  double sigma = 0.0;
  double n = 0.0;
  double eps = 0.0;
  double diff = 0.0;  // bernstein - cna, both one-sided formulas
  double pop_mean = 0.0;
};

std::vector<ExperimentRow> run_experiment(const ExperimentConfig& config);

// "sigma,n,eps,diff,pop_mean".
void write_experiment_csv(const std::vector<ExperimentRow>& rows, std::ostream& out);

}  // namespace splitsamp::cli

#endif  // SPLITSAMP_TOOLS_CLI_EXPERIMENT_H_
