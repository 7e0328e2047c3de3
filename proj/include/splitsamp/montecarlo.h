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

#ifndef SPLITSAMP_MONTECARLO_H_
#define SPLITSAMP_MONTECARLO_H_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "splitsamp/bounds.h"
#include "splitsamp/designs.h"

namespace splitsamp {

// Two-sided 99% normal quantile.
inline constexpr double kWilsonZ99 = 2.5758293035489004;

struct WilsonInterval {
  double lower = 0.0;
  double upper = 1.0;
};

WilsonInterval wilson_interval(std::uint64_t successes, std::uint64_t trials,
                               double z = kWilsonZ99);

struct TailEstimate {
  std::vector<double> eps_grid;
  std::vector<std::uint64_t> count_one_sided;  // #{t_hat - t_y >= N eps}
  std::vector<std::uint64_t> count_two_sided;  // #{|t_hat - t_y| >= N eps}
  std::vector<double> freq_one_sided;
  std::vector<double> freq_two_sided;
  std::vector<WilsonInterval> wilson_1s;
  std::vector<WilsonInterval> wilson_2s;
  std::uint64_t replicates = 0;
  std::uint64_t seed = 0;
};

// Draws R samples, replicate i using derive_seed(base_seed, i), and counts
// exceedances of the HT error over the grid. y_check is y divided by the
// design's target probabilities. Replicates may be split over `threads`;
// the result does not depend on the split.
TailEstimate estimate_tail(DesignKind kind, const DesignInputs& inputs,
                           std::span<const double> y, std::span<const double> eps_grid,
                           std::uint64_t replicates, std::uint64_t base_seed,
                           unsigned threads = 1);

enum class TailSide { kOneSided, kTwoSided };
enum class BoundKind { kCna, kCnaMc, kBernstein, kLipschitz };

struct CertifyFailure {
  std::size_t index = 0;
  double eps = 0.0;
  double frequency = 0.0;
  double bound = 0.0;
  double slack = 0.0;
};

struct CertifyResult {
  bool passed = true;
  std::size_t checked = 0;
  std::vector<CertifyFailure> failures;
};

// Passes at an eps when frequency <= bound + (wilson_upper - frequency).
// Throws kDimensionMismatch when the bound list does not match the grid.
CertifyResult certify(const TailEstimate& tail, std::span<const double> bounds, TailSide side);

// Uses the chosen bound of each report; the side follows the report's
// two-sided flag. Throws kDimensionMismatch on differing eps grids.
CertifyResult certify(const TailEstimate& tail, std::span<const TailBoundReport> reports,
                      BoundKind bound);

// "eps,freq_one_sided,freq_two_sided,wilson_upper_1s,wilson_upper_2s".
void write_tail_csv(const TailEstimate& tail, std::ostream& out);

}  // namespace splitsamp

#endif  // SPLITSAMP_MONTECARLO_H_
