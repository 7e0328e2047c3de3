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

#ifndef SPLITSAMP_BOUNDS_H_
#define SPLITSAMP_BOUNDS_H_

// Exponential tail bounds for the Horvitz-Thompson error of a fixed-size
// design. Every bound controls Pr(t_hat - t_y >= N eps): eps is a per-unit
// error scale.

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "splitsamp/population.h"

namespace splitsamp {

struct BoundInputs {
  double N = 0.0;
  double n = 0.0;  // may be an average size
  double eps = 0.0;
  double sup_ycheck = 0.0;      // sup |y_k / pi_k|
  double sum_sq_ycheck = 0.0;   // sum (y_k / pi_k)^2
  double sup_y = 0.0;           // sup |y_k|
  double sup_y2_over_pi = 0.0;  // sup y_k^2 / pi_k
  std::optional<double> M;      // |y_k| <= M
  std::optional<double> c;      // pi_k >= c n / N
  bool equal_probability = false;

  // Throws kValidation on N < 1, n outside (0, N], negative or non-finite
  // statistics, sup_ycheck^2 > sum_sq_ycheck, or nonpositive M / c.
  void validate() const;

  static BoundInputs from_study(const CheckedStudyVector& study, double N, double n,
                                double eps, bool equal_probability);
};

// One-sided bounds, unclamped. The log forms avoid underflow when bounds are
// compared far in the tail.
double log_cna_bound(const BoundInputs& in);
double log_cna_bound_Mc(const BoundInputs& in);
double log_bernstein_bound(const BoundInputs& in);
double log_lipschitz_bound(const BoundInputs& in);

// exp(-N^2 eps^2 / (8 n sup|y_check|^2)); 0 when y_check = 0 and eps > 0.
double cna_bound(const BoundInputs& in);
// exp(-n c^2 eps^2 / (8 M^2)); kNotApplicable without M and c.
double cna_bound_Mc(const BoundInputs& in);
// 2 exp(-eps^2 N / (8 (1 - n/N) sup(y^2/pi) + (4/3) eps sup|y_check|)); 2 when
// the denominator vanishes.
double bernstein_bound(const BoundInputs& in);
// exp(-N^2 eps^2 / (8 n sum y_check^2)).
double lipschitz_bound(const BoundInputs& in);

// 2 (1 - n/N) sup|y|; kNotApplicable unless in.equal_probability.
double eps_star(const BoundInputs& in);

enum class Prop1Regime { kSmallNAllEps, kLargeNEpsRange, kInconclusive };

struct Prop1Result {
  Prop1Regime regime = Prop1Regime::kInconclusive;
  std::optional<double> limit;  // (3 - sqrt 2)(n/N) sup|y| for kLargeNEpsRange
};

std::string_view prop1_regime_name(Prop1Regime regime);

// (8 log 2 / 9)^{1/3} N^{2/3}.
double prop1_small_n_threshold(double N);

// Regime in which the CNA bound is claimed to beat the Bernstein bound under
// equal probabilities. The small-n condition wins when both hold.
Prop1Result prop1_regime(double N, double n, double sup_y = 1.0);

// First eps > 0 at which the equal-probability CNA bound exceeds the
// Bernstein bound, found from the sign of the governing cubic; nullopt if it
// never does.
std::optional<double> dominance_limit(double N, double n, double sup_y);

struct SampleSizeSolution {
  std::uint64_t n = 0;
  bool vacuous = false;  // eta >= 1: any n works
};

// Smallest n with k exp(-n c^2 eps^2 / (8 M^2)) <= eta, k = 2 if two-sided.
SampleSizeSolution solve_sample_size(double M, double c, double eps, double eta,
                                     bool two_sided);

// Smallest eps with k cna_bound <= eta: sup|y_check| sqrt(8 n log(k/eta)) / N.
double solve_confidence_radius(const BoundInputs& in, double eta, bool two_sided);

struct TailBoundReport {
  double eps = 0.0;
  // Reported values: factor 2 applied to cna, cna_Mc and lipschitz when
  // two-sided, then clamped to [0, 2].
  double cna = 0.0;
  std::optional<double> cna_Mc_form;
  double bernstein = 0.0;
  double lipschitz = 0.0;
  // The bare formulas.
  double cna_raw = 0.0;
  std::optional<double> cna_Mc_raw;
  double bernstein_raw = 0.0;
  double lipschitz_raw = 0.0;
  bool two_sided_factor_applied = false;
  std::optional<double> eps_star;
  Prop1Result prop1;
};

TailBoundReport evaluate_bounds(const BoundInputs& in, bool two_sided);
std::vector<TailBoundReport> evaluate_bounds(BoundInputs in, std::span<const double> eps_grid,
                                             bool two_sided);

// count points log-spaced on [hi * 1e-4, hi].
std::vector<double> log_grid(double hi, std::size_t count = 512);

}  // namespace splitsamp

#endif  // SPLITSAMP_BOUNDS_H_
