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

#ifndef SPLITSAMP_ORACLE_H_
#define SPLITSAMP_ORACLE_H_

#include <cstddef>
#include <span>
#include <vector>

#include "splitsamp/designs.h"
#include "splitsamp/distribution.h"

namespace splitsamp {

inline constexpr std::size_t kMaxEnumerationSize = 10;
inline constexpr std::size_t kDefaultMaxBranches = 10'000'000;
inline constexpr double kInequalityTolerance = 1e-12;
inline constexpr double kConditioningThreshold = 1e-12;

// Exact distribution of `kind` on `inputs`. Throws kEnumerationTooLarge for
// N > 10 or past `max_branches` expansions, kInternalConsistency if the
// enumerated mass (after pruning) is not 1 within 1e-9.
ExactDesignDistribution enumerate_design(DesignKind kind, const DesignInputs& inputs,
                                         std::size_t max_branches = kDefaultMaxBranches);

struct InclusionMatrix {
  std::vector<double> first;                // pi_k
  std::vector<std::vector<double>> second;  // pi_kl, diagonal = pi_k
};

InclusionMatrix inclusion_probabilities(const ExactDesignDistribution& dist);

// Pr(A is contained in S) for every bitmask A over the population (N <= 20).
std::vector<double> containment_probabilities(const ExactDesignDistribution& dist);

struct CsygWitness {
  std::size_t k = 0;
  std::size_t l = 0;
  std::vector<std::size_t> conditioning;
};

struct CsygReport {
  // max of pi_{kl|I} - pi_{k|I} pi_{l|I} over k < l outside I, |I| <= n-2.
  double max_violation = 0.0;
  // max of pi_{k|I,l} - pi_{k|I} over the same sets, both orders of (k, l).
  double eq6_max_violation = 0.0;
  CsygWitness witness;
  std::size_t checked_count = 0;  // (I, {k,l}) combinations with Pr(I in S) > 1e-12
  std::size_t skipped_count = 0;  // combinations whose conditioning set is negligible

  bool satisfied(double tol = kInequalityTolerance) const { return max_violation <= tol; }
};

// Exhaustive conditional Sen-Yates-Grundy check. Throws kNotApplicable for
// designs that are not fixed-size or for N > 20.
CsygReport check_csyg(const ExactDesignDistribution& dist);

// max over k != l of pi_kl - pi_k pi_l; -infinity when N < 2.
double check_pairwise_na(const ExactDesignDistribution& dist);

// |E_p(sum_{k in S} y_k / pi_k) - sum_k y_k|.
double unbiasedness_check(const ExactDesignDistribution& dist, std::span<const double> y,
                          std::span<const double> pi);

// Exact Pr(t_hat - t_y >= N eps) and Pr(|t_hat - t_y| >= N eps).
struct ExactTail {
  double one_sided = 0.0;
  double two_sided = 0.0;
};
ExactTail exact_tail(const ExactDesignDistribution& dist, std::span<const double> y_check,
                     double t_y, double eps);

}  // namespace splitsamp

#endif  // SPLITSAMP_ORACLE_H_
