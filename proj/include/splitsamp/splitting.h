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

#ifndef SPLITSAMP_SPLITTING_H_
#define SPLITSAMP_SPLITTING_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

#include "splitsamp/population.h"

namespace splitsamp {

inline constexpr double kMartingaleTolerance = 1e-10;
inline constexpr double kRangeTolerance = 1e-12;
inline constexpr double kZeroOneTolerance = 1e-9;

// One branch of a splitting step: move pi(t-1) by `delta` with probability
// `alpha`. `delta` is dense over the whole population.
struct Candidate {
  double alpha = 0.0;
  std::vector<double> delta;
};

struct SplittingStep {
  std::size_t t = 0;  // 1-based
  std::vector<Candidate> candidates;
  std::size_t chosen_index = 0;
  std::vector<std::size_t> treated_units;  // U(t): nonzero entries of the realized delta

  const std::vector<double>& realized_delta() const {
    return candidates[chosen_index].delta;
  }
  double chosen_alpha() const { return candidates[chosen_index].alpha; }
};

struct SplittingTrace {
  std::vector<double> pi0;
  std::vector<SplittingStep> steps;
  std::vector<double> final;          // I_U, entries exactly 0 or 1
  std::vector<double> increment_l1;   // sum_k |delta_k(t)| of the realized branch

  // pi(t) for t = 0..T, rebuilt from pi0 and the realized increments.
  std::vector<std::vector<double>> path() const;
};

enum class TraceMode { kOff, kOn };

// Proposes the candidate set for step t given the current vector pi(t-1).
using CandidateGenerator =
    std::function<std::vector<Candidate>(std::span<const double> pi, std::size_t t)>;

// Index of the branch hit by the uniform `u` in [0, 1) under inverse-CDF
// over `probabilities` in order. Zero-probability branches are never chosen.
std::size_t select_branch(std::span<const double> probabilities, double u);

// Throws kContractViolation unless the candidates satisfy sum(alpha) = 1,
// sum(alpha * delta) = 0 and 0 <= pi + delta <= 1.
void validate_candidates(std::span<const Candidate> candidates,
                         std::span<const double> pi, std::size_t t);

// Generic splitting driver: repeats generate / validate / draw until every
// component of pi is 0 or 1 (within 1e-9, then rounded). One uniform is
// consumed per step. Throws kRunaway after N*n + N steps.
SplittingTrace run_splitting(const CandidateGenerator& generator,
                             std::span<const double> pi0, std::uint64_t seed);

// Martingale increments xi(t) = sum over U(t) of y_check_k * delta_k(t).
std::vector<double> ht_increments(const SplittingTrace& trace,
                                  std::span<const double> y_check);
std::vector<double> ht_increments(const SplittingTrace& trace,
                                  const CheckedStudyVector& y_check);

// Verification dump, one line per step: "t;alpha_chosen;l1_increment".
void write_trace_dump(const SplittingTrace& trace, std::ostream& out);

struct TraceDumpLine {
  std::size_t t = 0;
  double alpha = 0.0;
  double l1 = 0.0;
};
std::vector<TraceDumpLine> read_trace_dump(std::istream& in);

}  // namespace splitsamp

#endif  // SPLITSAMP_SPLITTING_H_
