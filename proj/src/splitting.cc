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

#include "splitsamp/splitting.h"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "splitsamp/error.h"
#include "splitsamp/rng.h"

namespace splitsamp {

std::vector<std::vector<double>> SplittingTrace::path() const {
  std::vector<std::vector<double>> out;
  out.reserve(steps.size() + 1);
  out.push_back(pi0);
  for (const SplittingStep& step : steps) {
    std::vector<double> next = out.back();
    const auto& delta = step.realized_delta();
    for (std::size_t k = 0; k < next.size(); ++k) next[k] += delta[k];
    out.push_back(std::move(next));
  }
  return out;
}

std::size_t select_branch(std::span<const double> probabilities, double u) {
  double cumulative = 0.0;
  std::size_t last_positive = probabilities.size();
  for (std::size_t i = 0; i < probabilities.size(); ++i) {
    if (probabilities[i] <= 0.0) continue;
    last_positive = i;
    cumulative += probabilities[i];
    if (u < cumulative) return i;
  }
  if (last_positive == probabilities.size()) {
    throw Error(ErrorCode::kContractViolation, "no branch has positive probability");
  }
  // u fell into the rounding gap above the cumulative sum.
  return last_positive;
}

void validate_candidates(std::span<const Candidate> candidates,
                         std::span<const double> pi, std::size_t t) {
  const std::string where = "step " + std::to_string(t);
  if (candidates.empty()) {
    throw Error(ErrorCode::kContractViolation, where + ": empty candidate set");
  }
  double alpha_sum = 0.0;
  std::vector<double> drift(pi.size(), 0.0);
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const Candidate& c = candidates[i];
    if (c.delta.size() != pi.size()) {
      throw Error(ErrorCode::kContractViolation,
                  where + ": candidate " + std::to_string(i) + " has wrong dimension");
    }
    if (!(c.alpha >= 0.0)) {
      throw Error(ErrorCode::kContractViolation,
                  where + ": candidate " + std::to_string(i) + " has negative weight");
    }
    alpha_sum += c.alpha;
    for (std::size_t k = 0; k < pi.size(); ++k) {
      drift[k] += c.alpha * c.delta[k];
      const double moved = pi[k] + c.delta[k];
      if (moved < -kRangeTolerance || moved > 1.0 + kRangeTolerance) {
        throw Error(ErrorCode::kContractViolation,
                    where + ": candidate " + std::to_string(i) + " moves unit " +
                        std::to_string(k + 1) + " outside [0, 1]");
      }
    }
  }
  if (std::abs(alpha_sum - 1.0) > kMartingaleTolerance) {
    throw Error(ErrorCode::kContractViolation,
                where + ": branch weights sum to " + std::to_string(alpha_sum));
  }
  for (std::size_t k = 0; k < pi.size(); ++k) {
    if (std::abs(drift[k]) > kMartingaleTolerance) {
      throw Error(ErrorCode::kContractViolation,
                  where + ": increment has nonzero mean at unit " + std::to_string(k + 1));
    }
  }
}

namespace {

bool all_zero_one(std::span<const double> pi) {
  for (double p : pi) {
    if (std::abs(p) > kZeroOneTolerance && std::abs(p - 1.0) > kZeroOneTolerance) {
      return false;
    }
  }
  return true;
}

std::vector<double> rounded_zero_one(std::span<const double> pi) {
  std::vector<double> out(pi.size());
  for (std::size_t k = 0; k < pi.size(); ++k) out[k] = pi[k] > 0.5 ? 1.0 : 0.0;
  return out;
}

}  // namespace

SplittingTrace run_splitting(const CandidateGenerator& generator,
                             std::span<const double> pi0, std::uint64_t seed) {
  SplittingTrace trace;
  trace.pi0.assign(pi0.begin(), pi0.end());
  std::vector<double> pi = trace.pi0;
  double total = 0.0;
  for (double p : pi) total += p;
  const std::size_t population = pi.size();
  const std::size_t limit =
      population * static_cast<std::size_t>(std::max(0.0, std::round(total))) + population;

  Rng rng(seed);
  std::vector<double> alphas;
  for (std::size_t t = 1; !all_zero_one(pi); ++t) {
    if (t > limit) {
      throw Error(ErrorCode::kRunaway,
                  "splitting did not terminate within " + std::to_string(limit) + " steps");
    }
    SplittingStep step;
    step.t = t;
    step.candidates = generator(pi, t);
    validate_candidates(step.candidates, pi, t);
    alphas.clear();
    for (const Candidate& c : step.candidates) alphas.push_back(c.alpha);
    step.chosen_index = select_branch(alphas, rng.uniform());

    const auto& delta = step.realized_delta();
    double l1 = 0.0;
    for (std::size_t k = 0; k < population; ++k) {
      if (delta[k] != 0.0) {
        step.treated_units.push_back(k);
        l1 += std::abs(delta[k]);
      }
      pi[k] += delta[k];
    }
    trace.increment_l1.push_back(l1);
    trace.steps.push_back(std::move(step));
  }
  trace.final = rounded_zero_one(pi);
  return trace;
}

std::vector<double> ht_increments(const SplittingTrace& trace,
                                  std::span<const double> y_check) {
  if (y_check.size() != trace.pi0.size()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "expanded study vector does not match the trace dimension");
  }
  std::vector<double> xi;
  xi.reserve(trace.steps.size());
  for (const SplittingStep& step : trace.steps) {
    const auto& delta = step.realized_delta();
    double value = 0.0;
    for (std::size_t k : step.treated_units) value += y_check[k] * delta[k];
    xi.push_back(value);
  }
  return xi;
}

std::vector<double> ht_increments(const SplittingTrace& trace,
                                  const CheckedStudyVector& y_check) {
  return ht_increments(trace, y_check.y_check);
}

void write_trace_dump(const SplittingTrace& trace, std::ostream& out) {
  char buffer[96];
  for (std::size_t i = 0; i < trace.steps.size(); ++i) {
    const SplittingStep& step = trace.steps[i];
    std::snprintf(buffer, sizeof buffer, "%zu;%.17g;%.17g\n", step.t, step.chosen_alpha(),
                  trace.increment_l1[i]);
    out << buffer;
  }
}

std::vector<TraceDumpLine> read_trace_dump(std::istream& in) {
  std::vector<TraceDumpLine> lines;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream fields(line);
    TraceDumpLine parsed;
    char sep1 = 0, sep2 = 0;
    if (!(fields >> parsed.t >> sep1 >> parsed.alpha >> sep2 >> parsed.l1) || sep1 != ';' ||
        sep2 != ';') {
      throw Error(ErrorCode::kParse, "trace dump line " + std::to_string(line_no));
    }
    lines.push_back(parsed);
  }
  return lines;
}

}  // namespace splitsamp
