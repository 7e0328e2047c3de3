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

#ifndef SPLITSAMP_PROCESS_H_
#define SPLITSAMP_PROCESS_H_

// A design process is a finite Markov chain whose every step is one
// splitting step: the process knows its current conditional inclusion
// vector, so any run doubles as a martingale trace. The same process object
// drives sampling (walk), trace recording (traced_walk) and exact
// enumeration (enumerate_process).

#include <cmath>
#include <concepts>
#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "splitsamp/error.h"
#include "splitsamp/splitting.h"

namespace splitsamp {

inline constexpr double kStepSumTolerance = 1e-9;
inline constexpr double kNegativeClampTolerance = 1e-12;
inline constexpr double kPruneThreshold = 1e-15;

template <class Move>
struct Transition {
  double probability = 0.0;
  Move move{};
};

template <class P>
concept DesignProcess =
    requires(const P& p, typename P::State& s, const typename P::State& cs,
             std::vector<Transition<typename P::Move>>& out, const typename P::Move& m) {
      { p.population_size() } -> std::convertible_to<std::size_t>;
      { p.initial() } -> std::same_as<typename P::State>;
      { p.finished(cs) } -> std::convertible_to<bool>;
      p.transitions(cs, out);
      p.apply(s, m);
      { p.inclusion(cs) } -> std::same_as<std::vector<double>>;
      { p.selected(cs) } -> std::same_as<std::vector<std::size_t>>;
    };

// Clamps rounding negatives, checks that the step's probabilities sum to 1
// within 1e-9, renormalizes and drops zero-probability branches.
template <class Move>
void finalize_step(std::vector<Transition<Move>>& step, std::string_view design,
                   std::string_view what) {
  double sum = 0.0;
  for (auto& tr : step) {
    if (tr.probability < 0.0) {
      if (tr.probability < -kNegativeClampTolerance) {
        throw Error(ErrorCode::kInternalConsistency,
                    std::string(design) + ": negative " + std::string(what) + " " +
                        std::to_string(tr.probability));
      }
      tr.probability = 0.0;
    }
    sum += tr.probability;
  }
  if (!(std::abs(sum - 1.0) <= kStepSumTolerance)) {
    throw Error(ErrorCode::kInternalConsistency,
                std::string(design) + ": " + std::string(what) + " sum to " +
                    std::to_string(sum) + " instead of 1");
  }
  std::erase_if(step, [](const auto& tr) { return tr.probability == 0.0; });
  for (auto& tr : step) tr.probability /= sum;
}

template <class Move>
std::size_t select_transition(const std::vector<Transition<Move>>& step, double u) {
  double cumulative = 0.0;
  for (std::size_t i = 0; i < step.size(); ++i) {
    cumulative += step[i].probability;
    if (u < cumulative) return i;
  }
  return step.size() - 1;
}

namespace detail {

template <class P>
void check_step_budget(const P& p, std::size_t step) {
  if (step > p.population_size() + 1) {
    throw Error(ErrorCode::kRunaway, "design process exceeded N + 1 steps");
  }
}

inline std::vector<double> snap_zero_one(std::vector<double> v) {
  for (double& x : v) x = x > 0.5 ? 1.0 : 0.0;
  return v;
}

}  // namespace detail

// Runs the process to completion with one uniform draw per step.
template <DesignProcess P, class Uniform>
typename P::State walk(const P& process, Uniform&& uniform) {
  typename P::State state = process.initial();
  std::vector<Transition<typename P::Move>> step;
  for (std::size_t t = 1; !process.finished(state); ++t) {
    detail::check_step_budget(process, t);
    step.clear();
    process.transitions(state, step);
    process.apply(state, step[select_transition(step, uniform())].move);
  }
  return state;
}

// Same randomness as walk(), additionally recording every step as a
// splitting step whose candidate increments are differences of conditional
// inclusion vectors.
template <DesignProcess P, class Uniform>
std::pair<typename P::State, SplittingTrace> traced_walk(const P& process,
                                                         Uniform&& uniform) {
  using State = typename P::State;
  State state = process.initial();
  SplittingTrace trace;
  trace.pi0 = process.inclusion(state);
  std::vector<Transition<typename P::Move>> step;
  std::vector<double> current = trace.pi0;
  for (std::size_t t = 1; !process.finished(state); ++t) {
    detail::check_step_budget(process, t);
    step.clear();
    process.transitions(state, step);
    SplittingStep record;
    record.t = t;
    std::vector<State> successors;
    successors.reserve(step.size());
    for (const auto& tr : step) {
      State next = state;
      process.apply(next, tr.move);
      std::vector<double> delta = process.inclusion(next);
      for (std::size_t k = 0; k < delta.size(); ++k) delta[k] -= current[k];
      record.candidates.push_back({tr.probability, std::move(delta)});
      successors.push_back(std::move(next));
    }
    record.chosen_index = select_transition(step, uniform());
    const auto& delta = record.realized_delta();
    double l1 = 0.0;
    for (std::size_t k = 0; k < delta.size(); ++k) {
      if (delta[k] != 0.0) {
        record.treated_units.push_back(k);
        l1 += std::abs(delta[k]);
      }
      current[k] += delta[k];
    }
    state = std::move(successors[record.chosen_index]);
    trace.increment_l1.push_back(l1);
    trace.steps.push_back(std::move(record));
  }
  trace.final = detail::snap_zero_one(process.inclusion(state));
  return {std::move(state), std::move(trace)};
}

struct EnumeratedSupport {
  std::map<std::vector<std::size_t>, double> support;  // sorted sample -> p(s)
  double pruned_mass = 0.0;
  std::size_t expansions = 0;
};

// Exhausts the process's probability tree level by level, merging paths
// that reach identical states. Branches below 1e-15 are pruned and their
// mass is reported. Throws kEnumerationTooLarge past `max_branches`
// expansions.
template <DesignProcess P>
  requires std::totally_ordered<typename P::State>
EnumeratedSupport enumerate_process(const P& process, std::size_t max_branches) {
  using State = typename P::State;
  EnumeratedSupport out;
  std::map<State, double> frontier;
  frontier.emplace(process.initial(), 1.0);
  std::vector<Transition<typename P::Move>> step;
  std::size_t depth = 0;
  while (!frontier.empty()) {
    detail::check_step_budget(process, ++depth);
    std::map<State, double> next;
    for (const auto& [state, mass] : frontier) {
      if (process.finished(state)) {
        out.support[process.selected(state)] += mass;
        continue;
      }
      step.clear();
      process.transitions(state, step);
      for (const auto& tr : step) {
        const double q = mass * tr.probability;
        if (q < kPruneThreshold) {
          out.pruned_mass += q;
          continue;
        }
        if (++out.expansions > max_branches) {
          throw Error(ErrorCode::kEnumerationTooLarge,
                      "more than " + std::to_string(max_branches) + " branches");
        }
        State child = state;
        process.apply(child, tr.move);
        next[std::move(child)] += q;
      }
    }
    frontier = std::move(next);
  }
  return out;
}

}  // namespace splitsamp

#endif  // SPLITSAMP_PROCESS_H_
