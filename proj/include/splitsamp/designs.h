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

#ifndef SPLITSAMP_DESIGNS_H_
#define SPLITSAMP_DESIGNS_H_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "splitsamp/population.h"
#include "splitsamp/process.h"
#include "splitsamp/sample.h"
#include "splitsamp/splitting.h"

namespace splitsamp {

// Simple random sampling without replacement, drawn unit by unit.
class SrsworProcess {
 public:
  struct State {
    std::vector<std::uint8_t> in_sample;
    std::size_t drawn = 0;
    friend auto operator<=>(const State&, const State&) = default;
  };
  using Move = std::size_t;  // unit drawn

  SrsworProcess(std::size_t population_size, int n);

  std::size_t population_size() const noexcept { return population_; }
  State initial() const;
  bool finished(const State& s) const noexcept { return s.drawn == n_; }
  void transitions(const State& s, std::vector<Transition<Move>>& out) const;
  void apply(State& s, Move unit) const;
  std::vector<double> inclusion(const State& s) const;
  std::vector<std::size_t> selected(const State& s) const;

 private:
  std::size_t population_;
  std::size_t n_;
};

// Chao's reservoir procedure. Units arrive in `order` (a permutation of
// 0..N-1); at arrival of the t-th unit the capped pi-ps probabilities of the
// first t arrivals decide acceptance and which reservoir member is evicted.
class ChaoProcess {
 public:
  struct State {
    std::size_t arrived = 0;                // t: number of stream positions seen
    std::vector<std::size_t> reservoir;     // stream positions, ascending
    friend auto operator<=>(const State&, const State&) = default;
  };
  // Stream position evicted when the arriving unit is accepted; kReject keeps
  // the reservoir.
  using Move = std::size_t;
  static constexpr Move kReject = static_cast<Move>(-1);

  ChaoProcess(std::span<const double> x, int n, std::vector<std::size_t> order = {});

  std::size_t population_size() const noexcept { return sizes_.size(); }
  State initial() const;
  bool finished(const State& s) const noexcept { return s.arrived == sizes_.size(); }
  void transitions(const State& s, std::vector<Transition<Move>>& out) const;
  void apply(State& s, Move evicted) const;
  std::vector<double> inclusion(const State& s) const;
  std::vector<std::size_t> selected(const State& s) const;

  // pi_k(t) for the unit at stream position `pos` < t.
  double prefix_probability(std::size_t t, std::size_t pos) const;

 private:
  std::vector<double> sizes_;        // in stream order
  std::vector<std::size_t> order_;   // stream position -> unit index
  std::size_t n_;
  std::vector<double> scale_;        // capping scale of each prefix length t
};

// Tille's elimination procedure: from the full population, remove one unit
// per level i = N-1, ..., n with probabilities 1 - pi_k(i) / pi_k(i+1).
class TilleProcess {
 public:
  struct State {
    std::vector<std::uint8_t> present;
    std::size_t level = 0;  // number of units still present
    friend auto operator<=>(const State&, const State&) = default;
  };
  using Move = std::size_t;  // unit eliminated

  TilleProcess(std::span<const double> x, int n);

  std::size_t population_size() const noexcept { return sizes_.size(); }
  State initial() const;
  bool finished(const State& s) const noexcept { return s.level == n_; }
  void transitions(const State& s, std::vector<Transition<Move>>& out) const;
  void apply(State& s, Move unit) const;
  std::vector<double> inclusion(const State& s) const;
  std::vector<std::size_t> selected(const State& s) const;

  // pi_k(i), the capped pi-ps probability of unit k for sample size i.
  double level_probability(std::size_t level, std::size_t k) const;

 private:
  std::vector<double> sizes_;
  std::size_t n_;
  std::vector<double> scale_;  // indexed by level, valid for n..N
};

// Generalized Midzuno method. Units with pi_k = 1 are selected up front; the
// rest are selected one per level i = N'-1, ..., N'-n' with probabilities
// 1 - pbar_k(i) / pbar_k(i+1), pbar being capped probabilities proportional
// to 1 - pi_k.
class MidzunoProcess {
 public:
  struct State {
    std::vector<std::uint8_t> in_sample;
    std::size_t chosen = 0;  // non-certainty units selected so far
    friend auto operator<=>(const State&, const State&) = default;
  };
  using Move = std::size_t;  // unit selected

  explicit MidzunoProcess(const InclusionProbabilities& pi);

  std::size_t population_size() const noexcept { return pi_.size(); }
  State initial() const;
  bool finished(const State& s) const noexcept { return s.chosen == draws_; }
  void transitions(const State& s, std::vector<Transition<Move>>& out) const;
  void apply(State& s, Move unit) const;
  std::vector<double> inclusion(const State& s) const;
  std::vector<std::size_t> selected(const State& s) const;

 private:
  double complementary(std::size_t level, std::size_t k) const;

  std::vector<double> pi_;
  std::vector<std::uint8_t> certain_;
  std::vector<double> weight_;  // 1 - pi_k, zero for certainty units
  std::size_t free_count_ = 0;  // N'
  std::size_t draws_ = 0;       // n'
  std::vector<double> scale_;   // indexed by level over the free units
};

// Brewer's draw-by-draw method, as a splitting process on pi(t).
class BrewerProcess {
 public:
  struct State {
    std::vector<double> pi;
    std::vector<std::uint8_t> drawn;
    std::size_t remaining = 0;  // n - t + 1 before step t
    friend auto operator<=>(const State&, const State&) = default;
  };
  using Move = std::size_t;  // unit J_t

  explicit BrewerProcess(const InclusionProbabilities& pi);

  std::size_t population_size() const noexcept { return pi_.size(); }
  State initial() const;
  bool finished(const State& s) const noexcept { return s.remaining == 0; }
  void transitions(const State& s, std::vector<Transition<Move>>& out) const;
  void apply(State& s, Move unit) const;
  std::vector<double> inclusion(const State& s) const { return s.pi; }
  std::vector<std::size_t> selected(const State& s) const;

 private:
  std::vector<double> pi_;
};

// Brewer's candidate set for the generic splitting driver: one branch per
// unit with pi strictly inside (0, 1), weights proportional to
// pi_k (m - pi_k) / (1 - pi_k) with m the sum of the fractional entries.
std::vector<Candidate> brewer_candidates(std::span<const double> pi, std::size_t t);

using AnyProcess =
    std::variant<SrsworProcess, ChaoProcess, TilleProcess, MidzunoProcess, BrewerProcess>;

// What a design needs to run. Chao and Tille work from sizes; Midzuno and
// Brewer from the target probabilities. from_probabilities() uses pi itself
// as the size variable, which pi-ps maps back to pi.
class DesignInputs {
 public:
  static DesignInputs from_sizes(std::vector<double> x, int n);
  static DesignInputs from_probabilities(InclusionProbabilities pi);

  const std::vector<double>& sizes() const noexcept { return sizes_; }
  const InclusionProbabilities& pi() const noexcept { return pi_; }
  int n() const noexcept { return pi_.n(); }
  std::size_t size() const noexcept { return sizes_.size(); }

  // Chao arrival order; empty means population order.
  const std::vector<std::size_t>& stream_order() const noexcept { return order_; }
  DesignInputs& set_stream_order(std::vector<std::size_t> order);

 private:
  DesignInputs(std::vector<double> x, InclusionProbabilities pi)
      : sizes_(std::move(x)), pi_(std::move(pi)) {}

  std::vector<double> sizes_;
  InclusionProbabilities pi_;
  std::vector<std::size_t> order_;
};

// Inclusion probabilities the design is built to reproduce: pi for the
// unequal-probability designs, n/N for SRSWOR.
std::vector<double> design_target_pi(DesignKind kind, const DesignInputs& inputs);

AnyProcess make_process(DesignKind kind, const DesignInputs& inputs);

// Seeded Fisher-Yates permutation of 0..N-1.
std::vector<std::size_t> shuffled_order(std::size_t population_size, std::uint64_t seed);

struct DesignRun {
  Sample sample;
  std::optional<SplittingTrace> trace;
};

DesignRun sample_srswor(std::size_t population_size, int n, std::uint64_t seed,
                        TraceMode mode = TraceMode::kOff);
DesignRun sample_chao(std::span<const double> x, int n, std::uint64_t seed,
                      std::vector<std::size_t> stream_order = {},
                      TraceMode mode = TraceMode::kOff);
DesignRun sample_tille_elimination(std::span<const double> x, int n, std::uint64_t seed,
                                   TraceMode mode = TraceMode::kOff);
DesignRun sample_midzuno(const InclusionProbabilities& pi, std::uint64_t seed,
                         TraceMode mode = TraceMode::kOff);
// With tracing on, runs the generic splitting driver on brewer_candidates;
// both paths consume the same uniforms and select the same sample.
DesignRun sample_brewer(const InclusionProbabilities& pi, std::uint64_t seed,
                        TraceMode mode = TraceMode::kOff);

DesignRun sample_design(DesignKind kind, const DesignInputs& inputs, std::uint64_t seed,
                        TraceMode mode = TraceMode::kOff);

// Draws one sample from an already built process (no per-call setup).
Sample sample_process(const AnyProcess& process, std::uint64_t seed);

}  // namespace splitsamp

#endif  // SPLITSAMP_DESIGNS_H_
