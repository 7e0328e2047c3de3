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

#ifndef SPLITSAMP_REPRESENTATIONS_H_
#define SPLITSAMP_REPRESENTATIONS_H_

// Generic splitting representations of an arbitrary (small, enumerated)
// design: the draw-by-draw form in n steps and the sequential Doob form in N
// steps. Both are oracles for the theory, not practical samplers.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "splitsamp/distribution.h"
#include "splitsamp/process.h"
#include "splitsamp/splitting.h"

namespace splitsamp {

// Draws J_t from the units not yet drawn with probability
// pi_{k|J_1..J_{t-1}} / (n - t + 1).
class DrawByDrawProcess {
 public:
  struct State {
    std::uint32_t drawn = 0;  // bitmask of J_1..J_{t-1}
    std::size_t t = 0;        // number of draws so far
    friend auto operator<=>(const State&, const State&) = default;
  };
  using Move = std::size_t;

  // Throws kRepresentation unless dist is fixed-size with every pi_k > 0.
  explicit DrawByDrawProcess(const ExactDesignDistribution& dist);

  std::size_t population_size() const noexcept { return population_; }
  State initial() const { return {}; }
  bool finished(const State& s) const noexcept { return s.t == n_; }
  void transitions(const State& s, std::vector<Transition<Move>>& out) const;
  void apply(State& s, Move unit) const;
  std::vector<double> inclusion(const State& s) const;
  std::vector<std::size_t> selected(const State& s) const;

  // pi_{k | units in mask}.
  double conditional(std::uint32_t mask, std::size_t k) const;

 private:
  std::size_t population_;
  std::size_t n_;
  std::vector<double> contain_;
};

// Realizes dist once by the draw-by-draw method, recording the trace.
SplittingTrace draw_by_draw_from_distribution(const ExactDesignDistribution& dist,
                                              std::uint64_t seed);

// Distribution of the sample produced by the draw-by-draw method, obtained by
// exhausting its branch tree.
ExactDesignDistribution draw_by_draw_distribution(const ExactDesignDistribution& dist);

// Unit t is included with probability Pr(t in S | I_1..I_{t-1}).
class SequentialProcess {
 public:
  struct State {
    std::vector<std::uint8_t> prefix;  // I_1..I_t
    friend auto operator<=>(const State&, const State&) = default;
  };
  using Move = std::uint8_t;  // I_t

  explicit SequentialProcess(const ExactDesignDistribution& dist);

  std::size_t population_size() const noexcept { return population_; }
  State initial() const { return {}; }
  bool finished(const State& s) const noexcept { return s.prefix.size() == population_; }
  void transitions(const State& s, std::vector<Transition<Move>>& out) const;
  void apply(State& s, Move indicator) const { s.prefix.push_back(indicator); }
  // E[I_U | I_1..I_t].
  std::vector<double> inclusion(const State& s) const;
  std::vector<std::size_t> selected(const State& s) const;

  double prefix_probability(const std::vector<std::uint8_t>& prefix) const;

 private:
  const ExactDesignDistribution* dist_;
  std::size_t population_;
};

struct SplittingTreeNode {
  std::vector<std::uint8_t> prefix;  // I_1..I_{t-1}
  double path_probability = 0.0;
  double alpha1 = 0.0;               // Pr(t in S | prefix)
  std::vector<double> delta1;        // increment when I_t = 1
  std::vector<double> delta2;        // increment when I_t = 0
};

struct SplittingTree {
  std::vector<SplittingTreeNode> nodes;  // internal nodes with positive mass, by depth
  ExactDesignDistribution leaves;
};

SplittingTree sequential_splitting_from_distribution(const ExactDesignDistribution& dist);

}  // namespace splitsamp

#endif  // SPLITSAMP_REPRESENTATIONS_H_
