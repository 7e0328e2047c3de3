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

#include "splitsamp/representations.h"

#include <map>
#include <string>

#include "splitsamp/error.h"
#include "splitsamp/oracle.h"
#include "splitsamp/rng.h"

namespace splitsamp {

DrawByDrawProcess::DrawByDrawProcess(const ExactDesignDistribution& dist)
    : population_(dist.population_size()), n_(0) {
  if (!dist.fixed_size()) {
    throw Error(ErrorCode::kRepresentation, "draw-by-draw needs a fixed-size design");
  }
  if (population_ > 20) {
    throw Error(ErrorCode::kRepresentation, "draw-by-draw is limited to N <= 20");
  }
  n_ = *dist.fixed_size();
  contain_ = containment_probabilities(dist);
  for (std::size_t k = 0; k < population_; ++k) {
    if (!(contain_[std::size_t{1} << k] > 0.0)) {
      throw Error(ErrorCode::kRepresentation,
                  "unit " + std::to_string(k + 1) + " has zero inclusion probability");
    }
  }
}

double DrawByDrawProcess::conditional(std::uint32_t mask, std::size_t k) const {
  return contain_[mask | (std::uint32_t{1} << k)] / contain_[mask];
}

void DrawByDrawProcess::transitions(const State& s, std::vector<Transition<Move>>& out) const {
  const double remaining = static_cast<double>(n_ - s.t);
  for (std::size_t k = 0; k < population_; ++k) {
    if (s.drawn & (std::uint32_t{1} << k)) continue;
    out.push_back({conditional(s.drawn, k) / remaining, k});
  }
  finalize_step(out, "draw-by-draw", "draw probabilities");
}

void DrawByDrawProcess::apply(State& s, Move unit) const {
  s.drawn |= std::uint32_t{1} << unit;
  ++s.t;
}

std::vector<double> DrawByDrawProcess::inclusion(const State& s) const {
  std::vector<double> out(population_, 1.0);
  for (std::size_t k = 0; k < population_; ++k) {
    if (!(s.drawn & (std::uint32_t{1} << k))) out[k] = conditional(s.drawn, k);
  }
  return out;
}

std::vector<std::size_t> DrawByDrawProcess::selected(const State& s) const {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < population_; ++k) {
    if (s.drawn & (std::uint32_t{1} << k)) out.push_back(k);
  }
  return out;
}

SplittingTrace draw_by_draw_from_distribution(const ExactDesignDistribution& dist,
                                              std::uint64_t seed) {
  const DrawByDrawProcess process(dist);
  Rng rng(seed);
  return traced_walk(process, rng).second;
}

ExactDesignDistribution draw_by_draw_distribution(const ExactDesignDistribution& dist) {
  const DrawByDrawProcess process(dist);
  const EnumeratedSupport tree = enumerate_process(process, kDefaultMaxBranches);
  return ExactDesignDistribution(tree.support, dist.population_size());
}

// ---------------------------------------------------------------------------

SequentialProcess::SequentialProcess(const ExactDesignDistribution& dist)
    : dist_(&dist), population_(dist.population_size()) {}

namespace {

bool matches(const std::vector<std::size_t>& sample, const std::vector<std::uint8_t>& prefix) {
  std::size_t i = 0;
  for (std::size_t k = 0; k < prefix.size(); ++k) {
    const bool in = i < sample.size() && sample[i] == k;
    if (in) ++i;
    if (in != (prefix[k] != 0)) return false;
  }
  return true;
}

}  // namespace

double SequentialProcess::prefix_probability(const std::vector<std::uint8_t>& prefix) const {
  double mass = 0.0;
  for (const auto& [sample, p] : dist_->support()) {
    if (matches(sample, prefix)) mass += p;
  }
  return mass;
}

std::vector<double> SequentialProcess::inclusion(const State& s) const {
  std::vector<double> out(population_, 0.0);
  double mass = 0.0;
  for (const auto& [sample, p] : dist_->support()) {
    if (!matches(sample, s.prefix)) continue;
    mass += p;
    for (std::size_t k : sample) out[k] += p;
  }
  for (double& v : out) v /= mass;
  for (std::size_t k = 0; k < s.prefix.size(); ++k) out[k] = s.prefix[k];
  return out;
}

void SequentialProcess::transitions(const State& s, std::vector<Transition<Move>>& out) const {
  const double in = inclusion(s)[s.prefix.size()];
  out.push_back({in, 1});
  out.push_back({1.0 - in, 0});
  finalize_step(out, "sequential", "branch probabilities");
}

std::vector<std::size_t> SequentialProcess::selected(const State& s) const {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < s.prefix.size(); ++k) {
    if (s.prefix[k]) out.push_back(k);
  }
  return out;
}

SplittingTree sequential_splitting_from_distribution(const ExactDesignDistribution& dist) {
  const SequentialProcess process(dist);
  std::vector<SplittingTreeNode> nodes;
  std::map<std::vector<std::size_t>, double> leaves;
  std::vector<std::pair<SequentialProcess::State, double>> frontier{{process.initial(), 1.0}};
  while (!frontier.empty()) {
    std::vector<std::pair<SequentialProcess::State, double>> next;
    for (const auto& [state, mass] : frontier) {
      if (process.finished(state)) {
        leaves[process.selected(state)] += mass;
        continue;
      }
      const std::vector<double> current = process.inclusion(state);
      SplittingTreeNode node;
      node.prefix = state.prefix;
      node.path_probability = mass;
      node.alpha1 = current[state.prefix.size()];
      node.delta1.assign(current.size(), 0.0);
      node.delta2.assign(current.size(), 0.0);
      for (std::uint8_t bit : {std::uint8_t{1}, std::uint8_t{0}}) {
        const double branch = bit ? node.alpha1 : 1.0 - node.alpha1;
        auto& delta = bit ? node.delta1 : node.delta2;
        SequentialProcess::State child = state;
        process.apply(child, bit);
        if (branch > 0.0) {
          const std::vector<double> after = process.inclusion(child);
          for (std::size_t l = state.prefix.size(); l < current.size(); ++l) {
            delta[l] = after[l] - current[l];
          }
          next.emplace_back(std::move(child), mass * branch);
        } else {
          delta[state.prefix.size()] = bit ? 1.0 - node.alpha1 : -node.alpha1;
        }
      }
      nodes.push_back(std::move(node));
    }
    frontier = std::move(next);
  }
  return SplittingTree{std::move(nodes),
                       ExactDesignDistribution(std::move(leaves), dist.population_size())};
}

}  // namespace splitsamp
