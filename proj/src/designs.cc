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

#include "splitsamp/designs.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "splitsamp/error.h"
#include "splitsamp/rng.h"

namespace splitsamp {

namespace {

void check_size(std::size_t population_size, int n) {
  if (n < 1 || static_cast<std::size_t>(n) > population_size) {
    throw Error(ErrorCode::kInvalidSize, "sample size " + std::to_string(n) +
                                             " is not in [1, N=" +
                                             std::to_string(population_size) + "]");
  }
}

void check_sizes(std::span<const double> x) {
  if (x.empty()) throw Error(ErrorCode::kInvalidInput, "empty size vector");
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (!(x[k] > 0.0) || !std::isfinite(x[k])) {
      throw Error(ErrorCode::kInvalidInput,
                  "size of unit " + std::to_string(k + 1) + " is not positive");
    }
  }
}

void check_permutation(const std::vector<std::size_t>& order, std::size_t population_size) {
  if (order.size() != population_size) {
    throw Error(ErrorCode::kInvalidInput, "stream order has wrong length");
  }
  std::vector<char> seen(population_size, 0);
  for (std::size_t unit : order) {
    if (unit >= population_size || seen[unit]) {
      throw Error(ErrorCode::kInvalidInput, "stream order is not a permutation");
    }
    seen[unit] = 1;
  }
}

bool is_certain(double p) { return p >= 1.0 - kOneTolerance; }

}  // namespace

// ---------------------------------------------------------------------------
// SRSWOR

SrsworProcess::SrsworProcess(std::size_t population_size, int n)
    : population_(population_size), n_(static_cast<std::size_t>(std::max(n, 0))) {
  check_size(population_size, n);
}

SrsworProcess::State SrsworProcess::initial() const {
  return State{std::vector<std::uint8_t>(population_, 0), 0};
}

void SrsworProcess::transitions(const State& s, std::vector<Transition<Move>>& out) const {
  const double p = 1.0 / static_cast<double>(population_ - s.drawn);
  for (std::size_t k = 0; k < population_; ++k) {
    if (!s.in_sample[k]) out.push_back({p, k});
  }
}

void SrsworProcess::apply(State& s, Move unit) const {
  s.in_sample[unit] = 1;
  ++s.drawn;
}

std::vector<double> SrsworProcess::inclusion(const State& s) const {
  const double rest = s.drawn == population_
                          ? 0.0
                          : static_cast<double>(n_ - s.drawn) /
                                static_cast<double>(population_ - s.drawn);
  std::vector<double> out(population_);
  for (std::size_t k = 0; k < population_; ++k) out[k] = s.in_sample[k] ? 1.0 : rest;
  return out;
}

std::vector<std::size_t> SrsworProcess::selected(const State& s) const {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < population_; ++k) {
    if (s.in_sample[k]) out.push_back(k);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Chao

ChaoProcess::ChaoProcess(std::span<const double> x, int n, std::vector<std::size_t> order)
    : order_(std::move(order)), n_(static_cast<std::size_t>(std::max(n, 0))) {
  check_sizes(x);
  check_size(x.size(), n);
  if (order_.empty()) {
    order_.resize(x.size());
    std::iota(order_.begin(), order_.end(), std::size_t{0});
  }
  check_permutation(order_, x.size());
  sizes_.reserve(x.size());
  for (std::size_t unit : order_) sizes_.push_back(x[unit]);
  scale_.assign(x.size() + 1, 0.0);
  for (std::size_t t = n_; t <= sizes_.size(); ++t) {
    scale_[t] = capped_scale(std::span<const double>(sizes_).first(t),
                             static_cast<double>(n_));
  }
}

double ChaoProcess::prefix_probability(std::size_t t, std::size_t pos) const {
  return capped_value(sizes_[pos], scale_[t]);
}

ChaoProcess::State ChaoProcess::initial() const {
  State s;
  s.arrived = n_;
  s.reservoir.resize(n_);
  std::iota(s.reservoir.begin(), s.reservoir.end(), std::size_t{0});
  return s;
}

void ChaoProcess::transitions(const State& s, std::vector<Transition<Move>>& out) const {
  const std::size_t t = s.arrived + 1;
  const std::size_t arriving = s.arrived;
  const double accept = prefix_probability(t, arriving);
  for (std::size_t pos : s.reservoir) {
    const double ratio = prefix_probability(t, pos) / prefix_probability(t - 1, pos);
    out.push_back({(1.0 - ratio) / accept, pos});
  }
  finalize_step(out, "chao", "eviction probabilities");
  for (auto& tr : out) tr.probability *= accept;
  if (accept < 1.0) out.push_back({1.0 - accept, kReject});
}

void ChaoProcess::apply(State& s, Move evicted) const {
  if (evicted != kReject) {
    const auto it = std::lower_bound(s.reservoir.begin(), s.reservoir.end(), evicted);
    s.reservoir.erase(it);
    s.reservoir.push_back(s.arrived);
  }
  ++s.arrived;
}

std::vector<double> ChaoProcess::inclusion(const State& s) const {
  const std::size_t population = sizes_.size();
  std::vector<double> out(population, 0.0);
  for (std::size_t pos = 0; pos < population; ++pos) {
    const double target = prefix_probability(population, pos);
    double value = target;
    if (pos < s.arrived) {
      value = std::binary_search(s.reservoir.begin(), s.reservoir.end(), pos)
                  ? target / prefix_probability(s.arrived, pos)
                  : 0.0;
    }
    out[order_[pos]] = value;
  }
  return out;
}

std::vector<std::size_t> ChaoProcess::selected(const State& s) const {
  std::vector<std::size_t> out;
  out.reserve(s.reservoir.size());
  for (std::size_t pos : s.reservoir) out.push_back(order_[pos]);
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// Tille elimination

TilleProcess::TilleProcess(std::span<const double> x, int n)
    : sizes_(x.begin(), x.end()), n_(static_cast<std::size_t>(std::max(n, 0))) {
  check_sizes(x);
  check_size(x.size(), n);
  scale_.assign(sizes_.size() + 1, 0.0);
  for (std::size_t level = n_; level <= sizes_.size(); ++level) {
    scale_[level] = capped_scale(sizes_, static_cast<double>(level));
  }
}

double TilleProcess::level_probability(std::size_t level, std::size_t k) const {
  return capped_value(sizes_[k], scale_[level]);
}

TilleProcess::State TilleProcess::initial() const {
  return State{std::vector<std::uint8_t>(sizes_.size(), 1), sizes_.size()};
}

void TilleProcess::transitions(const State& s, std::vector<Transition<Move>>& out) const {
  const std::size_t level = s.level;
  for (std::size_t k = 0; k < sizes_.size(); ++k) {
    if (!s.present[k]) continue;
    out.push_back({1.0 - level_probability(level - 1, k) / level_probability(level, k), k});
  }
  finalize_step(out, "tille", "elimination probabilities");
}

void TilleProcess::apply(State& s, Move unit) const {
  s.present[unit] = 0;
  --s.level;
}

std::vector<double> TilleProcess::inclusion(const State& s) const {
  std::vector<double> out(sizes_.size(), 0.0);
  for (std::size_t k = 0; k < sizes_.size(); ++k) {
    if (s.present[k]) out[k] = level_probability(n_, k) / level_probability(s.level, k);
  }
  return out;
}

std::vector<std::size_t> TilleProcess::selected(const State& s) const {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < sizes_.size(); ++k) {
    if (s.present[k]) out.push_back(k);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Generalized Midzuno

MidzunoProcess::MidzunoProcess(const InclusionProbabilities& pi)
    : pi_(pi.values().begin(), pi.values().end()) {
  const std::size_t population = pi_.size();
  certain_.assign(population, 0);
  weight_.assign(population, 0.0);
  std::size_t certain_count = 0;
  for (std::size_t k = 0; k < population; ++k) {
    if (is_certain(pi_[k])) {
      certain_[k] = 1;
      ++certain_count;
    } else {
      weight_[k] = 1.0 - pi_[k];
      ++free_count_;
    }
  }
  draws_ = static_cast<std::size_t>(pi.n()) - certain_count;
  scale_.assign(free_count_ + 1, 0.0);
  for (std::size_t level = free_count_ - draws_; level <= free_count_; ++level) {
    scale_[level] = capped_scale(weight_, static_cast<double>(level));
  }
}

double MidzunoProcess::complementary(std::size_t level, std::size_t k) const {
  return capped_value(weight_[k], scale_[level]);
}

MidzunoProcess::State MidzunoProcess::initial() const { return State{certain_, 0}; }

void MidzunoProcess::transitions(const State& s, std::vector<Transition<Move>>& out) const {
  const std::size_t level = free_count_ - s.chosen;
  for (std::size_t k = 0; k < pi_.size(); ++k) {
    if (s.in_sample[k]) continue;
    out.push_back({1.0 - complementary(level - 1, k) / complementary(level, k), k});
  }
  finalize_step(out, "midzuno", "selection probabilities");
}

void MidzunoProcess::apply(State& s, Move unit) const {
  s.in_sample[unit] = 1;
  ++s.chosen;
}

std::vector<double> MidzunoProcess::inclusion(const State& s) const {
  const std::size_t level = free_count_ - s.chosen;
  const std::size_t last = free_count_ - draws_;
  std::vector<double> out(pi_.size(), 1.0);
  for (std::size_t k = 0; k < pi_.size(); ++k) {
    if (s.in_sample[k]) continue;
    out[k] = 1.0 - complementary(last, k) / complementary(level, k);
  }
  return out;
}

std::vector<std::size_t> MidzunoProcess::selected(const State& s) const {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < pi_.size(); ++k) {
    if (s.in_sample[k]) out.push_back(k);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Brewer

namespace {

double brewer_weight(double p, double remaining) {
  return p * (remaining - p) / (1.0 - p);
}

}  // namespace

BrewerProcess::BrewerProcess(const InclusionProbabilities& pi)
    : pi_(pi.values().begin(), pi.values().end()) {}

BrewerProcess::State BrewerProcess::initial() const {
  State s;
  s.pi = pi_;
  s.drawn.assign(pi_.size(), 0);
  std::size_t certain = 0;
  for (std::size_t k = 0; k < pi_.size(); ++k) {
    if (is_certain(pi_[k])) {
      s.pi[k] = 1.0;
      s.drawn[k] = 1;
      ++certain;
    }
  }
  double total = 0.0;
  for (double p : pi_) total += p;
  s.remaining = static_cast<std::size_t>(std::llround(total)) - certain;
  return s;
}

void BrewerProcess::transitions(const State& s, std::vector<Transition<Move>>& out) const {
  const double m = static_cast<double>(s.remaining);
  double total = 0.0;
  for (std::size_t k = 0; k < s.pi.size(); ++k) {
    if (s.drawn[k]) continue;
    const double w = brewer_weight(s.pi[k], m);
    total += w;
    out.push_back({w, k});
  }
  if (!(total > 0.0)) {
    throw Error(ErrorCode::kInternalConsistency, "brewer: no unit has positive weight");
  }
  for (auto& tr : out) tr.probability /= total;
}

void BrewerProcess::apply(State& s, Move unit) const {
  const double m = static_cast<double>(s.remaining);
  const double chosen = s.pi[unit];
  for (std::size_t k = 0; k < s.pi.size(); ++k) {
    if (s.drawn[k] || k == unit) continue;
    s.pi[k] = (m - 1.0) * s.pi[k] / (m - chosen);
    if (s.pi[k] > 1.0 + kZeroOneTolerance) {
      throw Error(ErrorCode::kInternalConsistency,
                  "brewer: intermediate probability of unit " + std::to_string(k + 1) +
                      " exceeds 1");
    }
  }
  s.pi[unit] = 1.0;
  s.drawn[unit] = 1;
  --s.remaining;
}

std::vector<std::size_t> BrewerProcess::selected(const State& s) const {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < s.pi.size(); ++k) {
    if (s.drawn[k]) out.push_back(k);
  }
  return out;
}

std::vector<Candidate> brewer_candidates(std::span<const double> pi, std::size_t /*t*/) {
  std::vector<std::size_t> fractional;
  double sum = 0.0;
  for (std::size_t k = 0; k < pi.size(); ++k) {
    if (pi[k] > kZeroOneTolerance && pi[k] < 1.0 - kZeroOneTolerance) {
      fractional.push_back(k);
      sum += pi[k];
    }
  }
  const double m = std::round(sum);
  std::vector<Candidate> out;
  out.reserve(fractional.size());
  double total = 0.0;
  for (std::size_t j : fractional) {
    Candidate c;
    c.alpha = brewer_weight(pi[j], m);
    total += c.alpha;
    c.delta.assign(pi.size(), 0.0);
    const double gap = 1.0 - pi[j];
    for (std::size_t k : fractional) {
      c.delta[k] = k == j ? gap : -pi[k] * gap / (m - pi[j]);
    }
    out.push_back(std::move(c));
  }
  for (Candidate& c : out) c.alpha /= total;
  return out;
}

// ---------------------------------------------------------------------------
// Inputs and entry points

DesignInputs DesignInputs::from_sizes(std::vector<double> x, int n) {
  InclusionProbabilities pi = compute_pips(x, n);
  return DesignInputs(std::move(x), std::move(pi));
}

DesignInputs DesignInputs::from_probabilities(InclusionProbabilities pi) {
  std::vector<double> x(pi.values().begin(), pi.values().end());
  return DesignInputs(std::move(x), std::move(pi));
}

DesignInputs& DesignInputs::set_stream_order(std::vector<std::size_t> order) {
  if (!order.empty()) check_permutation(order, sizes_.size());
  order_ = std::move(order);
  return *this;
}

std::vector<double> design_target_pi(DesignKind kind, const DesignInputs& inputs) {
  if (kind == DesignKind::kSrswor) {
    return std::vector<double>(inputs.size(), static_cast<double>(inputs.n()) /
                                                  static_cast<double>(inputs.size()));
  }
  return {inputs.pi().values().begin(), inputs.pi().values().end()};
}

AnyProcess make_process(DesignKind kind, const DesignInputs& inputs) {
  switch (kind) {
    case DesignKind::kSrswor:
      return SrsworProcess(inputs.size(), inputs.n());
    case DesignKind::kChao:
      return ChaoProcess(inputs.sizes(), inputs.n(), inputs.stream_order());
    case DesignKind::kTilleElimination:
      return TilleProcess(inputs.sizes(), inputs.n());
    case DesignKind::kGeneralizedMidzuno:
      return MidzunoProcess(inputs.pi());
    case DesignKind::kBrewer:
      return BrewerProcess(inputs.pi());
  }
  throw Error(ErrorCode::kInvalidInput, "unknown design");
}

std::vector<std::size_t> shuffled_order(std::size_t population_size, std::uint64_t seed) {
  std::vector<std::size_t> order(population_size);
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng rng(seed);
  for (std::size_t i = population_size; i > 1; --i) {
    const auto j = static_cast<std::size_t>(rng.uniform() * static_cast<double>(i));
    std::swap(order[i - 1], order[std::min(j, i - 1)]);
  }
  return order;
}

namespace {

template <DesignProcess P>
DesignRun run_process(const P& process, std::uint64_t seed, TraceMode mode) {
  Rng rng(seed);
  const std::size_t population = process.population_size();
  if (mode == TraceMode::kOn) {
    auto [state, trace] = traced_walk(process, rng);
    return DesignRun{Sample(process.selected(state), population), std::move(trace)};
  }
  const auto state = walk(process, rng);
  return DesignRun{Sample(process.selected(state), population), std::nullopt};
}

}  // namespace

DesignRun sample_srswor(std::size_t population_size, int n, std::uint64_t seed,
                        TraceMode mode) {
  return run_process(SrsworProcess(population_size, n), seed, mode);
}

DesignRun sample_chao(std::span<const double> x, int n, std::uint64_t seed,
                      std::vector<std::size_t> stream_order, TraceMode mode) {
  return run_process(ChaoProcess(x, n, std::move(stream_order)), seed, mode);
}

DesignRun sample_tille_elimination(std::span<const double> x, int n, std::uint64_t seed,
                                   TraceMode mode) {
  return run_process(TilleProcess(x, n), seed, mode);
}

DesignRun sample_midzuno(const InclusionProbabilities& pi, std::uint64_t seed,
                         TraceMode mode) {
  return run_process(MidzunoProcess(pi), seed, mode);
}

DesignRun sample_brewer(const InclusionProbabilities& pi, std::uint64_t seed,
                        TraceMode mode) {
  if (mode == TraceMode::kOff) return run_process(BrewerProcess(pi), seed, mode);
  SplittingTrace trace = run_splitting(brewer_candidates, pi.values(), seed);
  std::vector<std::size_t> chosen;
  for (std::size_t k = 0; k < trace.final.size(); ++k) {
    if (trace.final[k] == 1.0) chosen.push_back(k);
  }
  return DesignRun{Sample(std::move(chosen), pi.size()), std::move(trace)};
}

DesignRun sample_design(DesignKind kind, const DesignInputs& inputs, std::uint64_t seed,
                        TraceMode mode) {
  if (kind == DesignKind::kBrewer) return sample_brewer(inputs.pi(), seed, mode);
  return std::visit([&](const auto& process) { return run_process(process, seed, mode); },
                    make_process(kind, inputs));
}

Sample sample_process(const AnyProcess& process, std::uint64_t seed) {
  return std::visit(
      [seed](const auto& p) {
        Rng rng(seed);
        const auto state = walk(p, rng);
        return Sample(p.selected(state), p.population_size());
      },
      process);
}

}  // namespace splitsamp
