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

#include "splitsamp/oracle.h"

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <limits>
#include <string>

#include "splitsamp/error.h"

namespace splitsamp {

namespace {

std::uint64_t fnv1a(std::uint64_t h, const void* data, std::size_t size) {
  const auto* bytes = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < size; ++i) {
    h ^= bytes[i];
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t hash_inputs(DesignKind kind, const DesignInputs& inputs) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  const auto tag = static_cast<int>(kind);
  const int n = inputs.n();
  h = fnv1a(h, &tag, sizeof tag);
  h = fnv1a(h, &n, sizeof n);
  h = fnv1a(h, inputs.sizes().data(), inputs.sizes().size() * sizeof(double));
  h = fnv1a(h, inputs.stream_order().data(),
            inputs.stream_order().size() * sizeof(std::size_t));
  return h;
}

}  // namespace

std::vector<double> containment_probabilities(const ExactDesignDistribution& dist) {
  const std::size_t population = dist.population_size();
  if (population > 20) {
    throw Error(ErrorCode::kNotApplicable, "containment table limited to N <= 20");
  }
  std::vector<double> f(std::size_t{1} << population, 0.0);
  for (const auto& [sample, p] : dist.support()) {
    std::size_t mask = 0;
    for (std::size_t k : sample) mask |= std::size_t{1} << k;
    f[mask] += p;
  }
  for (std::size_t bit = 0; bit < population; ++bit) {
    const std::size_t b = std::size_t{1} << bit;
    for (std::size_t mask = 0; mask < f.size(); ++mask) {
      if (!(mask & b)) f[mask] += f[mask | b];
    }
  }
  return f;
}

namespace {

std::vector<std::size_t> mask_members(std::size_t mask) {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; mask; ++k, mask >>= 1) {
    if (mask & 1) out.push_back(k);
  }
  return out;
}

}  // namespace

ExactDesignDistribution enumerate_design(DesignKind kind, const DesignInputs& inputs,
                                         std::size_t max_branches) {
  if (inputs.size() > kMaxEnumerationSize) {
    throw Error(ErrorCode::kEnumerationTooLarge,
                "exact enumeration is limited to N <= " +
                    std::to_string(kMaxEnumerationSize) + ", got N=" +
                    std::to_string(inputs.size()));
  }
  const AnyProcess process = make_process(kind, inputs);
  const EnumeratedSupport result = std::visit(
      [max_branches](const auto& p) { return enumerate_process(p, max_branches); }, process);
  double mass = 0.0;
  for (const auto& [sample, p] : result.support) mass += p;
  if (!(std::abs(mass - 1.0) <= kDistributionTolerance) ||
      !(std::abs(mass + result.pruned_mass - 1.0) <= kDistributionTolerance)) {
    throw Error(ErrorCode::kInternalConsistency,
                std::string(design_tag(kind)) + ": enumerated mass " + std::to_string(mass) +
                    " with pruned mass " + std::to_string(result.pruned_mass));
  }
  return ExactDesignDistribution(result.support, inputs.size(), kind,
                                 hash_inputs(kind, inputs));
}

InclusionMatrix inclusion_probabilities(const ExactDesignDistribution& dist) {
  const std::size_t population = dist.population_size();
  InclusionMatrix out;
  out.first.assign(population, 0.0);
  out.second.assign(population, std::vector<double>(population, 0.0));
  for (const auto& [sample, p] : dist.support()) {
    for (std::size_t a = 0; a < sample.size(); ++a) {
      out.first[sample[a]] += p;
      for (std::size_t b = 0; b < sample.size(); ++b) out.second[sample[a]][sample[b]] += p;
    }
  }
  return out;
}

CsygReport check_csyg(const ExactDesignDistribution& dist) {
  const auto n = dist.fixed_size();
  if (!n) throw Error(ErrorCode::kNotApplicable, "CSYG check needs a fixed-size design");
  const std::size_t population = dist.population_size();
  const std::vector<double> f = containment_probabilities(dist);
  CsygReport report;
  report.max_violation = -std::numeric_limits<double>::infinity();
  report.eq6_max_violation = -std::numeric_limits<double>::infinity();
  const std::size_t max_conditioning = *n >= 2 ? *n - 2 : 0;
  for (std::size_t mask = 0; mask < f.size(); ++mask) {
    const auto p = static_cast<std::size_t>(std::popcount(mask));
    if (*n < 2 || p > max_conditioning) continue;
    const std::size_t free = population - p;
    const std::size_t pairs = free * (free - 1) / 2;
    const double base = f[mask];
    if (!(base > kConditioningThreshold)) {
      report.skipped_count += pairs;
      continue;
    }
    report.checked_count += pairs;
    for (std::size_t k = 0; k < population; ++k) {
      const std::size_t bk = std::size_t{1} << k;
      if (mask & bk) continue;
      const double pk = f[mask | bk] / base;
      for (std::size_t l = k + 1; l < population; ++l) {
        const std::size_t bl = std::size_t{1} << l;
        if (mask & bl) continue;
        const double pl = f[mask | bl] / base;
        const double joint = f[mask | bk | bl];
        const double v5 = joint / base - pk * pl;
        if (v5 > report.max_violation) {
          report.max_violation = v5;
          report.witness = {k, l, mask_members(mask)};
        }
        if (f[mask | bl] > kConditioningThreshold) {
          report.eq6_max_violation =
              std::max(report.eq6_max_violation, joint / f[mask | bl] - pk);
        }
        if (f[mask | bk] > kConditioningThreshold) {
          report.eq6_max_violation =
              std::max(report.eq6_max_violation, joint / f[mask | bk] - pl);
        }
      }
    }
  }
  if (report.checked_count == 0) {
    report.max_violation = 0.0;
    report.eq6_max_violation = 0.0;
  }
  return report;
}

double check_pairwise_na(const ExactDesignDistribution& dist) {
  const InclusionMatrix pi = inclusion_probabilities(dist);
  double worst = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < pi.first.size(); ++k) {
    for (std::size_t l = k + 1; l < pi.first.size(); ++l) {
      worst = std::max(worst, pi.second[k][l] - pi.first[k] * pi.first[l]);
    }
  }
  return worst;
}

double unbiasedness_check(const ExactDesignDistribution& dist, std::span<const double> y,
                          std::span<const double> pi) {
  const std::size_t population = dist.population_size();
  if (y.size() != population || pi.size() != population) {
    throw Error(ErrorCode::kDimensionMismatch, "y and pi must have length N");
  }
  double expected = 0.0;
  for (const auto& [sample, p] : dist.support()) {
    double estimate = 0.0;
    for (std::size_t k : sample) estimate += y[k] / pi[k];
    expected += p * estimate;
  }
  double total = 0.0;
  for (double v : y) total += v;
  return std::abs(expected - total);
}

ExactTail exact_tail(const ExactDesignDistribution& dist, std::span<const double> y_check,
                     double t_y, double eps) {
  if (y_check.size() != dist.population_size()) {
    throw Error(ErrorCode::kDimensionMismatch, "y_check must have length N");
  }
  const double threshold = static_cast<double>(dist.population_size()) * eps;
  ExactTail out;
  for (const auto& [sample, p] : dist.support()) {
    double estimate = 0.0;
    for (std::size_t k : sample) estimate += y_check[k];
    const double error = estimate - t_y;
    if (error >= threshold) out.one_sided += p;
    if (std::abs(error) >= threshold) out.two_sided += p;
  }
  return out;
}

}  // namespace splitsamp
