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

#ifndef SPLITSAMP_DISTRIBUTION_H_
#define SPLITSAMP_DISTRIBUTION_H_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "splitsamp/sample.h"

namespace splitsamp {

inline constexpr double kDistributionTolerance = 1e-9;

using SupportMap = std::map<std::vector<std::size_t>, double>;

// Exact distribution of a design on a small population: sorted index sets
// (0-based) with their probabilities.
class ExactDesignDistribution {
 public:
  // Validates: indices < N, sorted and distinct; probabilities >= -1e-15
  // (clamped to 0, then removed); total mass within 1e-9 of 1.
  ExactDesignDistribution(SupportMap support, std::size_t population_size,
                          std::optional<DesignKind> kind = std::nullopt,
                          std::uint64_t inputs_hash = 0);

  const SupportMap& support() const noexcept { return support_; }
  std::size_t population_size() const noexcept { return population_; }
  // Common sample size, or nullopt if the support mixes sizes.
  std::optional<std::size_t> fixed_size() const noexcept { return n_; }
  std::optional<DesignKind> kind() const noexcept { return kind_; }
  std::uint64_t inputs_hash() const noexcept { return hash_; }
  // "tille:N=5,n=2,inputs=0x...", or "custom" for hand-built designs.
  std::string source() const;

  double probability(const std::vector<std::size_t>& sample) const;
  double total_mass() const;

 private:
  SupportMap support_;
  std::size_t population_;
  std::optional<std::size_t> n_;
  std::optional<DesignKind> kind_;
  std::uint64_t hash_;
};

// Half the L1 distance; throws kDimensionMismatch on different N.
double total_variation(const ExactDesignDistribution& a, const ExactDesignDistribution& b);

// Distribution of U \ S.
ExactDesignDistribution complement(const ExactDesignDistribution& dist);

// "sample;probability" with a header row; samples are hyphen-joined sorted
// ids. Ids are 1-based unit numbers unless labels are given.
void write_distribution_dump(const ExactDesignDistribution& dist, std::ostream& out,
                             const std::vector<std::string>& labels = {});
// Reads a dump with 1-based numeric ids.
ExactDesignDistribution read_distribution_dump(std::istream& in, std::size_t population_size);

}  // namespace splitsamp

#endif  // SPLITSAMP_DISTRIBUTION_H_
