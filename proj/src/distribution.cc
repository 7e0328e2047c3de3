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

#include "splitsamp/distribution.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <set>

#include "splitsamp/error.h"

namespace splitsamp {

ExactDesignDistribution::ExactDesignDistribution(SupportMap support,
                                                 std::size_t population_size,
                                                 std::optional<DesignKind> kind,
                                                 std::uint64_t inputs_hash)
    : population_(population_size), kind_(kind), hash_(inputs_hash) {
  double total = 0.0;
  bool first = true;
  bool fixed = true;
  std::size_t size = 0;
  for (auto& [sample, p] : support) {
    for (std::size_t i = 0; i < sample.size(); ++i) {
      if (sample[i] >= population_ || (i > 0 && sample[i] <= sample[i - 1])) {
        throw Error(ErrorCode::kValidation,
                    "support element is not a sorted set of unit indices");
      }
    }
    if (!(p >= -1e-15)) {
      throw Error(ErrorCode::kValidation, "negative probability " + std::to_string(p));
    }
    if (p <= 0.0) continue;
    total += p;
    if (first) {
      size = sample.size();
      first = false;
    } else if (sample.size() != size) {
      fixed = false;
    }
    support_.emplace(sample, p);
  }
  if (!(std::abs(total - 1.0) <= kDistributionTolerance)) {
    throw Error(ErrorCode::kValidation,
                "distribution mass is " + std::to_string(total) + " instead of 1");
  }
  if (fixed && !first) n_ = size;
}

std::string ExactDesignDistribution::source() const {
  if (!kind_) return "custom";
  char hash[32];
  std::snprintf(hash, sizeof hash, "%016llx", static_cast<unsigned long long>(hash_));
  std::string out(design_tag(*kind_));
  out += ":N=" + std::to_string(population_);
  if (n_) out += ",n=" + std::to_string(*n_);
  out += ",inputs=0x";
  out += hash;
  return out;
}

double ExactDesignDistribution::probability(const std::vector<std::size_t>& sample) const {
  const auto it = support_.find(sample);
  return it == support_.end() ? 0.0 : it->second;
}

double ExactDesignDistribution::total_mass() const {
  double total = 0.0;
  for (const auto& [sample, p] : support_) total += p;
  return total;
}

double total_variation(const ExactDesignDistribution& a, const ExactDesignDistribution& b) {
  if (a.population_size() != b.population_size()) {
    throw Error(ErrorCode::kDimensionMismatch, "distributions live on different populations");
  }
  double l1 = 0.0;
  for (const auto& [sample, p] : a.support()) l1 += std::abs(p - b.probability(sample));
  for (const auto& [sample, q] : b.support()) {
    if (!a.support().contains(sample)) l1 += q;
  }
  return 0.5 * l1;
}

ExactDesignDistribution complement(const ExactDesignDistribution& dist) {
  const std::size_t population = dist.population_size();
  SupportMap out;
  for (const auto& [sample, p] : dist.support()) {
    std::vector<std::size_t> rest;
    rest.reserve(population - sample.size());
    std::size_t i = 0;
    for (std::size_t k = 0; k < population; ++k) {
      if (i < sample.size() && sample[i] == k) {
        ++i;
      } else {
        rest.push_back(k);
      }
    }
    out[std::move(rest)] += p;
  }
  return ExactDesignDistribution(std::move(out), population);
}

void write_distribution_dump(const ExactDesignDistribution& dist, std::ostream& out,
                             const std::vector<std::string>& labels) {
  if (!labels.empty() && labels.size() != dist.population_size()) {
    throw Error(ErrorCode::kDimensionMismatch, "label count differs from N");
  }
  out << "sample;probability\n";
  char buf[40];
  for (const auto& [sample, p] : dist.support()) {
    for (std::size_t i = 0; i < sample.size(); ++i) {
      if (i > 0) out << '-';
      if (labels.empty()) {
        out << sample[i] + 1;
      } else {
        out << labels[sample[i]];
      }
    }
    std::snprintf(buf, sizeof buf, "%.17g", p);
    out << ';' << buf << '\n';
  }
}

ExactDesignDistribution read_distribution_dump(std::istream& in, std::size_t population_size) {
  std::string line;
  if (!std::getline(in, line) || line != "sample;probability") {
    throw Error(ErrorCode::kParse, "distribution dump: missing header");
  }
  SupportMap support;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto where = "distribution dump line " + std::to_string(line_no);
    const auto semi = line.find(';');
    if (semi == std::string::npos) throw Error(ErrorCode::kParse, where + ": missing ';'");
    std::vector<std::size_t> sample;
    const std::string ids = line.substr(0, semi);
    std::size_t pos = 0;
    while (pos < ids.size()) {
      std::size_t end = ids.find('-', pos);
      if (end == std::string::npos) end = ids.size();
      std::size_t id = 0;
      const auto [ptr, ec] = std::from_chars(ids.data() + pos, ids.data() + end, id);
      if (ec != std::errc() || ptr != ids.data() + end || id == 0) {
        throw Error(ErrorCode::kParse, where + ": bad unit id");
      }
      sample.push_back(id - 1);
      pos = end + 1;
    }
    std::sort(sample.begin(), sample.end());
    double p = 0.0;
    const char* first = line.data() + semi + 1;
    const char* last = line.data() + line.size();
    const auto [ptr, ec] = std::from_chars(first, last, p);
    if (ec != std::errc() || ptr != last) {
      throw Error(ErrorCode::kParse, where + ": bad probability");
    }
    support[std::move(sample)] += p;
  }
  return ExactDesignDistribution(std::move(support), population_size);
}

}  // namespace splitsamp
