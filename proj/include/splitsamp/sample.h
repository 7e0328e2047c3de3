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

#ifndef SPLITSAMP_SAMPLE_H_
#define SPLITSAMP_SAMPLE_H_

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

namespace splitsamp {

// A realized sample S as sorted unit indices into a population of size N.
class Sample {
 public:
  Sample() = default;
  Sample(std::vector<std::size_t> selected, std::size_t population_size)
      : selected_(std::move(selected)), population_size_(population_size) {
    std::sort(selected_.begin(), selected_.end());
  }

  const std::vector<std::size_t>& selected() const noexcept { return selected_; }
  std::size_t size() const noexcept { return selected_.size(); }
  std::size_t population_size() const noexcept { return population_size_; }

  bool contains(std::size_t k) const {
    return std::binary_search(selected_.begin(), selected_.end(), k);
  }

  // Membership indicators I_U.
  std::vector<std::uint8_t> indicators() const {
    std::vector<std::uint8_t> out(population_size_, 0);
    for (std::size_t k : selected_) out[k] = 1;
    return out;
  }

  friend bool operator==(const Sample&, const Sample&) = default;

 private:
  std::vector<std::size_t> selected_;
  std::size_t population_size_ = 0;
};

enum class DesignKind { kSrswor, kChao, kTilleElimination, kGeneralizedMidzuno, kBrewer };

inline constexpr std::array<DesignKind, 5> kAllDesigns = {
    DesignKind::kSrswor, DesignKind::kChao, DesignKind::kTilleElimination,
    DesignKind::kGeneralizedMidzuno, DesignKind::kBrewer};

// CLI tag: srswor, chao, tille, midzuno, brewer.
constexpr std::string_view design_tag(DesignKind kind) {
  switch (kind) {
    case DesignKind::kSrswor: return "srswor";
    case DesignKind::kChao: return "chao";
    case DesignKind::kTilleElimination: return "tille";
    case DesignKind::kGeneralizedMidzuno: return "midzuno";
    case DesignKind::kBrewer: return "brewer";
  }
  return "";
}

inline std::optional<DesignKind> parse_design_tag(std::string_view tag) {
  for (DesignKind kind : kAllDesigns) {
    if (design_tag(kind) == tag) return kind;
  }
  return std::nullopt;
}

}  // namespace splitsamp

#endif  // SPLITSAMP_SAMPLE_H_
