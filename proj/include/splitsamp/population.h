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

#ifndef SPLITSAMP_POPULATION_H_
#define SPLITSAMP_POPULATION_H_

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace splitsamp {

// Entries within this distance of 1 are treated as exactly 1 by the capping
// rule.
inline constexpr double kOneTolerance = 1e-12;
// Allowed drift of sum(pi) from the integer sample size.
inline constexpr double kSizeTolerance = 1e-9;

struct Unit {
  std::string id;
  double x = 1.0;  // size variable, > 0
  double y = 0.0;  // study variable
};

// Finite population U in file order. Immutable after construction.
class Population {
 public:
  explicit Population(std::vector<Unit> units);

  std::size_t size() const noexcept { return units_.size(); }
  const std::vector<Unit>& units() const noexcept { return units_; }
  const Unit& operator[](std::size_t k) const { return units_[k]; }

  std::vector<double> sizes() const;
  std::vector<double> study() const;
  std::vector<std::string> ids() const;
  double total_y() const;

 private:
  std::vector<Unit> units_;
};

// First-order inclusion probabilities of a fixed-size design: every entry in
// (0, 1] and the entries sum to the integer n.
class InclusionProbabilities {
 public:
  explicit InclusionProbabilities(std::vector<double> pi);

  std::size_t size() const noexcept { return pi_.size(); }
  int n() const noexcept { return n_; }
  std::span<const double> values() const noexcept { return pi_; }
  double operator[](std::size_t k) const { return pi_[k]; }

  // True when every unit has the same probability n/N (within 1e-12).
  bool is_equal_probability() const noexcept;

 private:
  std::vector<double> pi_;
  int n_ = 0;
};

// Expanded study values y_k / pi_k and the summaries the tail bounds use.
struct CheckedStudyVector {
  std::vector<double> y_check;
  double sup_abs = 0.0;         // max |y_k / pi_k|
  double sum_sq = 0.0;          // sum (y_k / pi_k)^2
  double sup_y_abs = 0.0;       // max |y_k|
  double sup_y2_over_pi = 0.0;  // max y_k^2 / pi_k
};

CheckedStudyVector check_study_vector(std::span<const double> y,
                                      std::span<const double> pi);
CheckedStudyVector check_study_vector(std::span<const double> y,
                                      const InclusionProbabilities& pi);

// Probabilities proportional to nonnegative `weights` summing to `target`,
// with every entry that would reach 1 fixed at 1 and the remainder
// redistributed over the others. All entries above 1 are fixed in the same
// pass; the loop ends after at most weights.size() passes. Zero weights stay
// at 0 unless the positive weights cannot absorb `target`, in which case the
// leftover mass is split evenly over the zero-weight units.
std::vector<double> capped_proportional(std::span<const double> weights,
                                        double target);

// Scale c of the capped allocation: every positive-weight unit receives
// capped_value(w_k, c). Infinite when all positive-weight units are capped.
double capped_scale(std::span<const double> weights, double target);

inline double capped_value(double weight, double scale) {
  const double v = weight * scale;
  return v >= 1.0 - kOneTolerance ? 1.0 : v;
}

// Capped pi-ps inclusion probabilities for strictly positive sizes x.
InclusionProbabilities compute_pips(std::span<const double> x, int n);
InclusionProbabilities compute_pips(const Population& population, int n);

enum class PopulationSchema { kSizes, kProbabilities };

struct PopulationFile {
  Population population;
  PopulationSchema schema = PopulationSchema::kSizes;
  // Present for the "id,pi,y" schema. The population's x column then holds
  // the probabilities, so that pi-ps on x reproduces them.
  std::optional<InclusionProbabilities> pi;
};

// Reads "id,x,y" or "id,pi,y" CSV text. `source` names the input in error
// messages.
PopulationFile parse_population(std::istream& in, std::string_view source);
PopulationFile load_population(const std::filesystem::path& path);

}  // namespace splitsamp

#endif  // SPLITSAMP_POPULATION_H_
