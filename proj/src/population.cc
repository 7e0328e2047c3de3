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

#include "splitsamp/population.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <numeric>
#include <sstream>
#include <unordered_set>

#include "splitsamp/error.h"

namespace splitsamp {

Population::Population(std::vector<Unit> units) : units_(std::move(units)) {
  if (units_.empty()) {
    throw Error(ErrorCode::kInvalidInput, "population must contain at least one unit");
  }
  std::unordered_set<std::string> seen;
  for (std::size_t k = 0; k < units_.size(); ++k) {
    const Unit& u = units_[k];
    if (!(u.x > 0.0) || !std::isfinite(u.x)) {
      throw Error(ErrorCode::kInvalidInput,
                  "unit '" + u.id + "' has nonpositive size x");
    }
    if (!std::isfinite(u.y)) {
      throw Error(ErrorCode::kInvalidInput, "unit '" + u.id + "' has non-finite y");
    }
    if (!seen.insert(u.id).second) {
      throw Error(ErrorCode::kValidation, "duplicate id '" + u.id + "'");
    }
  }
}

std::vector<double> Population::sizes() const {
  std::vector<double> out;
  out.reserve(units_.size());
  for (const Unit& u : units_) out.push_back(u.x);
  return out;
}

std::vector<double> Population::study() const {
  std::vector<double> out;
  out.reserve(units_.size());
  for (const Unit& u : units_) out.push_back(u.y);
  return out;
}

std::vector<std::string> Population::ids() const {
  std::vector<std::string> out;
  out.reserve(units_.size());
  for (const Unit& u : units_) out.push_back(u.id);
  return out;
}

double Population::total_y() const {
  double total = 0.0;
  for (const Unit& u : units_) total += u.y;
  return total;
}

InclusionProbabilities::InclusionProbabilities(std::vector<double> pi)
    : pi_(std::move(pi)) {
  if (pi_.empty()) {
    throw Error(ErrorCode::kInvalidInput, "empty inclusion probability vector");
  }
  double sum = 0.0;
  for (std::size_t k = 0; k < pi_.size(); ++k) {
    double& p = pi_[k];
    if (!std::isfinite(p) || p <= 0.0 || p > 1.0 + kOneTolerance) {
      throw Error(ErrorCode::kInvalidInput,
                  "inclusion probability of unit " + std::to_string(k + 1) +
                      " is outside (0, 1]");
    }
    if (p > 1.0) p = 1.0;
    sum += p;
  }
  const double rounded = std::round(sum);
  if (std::abs(sum - rounded) > kSizeTolerance || rounded < 1.0) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "inclusion probabilities sum to " << sum
        << ", which is not a positive integer";
    throw Error(ErrorCode::kValidation, msg.str());
  }
  n_ = static_cast<int>(rounded);
}

bool InclusionProbabilities::is_equal_probability() const noexcept {
  const double expected = static_cast<double>(n_) / static_cast<double>(pi_.size());
  return std::all_of(pi_.begin(), pi_.end(), [expected](double p) {
    return std::abs(p - expected) <= kOneTolerance;
  });
}

CheckedStudyVector check_study_vector(std::span<const double> y,
                                      std::span<const double> pi) {
  if (y.size() != pi.size()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "study vector has " + std::to_string(y.size()) +
                    " entries but there are " + std::to_string(pi.size()) +
                    " inclusion probabilities");
  }
  CheckedStudyVector out;
  out.y_check.resize(y.size());
  for (std::size_t k = 0; k < y.size(); ++k) {
    const double yc = y[k] / pi[k];
    out.y_check[k] = yc;
    out.sup_abs = std::max(out.sup_abs, std::abs(yc));
    out.sum_sq += yc * yc;
    out.sup_y_abs = std::max(out.sup_y_abs, std::abs(y[k]));
    out.sup_y2_over_pi = std::max(out.sup_y2_over_pi, y[k] * y[k] / pi[k]);
  }
  return out;
}

CheckedStudyVector check_study_vector(std::span<const double> y,
                                      const InclusionProbabilities& pi) {
  return check_study_vector(y, pi.values());
}

double capped_scale(std::span<const double> weights, double target) {
  const std::size_t count = weights.size();
  std::vector<char> fixed(count, 0);
  std::size_t fixed_count = 0;
  for (std::size_t pass = 0; pass <= count; ++pass) {
    const double remainder = target - static_cast<double>(fixed_count);
    double free_weight = 0.0;
    for (std::size_t k = 0; k < count; ++k) {
      if (!fixed[k]) free_weight += weights[k];
    }
    if (!(free_weight > 0.0)) return std::numeric_limits<double>::infinity();
    const double scale = std::max(0.0, remainder) / free_weight;
    bool changed = false;
    for (std::size_t k = 0; k < count; ++k) {
      if (!fixed[k] && weights[k] > 0.0 && capped_value(weights[k], scale) == 1.0) {
        fixed[k] = 1;
        ++fixed_count;
        changed = true;
      }
    }
    if (!changed) return scale;
  }
  return std::numeric_limits<double>::infinity();
}

std::vector<double> capped_proportional(std::span<const double> weights,
                                        double target) {
  const std::size_t count = weights.size();
  std::vector<double> p(count, 0.0);
  const double scale = capped_scale(weights, target);
  std::size_t positive = 0;
  std::size_t zero = 0;
  for (std::size_t k = 0; k < count; ++k) {
    if (weights[k] > 0.0) {
      p[k] = capped_value(weights[k], scale);
      ++positive;
    } else {
      ++zero;
    }
  }
  if (std::isinf(scale) && zero > 0) {
    const double leftover = target - static_cast<double>(positive);
    if (leftover > 0.0) {
      const double share = std::min(1.0, leftover / static_cast<double>(zero));
      for (std::size_t k = 0; k < count; ++k) {
        if (!(weights[k] > 0.0)) p[k] = share;
      }
    }
  }
  return p;
}

InclusionProbabilities compute_pips(std::span<const double> x, int n) {
  if (x.empty()) throw Error(ErrorCode::kInvalidInput, "empty size vector");
  if (n < 1 || static_cast<std::size_t>(n) > x.size()) {
    throw Error(ErrorCode::kInvalidSize,
                "sample size " + std::to_string(n) + " is not in [1, N=" +
                    std::to_string(x.size()) + "]");
  }
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (!(x[k] > 0.0) || !std::isfinite(x[k])) {
      throw Error(ErrorCode::kInvalidInput,
                  "size of unit " + std::to_string(k + 1) + " is not positive");
    }
  }
  std::vector<double> pi = capped_proportional(x, static_cast<double>(n));
  for (std::size_t k = 0; k < pi.size(); ++k) {
    if (!(pi[k] > 0.0)) {
      throw Error(ErrorCode::kInvalidInput,
                  "capping leaves unit " + std::to_string(k + 1) +
                      " with zero inclusion probability");
    }
  }
  return InclusionProbabilities(std::move(pi));
}

InclusionProbabilities compute_pips(const Population& population, int n) {
  return compute_pips(population.sizes(), n);
}

namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

double parse_number(std::string_view field, std::string_view source,
                    std::size_t line_no, std::string_view column) {
  field = trim(field);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size() || field.empty()) {
    throw Error(ErrorCode::kParse, std::string(source) + ":" + std::to_string(line_no) +
                                       ": cannot parse " + std::string(column) +
                                       " value '" + std::string(field) + "'");
  }
  return value;
}

}  // namespace

PopulationFile parse_population(std::istream& in, std::string_view source) {
  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line)) {
    throw Error(ErrorCode::kParse, std::string(source) + ": empty file");
  }
  ++line_no;
  std::string_view header = trim(line);
  if (header.size() >= 3 && header.substr(0, 3) == "\xEF\xBB\xBF") header.remove_prefix(3);
  PopulationSchema schema;
  if (header == "id,x,y") {
    schema = PopulationSchema::kSizes;
  } else if (header == "id,pi,y") {
    schema = PopulationSchema::kProbabilities;
  } else {
    throw Error(ErrorCode::kParse, std::string(source) +
                                       ":1: header must be 'id,x,y' or 'id,pi,y', got '" +
                                       std::string(header) + "'");
  }
  const char* second = schema == PopulationSchema::kSizes ? "x" : "pi";

  std::vector<Unit> units;
  std::unordered_set<std::string> seen;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view row = trim(line);
    if (row.empty()) continue;
    const auto fields = split_fields(row);
    if (fields.size() != 3) {
      throw Error(ErrorCode::kParse, std::string(source) + ":" + std::to_string(line_no) +
                                         ": expected 3 fields, found " +
                                         std::to_string(fields.size()));
    }
    Unit unit;
    unit.id = std::string(trim(fields[0]));
    if (unit.id.empty()) {
      throw Error(ErrorCode::kParse,
                  std::string(source) + ":" + std::to_string(line_no) + ": empty id");
    }
    unit.x = parse_number(fields[1], source, line_no, second);
    unit.y = parse_number(fields[2], source, line_no, "y");
    if (!(unit.x > 0.0) || !std::isfinite(unit.x) ||
        (schema == PopulationSchema::kProbabilities && unit.x > 1.0 + kOneTolerance)) {
      throw Error(ErrorCode::kInvalidInput,
                  std::string(source) + ":" + std::to_string(line_no) + ": row '" +
                      unit.id + "' has invalid " + second + " value " +
                      std::string(trim(fields[1])));
    }
    if (!seen.insert(unit.id).second) {
      throw Error(ErrorCode::kValidation, std::string(source) + ":" +
                                              std::to_string(line_no) +
                                              ": duplicate id '" + unit.id + "'");
    }
    units.push_back(std::move(unit));
  }
  if (units.empty()) {
    throw Error(ErrorCode::kParse, std::string(source) + ": no data rows");
  }

  PopulationFile file{Population(std::move(units)), schema, std::nullopt};
  if (schema == PopulationSchema::kProbabilities) {
    file.pi = InclusionProbabilities(file.population.sizes());
  }
  return file;
}

PopulationFile load_population(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::kInvalidInput, "cannot open population file " + path.string());
  }
  return parse_population(in, path.string());
}

}  // namespace splitsamp
