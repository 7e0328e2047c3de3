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

#include "splitsamp/estimation.h"

#include "splitsamp/error.h"

namespace splitsamp {

HTResult ht_estimate(const Sample& sample, std::span<const double> y_check, double t_y) {
  if (y_check.size() != sample.population_size()) {
    throw Error(ErrorCode::kDimensionMismatch, "sample and study vector lengths differ");
  }
  HTResult out;
  for (std::size_t k : sample.selected()) out.t_hat += y_check[k];
  out.t_y = t_y;
  out.error = out.t_hat - t_y;
  out.normalized_error = out.error / static_cast<double>(sample.population_size());
  return out;
}

HTResult ht_estimate(const Sample& sample, const CheckedStudyVector& y_check, double t_y) {
  return ht_estimate(sample, y_check.y_check, t_y);
}

}  // namespace splitsamp
