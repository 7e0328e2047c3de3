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

#ifndef SPLITSAMP_ESTIMATION_H_
#define SPLITSAMP_ESTIMATION_H_

#include <span>

#include "splitsamp/population.h"
#include "splitsamp/sample.h"

namespace splitsamp {

struct HTResult {
  double t_hat = 0.0;
  double t_y = 0.0;
  double error = 0.0;             // t_hat - t_y
  double normalized_error = 0.0;  // error / N
};

// Horvitz-Thompson estimate sum_{k in S} y_check_k, summed in population
// order. Throws kDimensionMismatch if the lengths disagree.
HTResult ht_estimate(const Sample& sample, std::span<const double> y_check, double t_y);
HTResult ht_estimate(const Sample& sample, const CheckedStudyVector& y_check, double t_y);

}  // namespace splitsamp

#endif  // SPLITSAMP_ESTIMATION_H_
