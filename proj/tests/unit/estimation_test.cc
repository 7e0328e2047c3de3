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

#include <vector>

#include "gtest/gtest.h"
#include "splitsamp/designs.h"
#include "splitsamp/error.h"
#include "splitsamp/oracle.h"

namespace splitsamp {
namespace {

TEST(HtEstimate, TwoUnits) {
  const std::vector<double> y_check = {4, 8, 100, 100};
  const HTResult r = ht_estimate(Sample({0, 1}, 4), y_check, 10.0);
  EXPECT_EQ(r.t_hat, 12.0);
  EXPECT_EQ(r.t_y, 10.0);
  EXPECT_EQ(r.error, 2.0);
  EXPECT_EQ(r.normalized_error, 0.5);
}

TEST(HtEstimate, CensusRecoversTotalOnlyWithCertainProbabilities) {
  const std::vector<double> y = {1, 2, 3};
  const CheckedStudyVector certain = check_study_vector(y, std::vector<double>{1, 1, 1});
  EXPECT_EQ(ht_estimate(Sample({0, 1, 2}, 3), certain, 6.0).error, 0.0);
  const CheckedStudyVector halves = check_study_vector(y, std::vector<double>{0.5, 1, 1});
  EXPECT_EQ(ht_estimate(Sample({0, 1, 2}, 3), halves, 6.0).t_hat, 7.0);
}

TEST(HtEstimate, DimensionMismatch) {
  EXPECT_THROW(ht_estimate(Sample({0}, 3), std::vector<double>{1, 2}, 0.0), Error);
}

TEST(HtEstimate, UnbiasedUnderEveryDesign) {
  const std::vector<double> x = {1, 2.5, 3, 4, 0.7, 6};
  const std::vector<double> y = {3, -1, 2, 8, 5, 0.5};
  const double t_y = 17.5;
  for (int n : {2, 3, 5}) {
    const auto inputs = DesignInputs::from_sizes(x, n);
    for (DesignKind kind : kAllDesigns) {
      const std::vector<double> pi = design_target_pi(kind, inputs);
      const CheckedStudyVector yc = check_study_vector(y, pi);
      const ExactDesignDistribution dist = enumerate_design(kind, inputs);
      double expected = 0.0;
      for (const auto& [s, p] : dist.support()) {
        expected += p * ht_estimate(Sample(s, x.size()), yc, t_y).t_hat;
      }
      EXPECT_NEAR(expected, t_y, 1e-8) << design_tag(kind) << " n=" << n;
    }
  }
}

TEST(HtEstimate, SrsworAverageOverSixSamples) {
  const auto inputs = DesignInputs::from_sizes({1, 1, 1, 1}, 2);
  const std::vector<double> y = {1, 2, 3, 4};
  const CheckedStudyVector yc = check_study_vector(y, std::vector<double>(4, 0.5));
  double sum = 0.0;
  const ExactDesignDistribution dist = enumerate_design(DesignKind::kSrswor, inputs);
  for (const auto& [s, p] : dist.support()) {
    sum += ht_estimate(Sample(s, 4), yc, 10.0).t_hat;
  }
  EXPECT_NEAR(sum / 6.0, 10.0, 1e-12);
}

}  // namespace
}  // namespace splitsamp
