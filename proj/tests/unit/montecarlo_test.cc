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

#include "splitsamp/montecarlo.h"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "gtest/gtest.h"
#include "splitsamp/error.h"
#include "splitsamp/oracle.h"
#include "splitsamp/rng.h"

namespace splitsamp {
namespace {

TEST(Wilson, Properties) {
  const WilsonInterval none = wilson_interval(0, 100);
  EXPECT_EQ(none.lower, 0.0);
  EXPECT_GT(none.upper, 0.0);
  EXPECT_LT(none.upper, 0.1);
  const WilsonInterval all = wilson_interval(100, 100);
  EXPECT_NEAR(all.upper, 1.0, 1e-15);
  EXPECT_LT(all.lower, 1.0);
  const WilsonInterval half = wilson_interval(500, 1000);
  EXPECT_NEAR(half.lower + half.upper, 1.0, 1e-12);
  // z^2 / (4 (n + z^2)) = half-width^2 at p = 1/2.
  const double z2 = kWilsonZ99 * kWilsonZ99;
  const double hw = std::sqrt(z2 * (0.25 * 1000 + z2 / 4)) / (1000 + z2);
  EXPECT_NEAR(half.upper - 0.5, hw, 1e-12);
  EXPECT_LT(wilson_interval(5000, 10000).upper, half.upper);
  EXPECT_THROW(wilson_interval(3, 2), Error);
  EXPECT_EQ(wilson_interval(0, 0).upper, 1.0);
}

TEST(EstimateTail, ZeroStudyVariable) {
  const auto inputs = DesignInputs::from_sizes({1, 2, 3, 4, 5}, 2);
  const std::vector<double> eps = {0.0, 0.1, 1.0};
  const TailEstimate t = estimate_tail(DesignKind::kChao, inputs, std::vector<double>(5, 0.0),
                                       eps, 200, 9);
  EXPECT_EQ(t.freq_two_sided[0], 1.0);
  EXPECT_EQ(t.freq_one_sided[1], 0.0);
  EXPECT_EQ(t.freq_two_sided[2], 0.0);
  EXPECT_EQ(t.replicates, 200u);
}

TEST(EstimateTail, AgreesWithExactTail) {
  const auto inputs = DesignInputs::from_sizes({1, 1, 1, 1}, 2);
  const std::vector<double> y = {0, 0, 0, 1};
  const std::vector<double> yc = {0, 0, 0, 2};
  const std::vector<double> eps = {0.05, 0.25, 0.3};
  const ExactDesignDistribution d = enumerate_design(DesignKind::kSrswor, inputs);
  const TailEstimate t = estimate_tail(DesignKind::kSrswor, inputs, y, eps, 20000, 17);
  for (std::size_t i = 0; i < eps.size(); ++i) {
    const ExactTail exact = exact_tail(d, yc, 1.0, eps[i]);
    EXPECT_GE(exact.one_sided, t.wilson_1s[i].lower);
    EXPECT_LE(exact.one_sided, t.wilson_1s[i].upper);
    EXPECT_GE(exact.two_sided, t.wilson_2s[i].lower);
    EXPECT_LE(exact.two_sided, t.wilson_2s[i].upper);
  }
}

// Over many independent audits the exact tail falls inside the 99% Wilson
// interval at close to the nominal rate.
TEST(EstimateTail, WilsonCoverage) {
  const std::vector<double> x = {1, 2, 3, 4, 5, 6};
  const std::vector<double> y = {0.3, 0.1, 0.9, 0.4, 0.8, 0.2};
  const auto inputs = DesignInputs::from_sizes(x, 3);
  const auto pi = design_target_pi(DesignKind::kTilleElimination, inputs);
  std::vector<double> yc(x.size());
  double ty = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    yc[k] = y[k] / pi[k];
    ty += y[k];
  }
  const ExactDesignDistribution d = enumerate_design(DesignKind::kTilleElimination, inputs);
  const std::vector<double> eps = {0.02, 0.05};
  std::vector<double> exact;
  for (double e : eps) exact.push_back(exact_tail(d, yc, ty, e).two_sided);
  int covered = 0, audits = 0;
  for (std::uint64_t a = 0; a < 200; ++a) {
    const TailEstimate t =
        estimate_tail(DesignKind::kTilleElimination, inputs, y, eps, 500, derive_seed(77, a));
    for (std::size_t i = 0; i < eps.size(); ++i) {
      ++audits;
      if (exact[i] >= t.wilson_2s[i].lower && exact[i] <= t.wilson_2s[i].upper) ++covered;
    }
  }
  EXPECT_GE(static_cast<double>(covered) / audits, 0.97);
}

TEST(EstimateTail, ThreadsDoNotChangeCounts) {
  std::vector<double> x, y;
  Rng rng(5);
  for (int k = 0; k < 40; ++k) {
    x.push_back(1 + rng.exponential());
    y.push_back(rng.uniform());
  }
  const auto inputs = DesignInputs::from_sizes(x, 8);
  const std::vector<double> eps = {0.01, 0.05, 0.1};
  for (DesignKind kind : kAllDesigns) {
    const TailEstimate a = estimate_tail(kind, inputs, y, eps, 3001, 11, 1);
    const TailEstimate b = estimate_tail(kind, inputs, y, eps, 3001, 11, 4);
    EXPECT_EQ(a.count_one_sided, b.count_one_sided) << design_tag(kind);
    EXPECT_EQ(a.count_two_sided, b.count_two_sided) << design_tag(kind);
  }
}

TEST(EstimateTail, InputErrors) {
  const auto inputs = DesignInputs::from_sizes({1, 2, 3}, 1);
  const std::vector<double> eps = {0.1};
  EXPECT_THROW(estimate_tail(DesignKind::kChao, inputs, std::vector<double>(2, 0.0), eps, 10, 1),
               Error);
  EXPECT_THROW(estimate_tail(DesignKind::kChao, inputs, std::vector<double>(3, 0.0), eps, 0, 1),
               Error);
}

TEST(Certify, PassAndNegativeControl) {
  std::vector<double> x, y;
  Rng rng(8);
  for (int k = 0; k < 60; ++k) {
    x.push_back(1 + rng.exponential());
    y.push_back(rng.uniform());
  }
  const auto inputs = DesignInputs::from_sizes(x, 12);
  const std::vector<double> eps = {0.02, 0.05, 0.1, 0.2};
  const TailEstimate t = estimate_tail(DesignKind::kChao, inputs, y, eps, 20000, 4);
  const auto pi = design_target_pi(DesignKind::kChao, inputs);
  const CheckedStudyVector s = check_study_vector(y, pi);
  const BoundInputs b = BoundInputs::from_study(s, 60, 12, 0.0, false);
  const std::vector<TailBoundReport> reports = evaluate_bounds(b, eps, true);
  const CertifyResult ok = certify(t, reports, BoundKind::kCna);
  EXPECT_TRUE(ok.passed);
  EXPECT_EQ(ok.checked, eps.size());

  // Bounds a tenth of the empirical frequency must be rejected wherever the
  // frequency is well resolved.
  std::vector<double> low;
  for (double f : t.freq_two_sided) low.push_back(0.1 * f);
  const CertifyResult bad = certify(t, low, TailSide::kTwoSided);
  EXPECT_FALSE(bad.passed);
  ASSERT_FALSE(bad.failures.empty());
  EXPECT_EQ(bad.failures[0].index, 0u);

  EXPECT_THROW(certify(t, std::vector<double>(2, 1.0), TailSide::kOneSided), Error);
  const std::vector<TailBoundReport> other = evaluate_bounds(b, std::vector<double>{0.5}, true);
  EXPECT_THROW(certify(t, other, BoundKind::kCna), Error);
}

TEST(TailCsv, Header) {
  const auto inputs = DesignInputs::from_sizes({1, 2}, 1);
  const std::vector<double> eps = {0.1, 0.2};
  const TailEstimate t = estimate_tail(DesignKind::kSrswor, inputs, std::vector<double>{1, 0},
                                       eps, 10, 1);
  std::ostringstream out;
  write_tail_csv(t, out);
  const std::string text = out.str();
  EXPECT_EQ(text.rfind("eps,freq_one_sided,freq_two_sided,wilson_upper_1s,wilson_upper_2s\n", 0),
            0u);
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 3);
}

}  // namespace
}  // namespace splitsamp
