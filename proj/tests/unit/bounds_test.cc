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

#include "splitsamp/bounds.h"

#include <cmath>
#include <numbers>
#include <vector>

#include "gtest/gtest.h"
#include "splitsamp/error.h"
#include "splitsamp/json_io.h"
#include "splitsamp/rng.h"

namespace splitsamp {
namespace {

// N=100, n=20, y = 1, pi = 0.2.
BoundInputs Reference(double eps = 0.5) {
  BoundInputs in;
  in.N = 100;
  in.n = 20;
  in.eps = eps;
  in.sup_ycheck = 5;
  in.sum_sq_ycheck = 2500;
  in.sup_y = 1;
  in.sup_y2_over_pi = 5;
  in.equal_probability = true;
  return in;
}

// Equal probabilities n/N with |y| <= v attained.
BoundInputs EqualProbability(double N, double n, double v, double eps) {
  BoundInputs in;
  in.N = N;
  in.n = n;
  in.eps = eps;
  in.sup_ycheck = N / n * v;
  in.sum_sq_ycheck = N * in.sup_ycheck * in.sup_ycheck;
  in.sup_y = v;
  in.sup_y2_over_pi = N / n * v * v;
  in.equal_probability = true;
  return in;
}

TEST(Bounds, ReferenceInstance) {
  const BoundInputs in = Reference();
  EXPECT_NEAR(cna_bound(in), std::exp(-2500.0 / 4000.0), 1e-15);
  EXPECT_NEAR(cna_bound(in), 0.535261428518990, 1e-12);
  EXPECT_NEAR(bernstein_bound(in), 0.9857031947174, 1e-12);
  EXPECT_NEAR(lipschitz_bound(in), 0.993769491, 1e-9);
  EXPECT_DOUBLE_EQ(eps_star(in), 1.6);
}

TEST(Bounds, ZeroEps) {
  const BoundInputs in = Reference(0.0);
  EXPECT_EQ(cna_bound(in), 1.0);
  EXPECT_EQ(lipschitz_bound(in), 1.0);
  EXPECT_EQ(bernstein_bound(in), 2.0);
  BoundInputs with_mc = in;
  with_mc.M = 1;
  with_mc.c = 1;
  EXPECT_EQ(cna_bound_Mc(with_mc), 1.0);
}

TEST(Bounds, DegenerateStudyVector) {
  BoundInputs in;
  in.N = 10;
  in.n = 2;
  in.eps = 0.3;
  EXPECT_EQ(cna_bound(in), 0.0);
  EXPECT_EQ(lipschitz_bound(in), 0.0);
  EXPECT_EQ(bernstein_bound(in), 2.0);
  in.sup_y2_over_pi = 1.0;
  EXPECT_NEAR(bernstein_bound(in), 2.0 * std::exp(-0.09 * 10 / (8 * 0.8)), 1e-15);
}

TEST(Bounds, CensusDropsVarianceTerm) {
  BoundInputs in = Reference(0.4);
  in.n = in.N;
  EXPECT_NEAR(bernstein_bound(in),
              2.0 * std::exp(-0.16 * 100 / ((4.0 / 3.0) * 0.4 * in.sup_ycheck)), 1e-15);
  EXPECT_EQ(eps_star(in), 0.0);
}

TEST(Bounds, McForm) {
  BoundInputs in = Reference(0.1);
  EXPECT_THROW(cna_bound_Mc(in), Error);
  in.M = 1;
  in.c = 1;
  in.n = 2397;
  in.N = 1e6;
  EXPECT_LE(cna_bound_Mc(in), 0.05);
  // Constant y with equal probabilities: sup|y_check| = (N/n) M, so both forms agree.
  const BoundInputs eq = [] {
    BoundInputs b = EqualProbability(1000, 50, 2.0, 0.3);
    b.M = 2.0;
    b.c = 1.0;
    return b;
  }();
  EXPECT_NEAR(cna_bound_Mc(eq), cna_bound(eq), 1e-15);
}

TEST(Bounds, EpsStarNeedsEqualProbabilities) {
  BoundInputs in = Reference();
  in.equal_probability = false;
  try {
    eps_star(in);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNotApplicable);
  }
  in = Reference();
  in.sup_y = 0;
  EXPECT_EQ(eps_star(in), 0.0);
}

TEST(Bounds, Validation) {
  BoundInputs in = Reference();
  in.sum_sq_ycheck = 10;  // < sup^2 = 25
  EXPECT_THROW(in.validate(), Error);
  in = Reference(-0.1);
  EXPECT_THROW(in.validate(), Error);
  in = Reference();
  in.n = 200;
  EXPECT_THROW(in.validate(), Error);
  EXPECT_NO_THROW(Reference().validate());
}

TEST(Bounds, CnaNeverExceedsLipschitz) {
  Rng rng(17);
  for (int trial = 0; trial < 2000; ++trial) {
    const std::size_t N = 2 + static_cast<std::size_t>(rng.uniform() * 200);
    std::vector<double> yc(N);
    double sup = 0.0, sum = 0.0;
    for (double& v : yc) {
      v = rng.normal() * 3.0;
      sup = std::max(sup, std::abs(v));
      sum += v * v;
    }
    BoundInputs in;
    in.N = static_cast<double>(N);
    in.n = 1.0 + rng.uniform() * (in.N - 1.0);
    in.eps = rng.exponential();
    in.sup_ycheck = sup;
    in.sum_sq_ycheck = sum;
    EXPECT_LE(cna_bound(in), lipschitz_bound(in));
    // Equality on a single nonzero entry.
    in.sum_sq_ycheck = sup * sup;
    EXPECT_NEAR(cna_bound(in), lipschitz_bound(in), 1e-12);
  }
}

TEST(Bounds, MonotoneInEps) {
  BoundInputs in = Reference();
  double prev_cna = 2, prev_bern = 3, prev_lip = 2;
  for (int i = 0; i <= 400; ++i) {
    in.eps = i * 0.01;
    EXPECT_LE(cna_bound(in), prev_cna);
    EXPECT_LE(bernstein_bound(in), prev_bern);
    EXPECT_LE(lipschitz_bound(in), prev_lip);
    prev_cna = cna_bound(in);
    prev_bern = bernstein_bound(in);
    prev_lip = lipschitz_bound(in);
  }
}

TEST(Prop1, Thresholds) {
  EXPECT_NEAR(prop1_small_n_threshold(1e4), 394.97, 0.01);
  EXPECT_EQ(prop1_regime(1e4, 394).regime, Prop1Regime::kSmallNAllEps);
  EXPECT_EQ(prop1_regime(1e4, 100).regime, Prop1Regime::kSmallNAllEps);
  const Prop1Result large = prop1_regime(1e4, 5000, 2.0);
  EXPECT_EQ(large.regime, Prop1Regime::kLargeNEpsRange);
  EXPECT_NEAR(*large.limit, (3.0 - std::sqrt(2.0)) * 0.5 * 2.0, 1e-15);
  EXPECT_EQ(prop1_regime(7, 7).regime, Prop1Regime::kLargeNEpsRange);
  EXPECT_EQ(prop1_regime(1, 1).regime, Prop1Regime::kLargeNEpsRange);
  EXPECT_EQ(prop1_regime_name(Prop1Regime::kSmallNAllEps), "SmallN_AllEps");
}

TEST(Prop1, SmallNDominatesOnTheGrid) {
  for (double n : {10.0, 100.0, 300.0, 394.0}) {
    BoundInputs in = EqualProbability(1e4, n, 1.0, 0.0);
    for (double eps : log_grid(eps_star(in))) {
      in.eps = eps;
      EXPECT_LE(log_cna_bound(in), log_bernstein_bound(in)) << "n=" << n << " eps=" << eps;
    }
    EXPECT_FALSE(dominance_limit(1e4, n, 1.0).has_value());
  }
}

TEST(Prop1, DominanceLimitLocatesTheCrossing) {
  const auto limit = dominance_limit(1e4, 6000, 1.0);
  ASSERT_TRUE(limit.has_value());
  EXPECT_NEAR(*limit, 0.0248, 5e-4);
  BoundInputs in = EqualProbability(1e4, 6000, 1.0, *limit * 0.999);
  EXPECT_LE(log_cna_bound(in), log_bernstein_bound(in));
  in.eps = *limit * 1.001;
  EXPECT_GT(log_cna_bound(in), log_bernstein_bound(in));
  // Scales with sup|y|.
  EXPECT_NEAR(*dominance_limit(1e4, 6000, 3.0), 3.0 * *limit, 1e-9);
}

TEST(SolveSampleSize, Examples) {
  EXPECT_EQ(solve_sample_size(1, 1, 0.1, 0.05, false).n, 2397u);
  EXPECT_EQ(solve_sample_size(1, 1, 0.1, 0.05, true).n, 2952u);
  const SampleSizeSolution vacuous = solve_sample_size(1, 1, 0.1, 1.0, false);
  EXPECT_EQ(vacuous.n, 0u);
  EXPECT_TRUE(vacuous.vacuous);
  EXPECT_THROW(solve_sample_size(0, 1, 0.1, 0.05, false), Error);
}

TEST(SolveSampleSize, RoundTrip) {
  Rng rng(3);
  for (int trial = 0; trial < 300; ++trial) {
    const double M = 0.1 + 5 * rng.uniform();
    const double c = 0.1 + rng.uniform();
    const double eps = 0.01 + rng.uniform();
    const double eta = 0.001 + 0.9 * rng.uniform();
    const bool two = trial % 2 == 0;
    const auto n = static_cast<double>(solve_sample_size(M, c, eps, eta, two).n);
    const double k = two ? 2.0 : 1.0;
    BoundInputs in;
    in.N = 1e12;
    in.eps = eps;
    in.M = M;
    in.c = c;
    in.n = n;
    EXPECT_LE(k * cna_bound_Mc(in), eta * (1 + 1e-12));
    if (n > 1) {
      in.n = n - 1;
      EXPECT_GT(k * cna_bound_Mc(in), eta);
    }
  }
}

TEST(SolveConfidenceRadius, ExampleAndRoundTrip) {
  const BoundInputs in = Reference();
  const double r = solve_confidence_radius(in, 0.05, false);
  EXPECT_NEAR(r, 5.0 * std::sqrt(160 * std::log(20.0)) / 100.0, 1e-15);
  EXPECT_NEAR(r, 1.0947, 1e-4);
  BoundInputs at = in;
  at.eps = r;
  EXPECT_NEAR(cna_bound(at), 0.05, 1e-9);
  at.eps = r * (1 - 1e-6);
  EXPECT_GT(cna_bound(at), 0.05);
  const double r2 = solve_confidence_radius(in, 0.05, true);
  at.eps = r2;
  EXPECT_NEAR(2 * cna_bound(at), 0.05, 1e-9);
  EXPECT_LT(solve_confidence_radius(in, 1 - 1e-9, false), 1e-3);
  EXPECT_THROW(solve_confidence_radius(in, 1.0, false), Error);
}

TEST(EvaluateBounds, TwoSidedFactorAndClamping) {
  const TailBoundReport one = evaluate_bounds(Reference(), false);
  const TailBoundReport two = evaluate_bounds(Reference(), true);
  EXPECT_EQ(two.cna, 2 * one.cna);
  EXPECT_EQ(two.lipschitz, 2 * one.lipschitz);
  EXPECT_EQ(two.bernstein, one.bernstein);
  EXPECT_TRUE(two.two_sided_factor_applied);
  EXPECT_EQ(one.cna_raw, cna_bound(Reference()));
  EXPECT_LE(one.cna, one.lipschitz);
  ASSERT_TRUE(one.eps_star.has_value());
  EXPECT_DOUBLE_EQ(*one.eps_star, 1.6);
  // n = 20 is above (8 log 2 / 9)^(1/3) 100^(2/3) = 18.3.
  EXPECT_EQ(one.prop1.regime, Prop1Regime::kLargeNEpsRange);
  for (const TailBoundReport& r : {one, two}) {
    for (double v : {r.cna, r.bernstein, r.lipschitz}) {
      EXPECT_GE(v, 0.0);
      EXPECT_LE(v, 2.0);
    }
  }
}

TEST(EvaluateBounds, Json) {
  BoundInputs in = Reference();
  in.M = 1;
  in.c = 1;
  const nlohmann::json j = to_json(evaluate_bounds(in, false));
  EXPECT_NEAR(j["cna"].get<double>(), 0.535261428518990, 1e-12);
  EXPECT_EQ(j["prop1_regime"], "LargeN_EpsRange");
  EXPECT_FALSE(j["prop1_limit"].is_null());
  EXPECT_FALSE(j["cna_Mc_form"].is_null());
  // At least 12 significant digits in the text form.
  const std::string text = j.dump();
  EXPECT_NE(text.find("0.53526142851"), std::string::npos);
}

TEST(LogGrid, Spacing) {
  const auto g = log_grid(2.0, 512);
  ASSERT_EQ(g.size(), 512u);
  EXPECT_NEAR(g.front(), 2e-4, 1e-16);
  EXPECT_EQ(g.back(), 2.0);
  for (std::size_t i = 1; i < g.size(); ++i) {
    EXPECT_NEAR(g[i] / g[i - 1], g[1] / g[0], 1e-9);
  }
}

}  // namespace
}  // namespace splitsamp
