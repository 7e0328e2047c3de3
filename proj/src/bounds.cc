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

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "splitsamp/error.h"

namespace splitsamp {

namespace {

constexpr double kProp1Constant = 8.0 * std::numbers::ln2 / 9.0;

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorCode::kValidation, what);
}

bool nonnegative(double v) { return std::isfinite(v) && v >= 0.0; }

double clamp_report(double v) { return std::clamp(v, 0.0, 2.0); }

}  // namespace

void BoundInputs::validate() const {
  require(std::isfinite(N) && N >= 1.0, "N must be at least 1");
  require(std::isfinite(n) && n > 0.0 && n <= N, "n must lie in (0, N]");
  require(nonnegative(eps), "eps must be a nonnegative number");
  require(nonnegative(sup_ycheck) && nonnegative(sum_sq_ycheck) && nonnegative(sup_y) &&
              nonnegative(sup_y2_over_pi),
          "bound statistics must be nonnegative");
  require(sup_ycheck * sup_ycheck <= sum_sq_ycheck * (1.0 + 1e-12),
          "inconsistent statistics: sup|y_check|^2 exceeds sum y_check^2");
  require(sum_sq_ycheck <= N * sup_ycheck * sup_ycheck * (1.0 + 1e-12),
          "inconsistent statistics: sum y_check^2 exceeds N sup|y_check|^2");
  require(sup_y2_over_pi <= sup_y * sup_ycheck * (1.0 + 1e-12),
          "inconsistent statistics: sup y^2/pi exceeds sup|y| sup|y_check|");
  if (M) require(std::isfinite(*M) && *M > 0.0, "M must be positive");
  if (c) require(std::isfinite(*c) && *c > 0.0, "c must be positive");
}

BoundInputs BoundInputs::from_study(const CheckedStudyVector& study, double N, double n,
                                    double eps, bool equal_probability) {
  BoundInputs in;
  in.N = N;
  in.n = n;
  in.eps = eps;
  in.sup_ycheck = study.sup_abs;
  in.sum_sq_ycheck = study.sum_sq;
  in.sup_y = study.sup_y_abs;
  in.sup_y2_over_pi = study.sup_y2_over_pi;
  in.equal_probability = equal_probability;
  return in;
}

double log_cna_bound(const BoundInputs& in) {
  if (in.eps == 0.0) return 0.0;
  if (in.sup_ycheck == 0.0) return -std::numeric_limits<double>::infinity();
  return -(in.N * in.N * in.eps * in.eps) / (8.0 * in.n * in.sup_ycheck * in.sup_ycheck);
}

double log_cna_bound_Mc(const BoundInputs& in) {
  if (!in.M || !in.c) {
    throw Error(ErrorCode::kNotApplicable, "the M/c form needs both M and c");
  }
  return -(in.n * *in.c * *in.c * in.eps * in.eps) / (8.0 * *in.M * *in.M);
}

double log_bernstein_bound(const BoundInputs& in) {
  const double denominator = 8.0 * (1.0 - in.n / in.N) * in.sup_y2_over_pi +
                             (4.0 / 3.0) * in.eps * in.sup_ycheck;
  if (!(denominator > 0.0)) return std::numbers::ln2;
  return std::numbers::ln2 - in.eps * in.eps * in.N / denominator;
}

double log_lipschitz_bound(const BoundInputs& in) {
  if (in.eps == 0.0) return 0.0;
  if (in.sum_sq_ycheck == 0.0) return -std::numeric_limits<double>::infinity();
  return -(in.N * in.N * in.eps * in.eps) / (8.0 * in.n * in.sum_sq_ycheck);
}

double cna_bound(const BoundInputs& in) { return std::exp(log_cna_bound(in)); }
double cna_bound_Mc(const BoundInputs& in) { return std::exp(log_cna_bound_Mc(in)); }
double bernstein_bound(const BoundInputs& in) { return std::exp(log_bernstein_bound(in)); }
double lipschitz_bound(const BoundInputs& in) { return std::exp(log_lipschitz_bound(in)); }

double eps_star(const BoundInputs& in) {
  if (!in.equal_probability) {
    throw Error(ErrorCode::kNotApplicable, "eps* is defined for equal probabilities only");
  }
  return 2.0 * (1.0 - in.n / in.N) * in.sup_y;
}

std::string_view prop1_regime_name(Prop1Regime regime) {
  switch (regime) {
    case Prop1Regime::kSmallNAllEps: return "SmallN_AllEps";
    case Prop1Regime::kLargeNEpsRange: return "LargeN_EpsRange";
    case Prop1Regime::kInconclusive: return "Inconclusive";
  }
  return "";
}

double prop1_small_n_threshold(double N) {
  return std::cbrt(kProp1Constant) * std::pow(N, 2.0 / 3.0);
}

Prop1Result prop1_regime(double N, double n, double sup_y) {
  require(std::isfinite(N) && std::isfinite(n) && n > 0.0 && n <= N, "need 0 < n <= N");
  if (n < prop1_small_n_threshold(N)) return {Prop1Regime::kSmallNAllEps, std::nullopt};
  const double ratio = N / n;
  if (n >= kProp1Constant * ratio * ratio) {
    return {Prop1Regime::kLargeNEpsRange, (3.0 - std::numbers::sqrt2) * (n / N) * sup_y};
  }
  return {Prop1Regime::kInconclusive, std::nullopt};
}

std::optional<double> dominance_limit(double N, double n, double sup_y) {
  require(std::isfinite(N) && std::isfinite(n) && n > 0.0 && n <= N, "need 0 < n <= N");
  if (!(sup_y > 0.0)) return std::nullopt;
  const double r = n / N;
  // With eps = sup_y * u, cna > bernstein exactly where q(u) > 0.
  const auto q = [&](double u) {
    return n * u * u * (8.0 * r - 4.0 * u / 3.0) -
           8.0 * std::numbers::ln2 * (8.0 * (1.0 - r) + 4.0 * u / 3.0);
  };
  // q < 0 for u >= 6r, so any crossing lies in (0, 6r).
  constexpr int kScan = 1 << 16;
  const double hi = 6.0 * r;
  double prev = 0.0;
  for (int i = 1; i <= kScan; ++i) {
    const double u = hi * i / kScan;
    if (q(u) > 0.0) {
      double lo = prev;
      double up = u;
      for (int it = 0; it < 200 && up - lo > 1e-16 * up; ++it) {
        const double mid = 0.5 * (lo + up);
        (q(mid) > 0.0 ? up : lo) = mid;
      }
      return sup_y * 0.5 * (lo + up);
    }
    prev = u;
  }
  return std::nullopt;
}

SampleSizeSolution solve_sample_size(double M, double c, double eps, double eta,
                                     bool two_sided) {
  require(std::isfinite(M) && M > 0.0, "M must be positive");
  require(std::isfinite(c) && c > 0.0, "c must be positive");
  require(std::isfinite(eps) && eps > 0.0, "eps must be positive");
  require(std::isfinite(eta) && eta > 0.0, "eta must be positive");
  if (eta >= 1.0) return {0, true};
  const double k = two_sided ? 2.0 : 1.0;
  const double n = std::ceil(8.0 * M * M * std::log(k / eta) / (c * c * eps * eps));
  return {static_cast<std::uint64_t>(n), false};
}

double solve_confidence_radius(const BoundInputs& in, double eta, bool two_sided) {
  in.validate();
  require(std::isfinite(eta) && eta > 0.0 && eta < 1.0, "eta must lie in (0, 1)");
  const double k = two_sided ? 2.0 : 1.0;
  return in.sup_ycheck * std::sqrt(8.0 * in.n * std::log(k / eta)) / in.N;
}

TailBoundReport evaluate_bounds(const BoundInputs& in, bool two_sided) {
  in.validate();
  const double k = two_sided ? 2.0 : 1.0;
  TailBoundReport out;
  out.eps = in.eps;
  out.two_sided_factor_applied = two_sided;
  out.cna_raw = cna_bound(in);
  out.bernstein_raw = bernstein_bound(in);
  out.lipschitz_raw = lipschitz_bound(in);
  out.cna = clamp_report(k * out.cna_raw);
  out.bernstein = clamp_report(out.bernstein_raw);
  out.lipschitz = clamp_report(k * out.lipschitz_raw);
  if (in.M && in.c) {
    out.cna_Mc_raw = cna_bound_Mc(in);
    out.cna_Mc_form = clamp_report(k * *out.cna_Mc_raw);
  }
  if (in.equal_probability) out.eps_star = eps_star(in);
  out.prop1 = prop1_regime(in.N, in.n, in.sup_y);
  return out;
}

std::vector<TailBoundReport> evaluate_bounds(BoundInputs in, std::span<const double> eps_grid,
                                             bool two_sided) {
  std::vector<TailBoundReport> out;
  out.reserve(eps_grid.size());
  for (double eps : eps_grid) {
    in.eps = eps;
    out.push_back(evaluate_bounds(in, two_sided));
  }
  return out;
}

std::vector<double> log_grid(double hi, std::size_t count) {
  std::vector<double> out(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double frac = count == 1 ? 1.0 : static_cast<double>(i) / (count - 1);
    out[i] = hi * std::pow(10.0, -4.0 + 4.0 * frac);
  }
  if (!out.empty()) out.back() = hi;
  return out;
}

}  // namespace splitsamp
