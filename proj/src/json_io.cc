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

#include "splitsamp/json_io.h"

namespace splitsamp {

namespace {

nlohmann::json optional_number(const std::optional<double>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

}  // namespace

nlohmann::json to_json(const TailBoundReport& report) {
  nlohmann::json j;
  j["eps"] = report.eps;
  j["cna"] = report.cna;
  j["cna_Mc_form"] = optional_number(report.cna_Mc_form);
  j["bernstein"] = report.bernstein;
  j["lipschitz"] = report.lipschitz;
  j["cna_raw"] = report.cna_raw;
  j["cna_Mc_raw"] = optional_number(report.cna_Mc_raw);
  j["bernstein_raw"] = report.bernstein_raw;
  j["lipschitz_raw"] = report.lipschitz_raw;
  j["two_sided_factor_applied"] = report.two_sided_factor_applied;
  j["eps_star"] = optional_number(report.eps_star);
  j["prop1_regime"] = prop1_regime_name(report.prop1.regime);
  j["prop1_limit"] = optional_number(report.prop1.limit);
  return j;
}

}  // namespace splitsamp
