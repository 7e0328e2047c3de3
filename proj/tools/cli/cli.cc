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

#include "cli.h"

#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "experiment.h"
#include "splitsamp/bounds.h"
#include "splitsamp/designs.h"
#include "splitsamp/distribution.h"
#include "splitsamp/error.h"
#include "splitsamp/estimation.h"
#include "splitsamp/json_io.h"
#include "splitsamp/oracle.h"
#include "splitsamp/population.h"

namespace splitsamp::cli {

namespace {

double parse_number(const std::string& token) {
  const auto power = token.find('^');
  if (power != std::string::npos) {
    return std::pow(parse_number(token.substr(0, power)),
                    parse_number(token.substr(power + 1)));
  }
  double v = 0.0;
  const char* first = token.data();
  const char* last = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) {
    throw Error(ErrorCode::kParse, "not a number: '" + token + "'");
  }
  return v;
}

// "1,2,3" or "10^2,10^2.5".
std::vector<double> parse_number_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string token;
  while (std::getline(ss, token, ',')) {
    if (!token.empty()) out.push_back(parse_number(token));
  }
  if (out.empty()) throw Error(ErrorCode::kParse, "empty number list");
  return out;
}

DesignKind parse_design(const std::string& tag) {
  const auto kind = parse_design_tag(tag);
  if (!kind) {
    throw Error(ErrorCode::kInvalidInput,
                "unknown design '" + tag + "' (expected srswor, chao, tille, midzuno or brewer)");
  }
  return *kind;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream file(path);
  if (!file) throw Error(ErrorCode::kInvalidInput, "cannot write '" + path + "'");
  file.precision(17);
  return file;
}

// Output file when a path is given, the command stream otherwise.
class Output {
 public:
  Output(const std::string& path, std::ostream& fallback) {
    if (!path.empty()) file_ = open_output(path);
    stream_ = path.empty() ? &fallback : &*file_;
  }
  std::ostream& operator*() { return *stream_; }

 private:
  std::optional<std::ofstream> file_;
  std::ostream* stream_;
};

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

DesignInputs inputs_from_file(const PopulationFile& file, std::optional<int> n) {
  if (file.pi) {
    if (n && *n != file.pi->n()) {
      throw Error(ErrorCode::kInvalidSize, "--n " + std::to_string(*n) +
                                               " disagrees with the probabilities, which sum to " +
                                               std::to_string(file.pi->n()));
    }
    return DesignInputs::from_probabilities(*file.pi);
  }
  if (!n) throw Error(ErrorCode::kInvalidInput, "--n is required for an id,x,y population");
  return DesignInputs::from_sizes(file.population.sizes(), *n);
}

// ---------------------------------------------------------------------------

struct SampleOptions {
  std::string design;
  std::string population;
  std::optional<int> n;
  std::uint64_t seed = 1;
  std::string out;
  std::string sidecar;
  std::optional<std::uint64_t> shuffle_stream;
  std::string trace_out;
};

int cmd_sample(const SampleOptions& opt, std::ostream& out) {
  const DesignKind kind = parse_design(opt.design);
  const PopulationFile file = load_population(opt.population);
  DesignInputs inputs = inputs_from_file(file, opt.n);
  if (opt.shuffle_stream) {
    inputs.set_stream_order(shuffled_order(inputs.size(), *opt.shuffle_stream));
  }
  const TraceMode mode = opt.trace_out.empty() ? TraceMode::kOff : TraceMode::kOn;
  const DesignRun run = sample_design(kind, inputs, opt.seed, mode);

  const std::vector<std::string> ids = file.population.ids();
  {
    Output sink(opt.out, out);
    for (std::size_t k : run.sample.selected()) *sink << ids[k] << '\n';
  }
  if (run.trace) {
    std::ofstream trace = open_output(opt.trace_out);
    write_trace_dump(*run.trace, trace);
  }
  const std::string sidecar = !opt.sidecar.empty() ? opt.sidecar
                              : !opt.out.empty()   ? opt.out + ".json"
                                                   : std::string();
  if (!sidecar.empty()) {
    const std::vector<double> pi = design_target_pi(kind, inputs);
    const std::vector<double> y = file.population.study();
    const CheckedStudyVector checked = check_study_vector(y, pi);
    const HTResult ht = ht_estimate(run.sample, checked, file.population.total_y());
    nlohmann::json j;
    j["design"] = design_tag(kind);
    j["seed"] = opt.seed;
    j["N"] = inputs.size();
    j["n"] = run.sample.size();
    nlohmann::json selected = nlohmann::json::array();
    for (std::size_t k : run.sample.selected()) selected.push_back(ids[k]);
    j["selected"] = selected;
    j["ids"] = ids;
    j["pi"] = pi;
    j["t_hat"] = ht.t_hat;
    j["t_y"] = ht.t_y;
    j["error"] = ht.error;
    j["normalized_error"] = ht.normalized_error;
    std::ofstream side = open_output(sidecar);
    side << j.dump(2) << '\n';
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct BoundsOptions {
  std::string population;
  std::string design = "chao";
  std::optional<int> n;
  std::optional<double> N;
  std::optional<double> n_real;
  std::optional<double> sup_ycheck;
  std::optional<double> sum_sq_ycheck;
  std::optional<double> sup_y;
  std::optional<double> sup_y2_over_pi;
  std::optional<double> eps;
  std::optional<double> eta;
  std::optional<double> M;
  std::optional<double> c;
  bool two_sided = false;
  bool solve_n = false;
  bool solve_eps = false;
  bool equal_probability = false;
  std::string out;
};

template <class T>
T required(const std::optional<T>& v, const char* flag) {
  if (!v) throw Error(ErrorCode::kInvalidInput, std::string(flag) + " is required");
  return *v;
}

BoundInputs bound_inputs(const BoundsOptions& opt) {
  BoundInputs in;
  if (!opt.population.empty()) {
    const DesignKind kind = parse_design(opt.design);
    const PopulationFile file = load_population(opt.population);
    const DesignInputs inputs = inputs_from_file(file, opt.n);
    const std::vector<double> pi = design_target_pi(kind, inputs);
    const CheckedStudyVector study = check_study_vector(file.population.study(), pi);
    bool equal = true;
    for (double p : pi) equal = equal && std::abs(p - pi[0]) <= 1e-12;
    in = BoundInputs::from_study(study, static_cast<double>(inputs.size()),
                                 static_cast<double>(inputs.n()), 0.0, equal);
  } else {
    in.N = required(opt.N, "--N (or --population)");
    in.n = opt.n_real ? *opt.n_real : static_cast<double>(required(opt.n, "--n"));
    in.sup_ycheck = required(opt.sup_ycheck, "--sup-ycheck");
    in.sum_sq_ycheck = required(opt.sum_sq_ycheck, "--sum-sq-ycheck");
    in.sup_y = required(opt.sup_y, "--sup-y");
    in.sup_y2_over_pi = required(opt.sup_y2_over_pi, "--sup-y2-over-pi");
    in.equal_probability = opt.equal_probability;
  }
  in.M = opt.M;
  in.c = opt.c;
  return in;
}

int cmd_bounds(const BoundsOptions& opt, std::ostream& out) {
  nlohmann::json j;
  if (opt.solve_n) {
    const double eps = required(opt.eps, "--eps");
    const double eta = required(opt.eta, "--eta");
    const SampleSizeSolution s = solve_sample_size(required(opt.M, "--M"),
                                                   required(opt.c, "--c"), eps, eta,
                                                   opt.two_sided);
    j["solve_n"] = s.n;
    j["vacuous"] = s.vacuous;
    if (s.vacuous) j["warning"] = "eta >= 1 makes the bound vacuous; n = 0";
    j["M"] = *opt.M;
    j["c"] = *opt.c;
    j["eps"] = eps;
    j["eta"] = eta;
    j["two_sided"] = opt.two_sided;
  } else {
    BoundInputs in = bound_inputs(opt);
    std::optional<double> radius;
    if (opt.solve_eps) {
      radius = solve_confidence_radius(in, required(opt.eta, "--eta"), opt.two_sided);
      in.eps = *radius;
    } else {
      in.eps = required(opt.eps, "--eps");
    }
    j = to_json(evaluate_bounds(in, opt.two_sided));
    j["N"] = in.N;
    j["n"] = in.n;
    if (radius) {
      j["confidence_radius"] = *radius;
      j["eta"] = *opt.eta;
    }
  }
  Output sink(opt.out, out);
  *sink << j.dump(2) << '\n';
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct VerifyOptions {
  std::string design;
  std::string x;
  std::string y;
  std::string population;
  std::optional<int> n;
  std::size_t max_N = kMaxEnumerationSize;
  std::size_t max_branches = kDefaultMaxBranches;
  std::string dump;
};

class VerifyReport {
 public:
  explicit VerifyReport(std::ostream& out) : out_(out) {}

  void line(const std::string& check, const std::string& value, double metric, double tol,
            bool informational = false) {
    const bool ok = metric <= tol;
    const char* verdict = informational ? "INFO" : ok ? "PASS" : "FAIL";
    if (!informational && !ok) failed_ = true;
    out_ << check << std::string(check.size() < 18 ? 18 - check.size() : 1, ' ') << value
         << "  (tol " << format_number(tol) << ")  " << verdict << '\n';
  }
  void skip(const std::string& check, const std::string& reason) {
    out_ << check << std::string(check.size() < 18 ? 18 - check.size() : 1, ' ') << reason
         << "  SKIP\n";
  }
  bool failed() const { return failed_; }

 private:
  std::ostream& out_;
  bool failed_ = false;
};

int cmd_verify(const VerifyOptions& opt, std::ostream& out) {
  const DesignKind kind = parse_design(opt.design);
  std::vector<double> x;
  std::vector<double> y;
  std::vector<std::string> labels;
  std::optional<PopulationFile> file;
  if (!opt.population.empty()) {
    file = load_population(opt.population);
    x = file->population.sizes();
    y = file->population.study();
    labels = file->population.ids();
  } else {
    if (opt.x.empty()) throw Error(ErrorCode::kInvalidInput, "--x (or --population) is required");
    x = parse_number_list(opt.x);
    y = opt.y.empty() ? x : parse_number_list(opt.y);
  }
  if (y.size() != x.size()) throw Error(ErrorCode::kDimensionMismatch, "--y length differs");
  if (x.size() > opt.max_N) {
    throw Error(ErrorCode::kEnumerationTooLarge,
                "N=" + std::to_string(x.size()) + " exceeds --max-N=" +
                    std::to_string(opt.max_N) +
                    "; exact enumeration is exponential in N, use N <= " +
                    std::to_string(kMaxEnumerationSize));
  }
  const DesignInputs inputs = file ? inputs_from_file(*file, opt.n)
                                   : DesignInputs::from_sizes(x, required(opt.n, "--n"));
  const ExactDesignDistribution dist = enumerate_design(kind, inputs, opt.max_branches);
  const std::vector<double> target = design_target_pi(kind, inputs);
  const std::size_t n = static_cast<std::size_t>(inputs.n());

  out << "design=" << design_tag(kind) << " N=" << inputs.size() << " n=" << n
      << " support=" << dist.support().size() << " source=" << dist.source() << '\n';
  VerifyReport report(out);
  const double mass_gap = std::abs(dist.total_mass() - 1.0);
  report.line("mass", "|sum p - 1|=" + format_number(mass_gap), mass_gap,
              kDistributionTolerance);
  const bool fixed = dist.fixed_size() && *dist.fixed_size() == n;
  report.line("fixed_size", fixed ? "every sample has size " + std::to_string(n)
                                  : std::string("sample sizes vary"),
              fixed ? 0.0 : 1.0, 0.0);

  const InclusionMatrix pi = inclusion_probabilities(dist);
  double incl = 0.0;
  for (std::size_t k = 0; k < target.size(); ++k) {
    incl = std::max(incl, std::abs(pi.first[k] - target[k]));
  }
  report.line("inclusion", "max|pi_hat - pi|=" + format_number(incl), incl,
              kDistributionTolerance);

  const bool informational = kind == DesignKind::kBrewer;
  if (dist.fixed_size()) {
    const CsygReport csyg = check_csyg(dist);
    std::string witness = "k=" + std::to_string(csyg.witness.k + 1) +
                          " l=" + std::to_string(csyg.witness.l + 1) + " I={";
    for (std::size_t i = 0; i < csyg.witness.conditioning.size(); ++i) {
      witness += (i ? "," : "") + std::to_string(csyg.witness.conditioning[i] + 1);
    }
    witness += "}";
    report.line("csyg", "max_violation=" + format_number(csyg.max_violation) + " at " +
                            witness + " checked=" + std::to_string(csyg.checked_count) +
                            " skipped=" + std::to_string(csyg.skipped_count),
                csyg.max_violation, kInequalityTolerance, informational);
    report.line("csyg_conditional", "max_violation=" + format_number(csyg.eq6_max_violation),
                csyg.eq6_max_violation, kInequalityTolerance, informational);
  } else {
    report.skip("csyg", "design is not fixed-size");
  }

  if (inputs.size() >= 2) {
    const double cov = check_pairwise_na(dist);
    report.line("pairwise_na", "max_cov=" + format_number(cov), cov, kInequalityTolerance);
  } else {
    report.skip("pairwise_na", "needs two units");
  }
  const double bias = unbiasedness_check(dist, y, target);
  report.line("unbiasedness", "|E t_hat - t_y|=" + format_number(bias), bias, 1e-8);

  if (kind == DesignKind::kGeneralizedMidzuno) {
    bool interior = n < inputs.size();
    std::vector<double> rest(target.size());
    for (std::size_t k = 0; k < target.size(); ++k) {
      rest[k] = 1.0 - target[k];
      interior = interior && rest[k] > 0.0;
    }
    if (interior) {
      const DesignInputs tille_inputs =
          DesignInputs::from_sizes(rest, static_cast<int>(inputs.size() - n));
      const ExactDesignDistribution tille =
          enumerate_design(DesignKind::kTilleElimination, tille_inputs, opt.max_branches);
      const double tv = total_variation(dist, complement(tille));
      report.line("complementarity", "TV(midzuno, complement of tille(1-pi))=" +
                                         format_number(tv),
                  tv, kDistributionTolerance);
    } else {
      report.skip("complementarity", "needs every pi < 1");
    }
  }

  if (!opt.dump.empty()) {
    std::ofstream dump = open_output(opt.dump);
    write_distribution_dump(dist, dump, labels);
  }
  return report.failed() ? kExitInternal : kExitOk;
}

// ---------------------------------------------------------------------------

struct ExperimentOptions {
  ExperimentConfig config;
  std::string sigma;
  std::string n_list;
  std::string out;
};

int cmd_experiment(ExperimentOptions opt, std::ostream& out) {
  if (!opt.sigma.empty()) opt.config.sigma_list = parse_number_list(opt.sigma);
  if (!opt.n_list.empty()) opt.config.n_list = parse_number_list(opt.n_list);
  const std::vector<ExperimentRow> rows = run_experiment(opt.config);
  Output sink(opt.out, out);
  write_experiment_csv(rows, *sink);
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fixed-size unequal-probability sampling, tail bounds and exact verification",
               "splitsamp"};
  app.require_subcommand(1);

  SampleOptions sample_opt;
  CLI::App* sample = app.add_subcommand("sample", "Draw one sample from a population file");
  sample->add_option("--design", sample_opt.design, "srswor|chao|tille|midzuno|brewer")
      ->required();
  sample->add_option("--population", sample_opt.population, "CSV with id,x,y or id,pi,y")
      ->required();
  sample->add_option("--n", sample_opt.n, "Sample size (implied by an id,pi,y file)");
  sample->add_option("--seed", sample_opt.seed, "Random seed");
  sample->add_option("--out", sample_opt.out, "Selected ids, one per line (default stdout)");
  sample->add_option("--sidecar", sample_opt.sidecar, "JSON sidecar path (default <out>.json)");
  sample->add_option("--shuffle-stream", sample_opt.shuffle_stream,
                     "Seed for a shuffled Chao arrival order");
  sample->add_option("--trace-out", sample_opt.trace_out, "Write the splitting trace dump");

  BoundsOptions bounds_opt;
  CLI::App* bounds = app.add_subcommand("bounds", "Evaluate or invert the tail bounds");
  bounds->add_option("--population", bounds_opt.population, "Compute statistics from a file");
  bounds->add_option("--design", bounds_opt.design, "Design giving pi for --population");
  bounds->add_option("--n", bounds_opt.n, "Sample size");
  bounds->add_option("--n-real", bounds_opt.n_real, "Average sample size (raw statistics)");
  bounds->add_option("--N", bounds_opt.N, "Population size (raw statistics)");
  bounds->add_option("--sup-ycheck", bounds_opt.sup_ycheck, "sup |y_k / pi_k|");
  bounds->add_option("--sum-sq-ycheck", bounds_opt.sum_sq_ycheck, "sum (y_k / pi_k)^2");
  bounds->add_option("--sup-y", bounds_opt.sup_y, "sup |y_k|");
  bounds->add_option("--sup-y2-over-pi", bounds_opt.sup_y2_over_pi, "sup y_k^2 / pi_k");
  bounds->add_option("--eps", bounds_opt.eps, "Per-unit error scale");
  bounds->add_option("--eta", bounds_opt.eta, "Target tail probability");
  bounds->add_option("--M", bounds_opt.M, "Bound on |y_k|");
  bounds->add_option("--c", bounds_opt.c, "Lower-rate constant: pi_k >= c n / N");
  bounds->add_flag("--two-sided", bounds_opt.two_sided, "Bound Pr(|error| >= N eps)");
  bounds->add_flag("--solve-n", bounds_opt.solve_n, "Smallest n for (M, c, eps, eta)");
  bounds->add_flag("--solve-eps", bounds_opt.solve_eps, "Confidence radius for eta");
  bounds->add_flag("--equal-probability", bounds_opt.equal_probability,
                   "Raw statistics come from pi = n / N");
  bounds->add_option("--out", bounds_opt.out, "JSON output path (default stdout)");

  VerifyOptions verify_opt;
  CLI::App* verify = app.add_subcommand("verify", "Enumerate a design exactly and check it");
  verify->add_option("--design", verify_opt.design, "srswor|chao|tille|midzuno|brewer")
      ->required();
  verify->add_option("--x", verify_opt.x, "Comma-separated sizes");
  verify->add_option("--y", verify_opt.y, "Comma-separated study values (default x)");
  verify->add_option("--population", verify_opt.population, "CSV instead of --x/--y");
  verify->add_option("--n", verify_opt.n, "Sample size");
  verify->add_option("--max-N", verify_opt.max_N, "Largest N to enumerate");
  verify->add_option("--max-branches", verify_opt.max_branches, "Enumeration budget");
  verify->add_option("--dump", verify_opt.dump, "Write the distribution as sample;probability");

  ExperimentOptions exp_opt;
  CLI::App* experiment =
      app.add_subcommand("experiment", "Bernstein minus CNA bound curves on synthetic data");
  experiment->add_option("--N", exp_opt.config.N, "Population size");
  experiment->add_option("--sigma", exp_opt.sigma, "Noise levels, e.g. 0,0.5,1,5");
  experiment->add_option("--n-list", exp_opt.n_list, "Sample sizes, e.g. 10^2,10^2.5");
  experiment->add_option("--eps-count", exp_opt.config.eps_count, "Grid points per curve");
  experiment->add_option("--eps-max", exp_opt.config.eps_max,
                         "Grid end (default twice the mean of y)");
  experiment->add_option("--seed", exp_opt.config.seed, "Random seed");
  experiment->add_option("--out", exp_opt.out, "CSV output path (default stdout)");

  std::vector<const char*> argv{"splitsamp"};
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (*sample) return cmd_sample(sample_opt, out);
    if (*bounds) return cmd_bounds(bounds_opt, out);
    if (*verify) return cmd_verify(verify_opt, out);
    if (*experiment) return cmd_experiment(exp_opt, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.is_input_error() ? kExitInput : kExitInternal;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitInternal;
}

}  // namespace splitsamp::cli
