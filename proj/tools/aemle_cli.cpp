// Copyright 2026 The aemle Authors
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

// Command line front end: aemle <subcommand> [flags].

#include <CLI11.hpp>

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "aemle/errors.hpp"
#include "aemle/estimator.hpp"
#include "aemle/fisher.hpp"
#include "aemle/hwspec.hpp"
#include "aemle/integrate.hpp"
#include "aemle/io.hpp"
#include "aemle/model.hpp"
#include "aemle/sampler.hpp"
#include "aemle/survey.hpp"

namespace {

using aemle::Table;
using nlohmann::ordered_json;

constexpr std::uint64_t kDefaultSeed = 20200901;
constexpr int kExitUsage = 2;
constexpr int kExitCompute = 3;

struct GlobalOptions {
  std::optional<std::uint64_t> seed;
  std::string format = "csv";
  std::string output;
  unsigned threads = 0;
};

std::uint64_t resolve_seed(const GlobalOptions& g) {
  if (g.seed) return *g.seed;
  if (const char* env = std::getenv("AEMLE_SEED")) {
    std::string text(env);
    try {
      std::size_t used = 0;
      const unsigned long long v = std::stoull(text, &used);
      if (used != text.size() || text.empty() || text[0] == '-') {
        throw std::invalid_argument(text);
      }
      return v;
    } catch (const std::logic_error&) {
      throw aemle::ParseError("AEMLE_SEED is not a non-negative integer: '" +
                              text + "'");
    }
  }
  return kDefaultSeed;
}

std::string header_value(const ordered_json& v) {
  if (v.is_number_float()) return aemle::format_real(v.get<double>());
  if (v.is_string()) return v.get<std::string>();
  if (v.is_null()) return "none";
  if (v.is_array()) {
    std::string joined;
    for (const auto& item : v) {
      if (!joined.empty()) joined += ',';
      joined += header_value(item);
    }
    return joined;
  }
  return v.dump();
}

/// What a subcommand produces. Either a table or a JSON document plus
/// optional custom CSV/text writers.
struct Output {
  std::optional<Table> table;
  ordered_json document;
  std::function<void(std::ostream&)> csv;
  std::function<void(std::ostream&)> text;
};

void emit(const std::string& command, ordered_json params, std::uint64_t seed,
          const Output& out, const GlobalOptions& g) {
  std::ostringstream body;
  if (g.format == "json") {
    ordered_json header;
    header["tool"] = "aemle";
    header["version"] = AEMLE_VERSION;
    header["command"] = command;
    header["params"] = params;
    header["seed"] = seed;
    ordered_json doc;
    doc["header"] = header;
    doc["result"] = out.table ? ordered_json::parse(out.table->to_json().dump())
                              : out.document;
    body << doc.dump(2) << '\n';
  } else {
    body << "# aemle " << AEMLE_VERSION << " command=" << command;
    for (auto it = params.begin(); it != params.end(); ++it) {
      body << ' ' << it.key() << '=' << header_value(it.value());
    }
    body << " seed=" << seed << '\n';
    if (g.format == "table") {
      if (out.text) {
        out.text(body);
      } else if (out.table) {
        out.table->write_aligned(body);
      } else {
        out.csv(body);
      }
    } else if (out.csv) {
      out.csv(body);
    } else {
      out.table->write_csv(body);
    }
  }
  if (g.output.empty()) {
    std::cout << body.str();
    std::cout.flush();
    return;
  }
  std::ofstream file(g.output, std::ios::binary);
  if (!file) throw aemle::ParseError("cannot write '" + g.output + "'");
  file << body.str();
}

struct PointOptions {
  double a = 0.375;
  double kappa = 0.0;
  std::string integrand;

  void add(CLI::App* app) {
    app->add_option("--a", a, "target amplitude a in [0, 1]")
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
    app->add_option("--kappa", kappa, "noise level kappa >= 0")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    app->add_option("--integrand", integrand,
                    "set a from an integrand: \"sin2(b, n)\" or a JSON file");
  }

  double resolved_a() const {
    if (integrand.empty()) return a;
    if (integrand.size() > 5 &&
        integrand.compare(integrand.size() - 5, 5, ".json") == 0) {
      return aemle::target_amplitude(aemle::integrand_from_json(
          aemle::parse_json(aemle::read_text_file(integrand))));
    }
    return aemle::target_amplitude(aemle::parse_named_integrand(integrand));
  }

  aemle::AmplitudePoint point() const {
    return aemle::amplitude_point(resolved_a(), kappa);
  }

  void describe(ordered_json& p) const {
    p["a"] = resolved_a();
    p["kappa"] = kappa;
    if (!integrand.empty()) p["integrand"] = integrand;
  }
};

struct ScheduleOptions {
  std::string kind = "eis";
  int M = 6;
  std::int64_t shots = 100;
  std::optional<double> r;

  void add(CLI::App* app, const char* m_help = "number of stages after m=0") {
    app->add_option("--kind", kind, "classical, lis, eis or power_base")
        ->capture_default_str();
    app->add_option("--M", M, m_help)
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    app->add_option("--shots", shots, "shots per stage")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    app->add_option("--r", r, "base of a power_base schedule");
  }

  aemle::ScheduleKind parsed_kind() const {
    return aemle::parse_schedule_kind(kind);
  }

  aemle::Schedule build() const {
    return aemle::make_schedule(parsed_kind(), M, shots, r);
  }

  void describe(ordered_json& p) const {
    p["kind"] = aemle::to_string(parsed_kind());
    p["M"] = M;
    p["shots"] = shots;
    if (r) p["r"] = *r;
  }
};

struct MleOptions {
  aemle::MleConfig config;

  void add(CLI::App* app) {
    app->add_option("--divisions", config.divisions_per_stage,
                    "grid divisions per axis and stage")
        ->capture_default_str();
    app->add_option("--chebyshev-scale", config.chebyshev_factor_scale,
                    "scale of the confidence box factor")
        ->capture_default_str();
    app->add_option("--eps-target", config.epsilon_target,
                    "accuracy target entering the box factor")
        ->capture_default_str();
    app->add_option("--kappa-min", config.kappa_init_range.first,
                    "lower end of the kappa search range")
        ->capture_default_str();
    app->add_option("--kappa-max", config.kappa_init_range.second,
                    "upper end of the kappa search range")
        ->capture_default_str();
  }

  void describe(ordered_json& p) const {
    p["divisions"] = config.divisions_per_stage;
    p["chebyshev_scale"] = config.chebyshev_factor_scale;
    p["eps_target"] = config.epsilon_target;
    p["kappa_min"] = config.kappa_init_range.first;
    p["kappa_max"] = config.kappa_init_range.second;
  }
};

double beta_or_nan(const aemle::FisherMatrix& f) {
  try {
    return aemle::anomality(f);
  } catch (const aemle::Error&) {
    return std::nan("");
  }
}

void run_crbound(const PointOptions& pt, const ScheduleOptions& so,
                 const GlobalOptions& g) {
  const aemle::AmplitudePoint point = pt.point();
  const aemle::Schedule full = so.build();
  const std::int64_t mbar = point.kappa() > 0.0
                                ? aemle::max_grover_depth(point.kappa())
                                : -1;
  Table t({"M", "N_q", "max_depth", "epsilon_min", "classical_bound",
           "identifiable", "beta", "beyond_mbar"});
  for (std::size_t k = 1; k <= full.size(); ++k) {
    const aemle::Schedule s = full.prefix(k);
    const aemle::FisherMatrix f = aemle::fisher_matrix(point, s);
    const aemle::CrBoundResult bound = aemle::cr_lower_bound(f);
    const auto nq = aemle::total_queries(s);
    t.add_row({static_cast<int>(k) - 1, nq, s.max_depth(), bound.epsilon_min,
               std::sqrt(point.a() * (1.0 - point.a()) /
                         static_cast<double>(nq)),
               bound.identifiable, beta_or_nan(f),
               mbar >= 0 && s.max_depth() > mbar});
  }
  ordered_json p;
  pt.describe(p);
  so.describe(p);
  emit("crbound", p, resolve_seed(g), {t, {}, {}, {}}, g);
}

struct EstimateOptions {
  std::string data_path;
  bool simulate = false;
  std::optional<double> profile_kappa;
  std::string save_data;
};

void run_estimate(const EstimateOptions& eo, const PointOptions& pt,
                  const ScheduleOptions& so, const MleOptions& mo,
                  const GlobalOptions& g) {
  if (eo.simulate == !eo.data_path.empty()) {
    throw aemle::ConfigError("give exactly one of --data or --simulate");
  }
  const std::uint64_t seed = resolve_seed(g);
  ordered_json p;
  std::optional<aemle::ExperimentData> data;
  if (eo.simulate) {
    pt.describe(p);
    so.describe(p);
    data = aemle::sample_counts(pt.point(), so.build(), seed);
  } else {
    p["data"] = eo.data_path;
    data = aemle::experiment_from_json(
        aemle::parse_json(aemle::read_text_file(eo.data_path)));
  }
  mo.describe(p);
  if (!eo.save_data.empty()) {
    std::ofstream file(eo.save_data, std::ios::binary);
    if (!file) throw aemle::ParseError("cannot write '" + eo.save_data + "'");
    file << aemle::experiment_to_json(*data).dump(2) << '\n';
  }
  if (eo.profile_kappa) {
    p["profile_kappa"] = *eo.profile_kappa;
    const double a_hat = aemle::mle_profile_1d(*data, *eo.profile_kappa,
                                               mo.config);
    Table t({"a_hat", "kappa_fixed", "stages"});
    t.add_row({a_hat, *eo.profile_kappa, data->size()});
    emit("estimate", p, seed, {t, {}, {}, {}}, g);
    return;
  }
  const aemle::EstimateResult r = aemle::mle_grid_adaptive(*data, mo.config);
  Table t({"a_hat", "kappa_hat", "log_likelihood", "likelihood_evaluations",
           "kappa_identifiable", "beta", "anomalous", "stages"});
  t.add_row({r.a_hat, r.kappa_hat, r.log_likelihood_at_max,
             r.likelihood_evaluations, r.kappa_identifiable,
             r.anomality ? *r.anomality : std::nan(""), r.anomalous,
             data->size()});
  emit("estimate", p, seed, {t, {}, {}, {}}, g);
  if (r.anomalous) {
    std::cerr << "warning: estimate is anomalous (beta > "
              << aemle::kAnomalyThreshold
              << "); re-run with --kind power_base --r 2.5\n";
  }
}

void run_trials(const PointOptions& pt, const ScheduleOptions& so,
                const MleOptions& mo, int trials, const GlobalOptions& g) {
  const std::uint64_t seed = resolve_seed(g);
  aemle::TrialOptions options{so.r, g.threads};
  const aemle::TrialBatchResult batch =
      aemle::run_trials(pt.point(), so.parsed_kind(), so.M, so.shots, trials,
                        seed, mo.config, options);
  ordered_json p;
  pt.describe(p);
  so.describe(p);
  p["trials"] = trials;
  mo.describe(p);
  emit("trials", p, seed, {aemle::trials_table(batch), {}, {}, {}}, g);
}

struct DensityOptions {
  std::vector<double> kappas{1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6};
  std::int64_t samples = 100000;
  double threshold = aemle::kAnomalyThreshold;
  std::int64_t shots = 100;
  int max_M = 25;
};

void run_density(const DensityOptions& d, const GlobalOptions& g) {
  const std::uint64_t seed = resolve_seed(g);
  std::vector<aemle::DensityResult> results;
  for (double kappa : d.kappas) {
    results.push_back(aemle::anomaly_density(
        kappa, d.samples, d.threshold,
        aemle::anomaly_schedule(kappa, d.shots, d.max_M), seed, g.threads));
  }
  ordered_json p;
  p["kappa"] = d.kappas;
  p["samples"] = d.samples;
  p["threshold"] = d.threshold;
  p["shots"] = d.shots;
  p["max_M"] = d.max_M;
  emit("density", p, seed, {aemle::density_table(results), {}, {}, {}}, g);
}

struct ContourOptions {
  double a_min = 0.0;
  double a_max = 1.0;
  std::size_t a_points = 199;
  double kappa_min = 1e-5;
  double kappa_max = 1e-1;
  std::size_t kappa_points = 41;
  std::int64_t shots = 100;
  int max_M = 25;
  bool trace = false;
};

void run_contour(const ContourOptions& c, const GlobalOptions& g) {
  if (!(c.a_min < c.a_max)) throw aemle::ConfigError("--a-min must be < --a-max");
  const std::vector<double> a_grid = aemle::open_grid(c.a_min, c.a_max, c.a_points);
  const std::vector<double> k_grid =
      aemle::log_grid(c.kappa_min, c.kappa_max, c.kappa_points);
  ordered_json p;
  p["a_min"] = c.a_min;
  p["a_max"] = c.a_max;
  p["a_points"] = c.a_points;
  p["kappa_min"] = c.kappa_min;
  p["kappa_max"] = c.kappa_max;
  p["kappa_points"] = c.kappa_points;
  p["shots"] = c.shots;
  p["max_M"] = c.max_M;
  p["trace"] = c.trace;
  if (c.trace) {
    Table t({"kappa", "a", "beta", "epsilon_min"});
    for (double kappa : k_grid) {
      const auto trace = aemle::anomaly_trace(
          a_grid, kappa, aemle::anomaly_schedule(kappa, c.shots, c.max_M),
          g.threads);
      for (const auto& pt : trace) t.add_row({kappa, pt.a, pt.beta, pt.epsilon_min});
    }
    emit("contour", p, resolve_seed(g), {t, {}, {}, {}}, g);
    return;
  }
  const aemle::ContourGrid grid = aemle::error_vs_kappa_contour(
      a_grid, k_grid, c.shots, c.max_M, g.threads);
  Output out;
  out.document["a"] = grid.a_values;
  out.document["kappa"] = grid.kappa_values;
  ordered_json rows = ordered_json::array();
  for (const auto& row : grid.epsilon_min) {
    ordered_json r = ordered_json::array();
    for (double v : row) r.push_back(std::isfinite(v) ? ordered_json(v) : ordered_json());
    rows.push_back(r);
  }
  out.document["epsilon_min"] = rows;
  out.csv = [&grid](std::ostream& os) { aemle::write_contour_csv(os, grid); };
  emit("contour", p, resolve_seed(g), out, g);
}

void run_hwspec(aemle::HardwareAssumptions h, const std::string& reading,
                const GlobalOptions& g) {
  h.interval_reading = aemle::parse_interval_reading(reading);
  const aemle::HardwareReport report = aemle::compute_spec(h);
  ordered_json p;
  p["eps"] = h.epsilon_target;
  p["nint"] = h.n_int;
  p["shots"] = h.shots;
  p["t_single"] = h.t_single;
  p["t_cnot"] = h.t_cnot;
  p["t_measure"] = h.t_measure;
  p["interval_factor"] = h.interval_factor;
  p["error_ratio"] = h.error_ratio;
  p["kappa_bar"] = h.kappa_bar_override ? ordered_json(*h.kappa_bar_override)
                                        : ordered_json();
  p["scan_a"] = h.scan_a;
  p["interval"] = reading;
  Output out;
  out.document = ordered_json::parse(aemle::hwspec_to_json(report).dump());
  out.csv = [&report](std::ostream& os) { aemle::write_hwspec_csv(os, report); };
  out.text = [&report](std::ostream& os) {
    aemle::write_hwspec_table(os, report);
  };
  emit("hwspec", p, resolve_seed(g), out, g);
}

void run_hitcurve(const PointOptions& pt, std::vector<std::int64_t> depths,
                  int max_depth, std::int64_t shots, const GlobalOptions& g) {
  if (depths.empty()) {
    for (int m = 0; m <= max_depth; ++m) depths.push_back(m);
  }
  const std::uint64_t seed = resolve_seed(g);
  const aemle::AmplitudePoint point = pt.point();
  const auto curve = aemle::hit_rate_curve(point, depths, shots, seed);
  Table t({"m", "rate", "expected"});
  for (const auto& [m, rate] : curve) {
    t.add_row({m, rate, aemle::noisy_good_prob(aemle::GroverDepth(m), point)});
  }
  ordered_json p;
  pt.describe(p);
  p["depths"] = depths;
  p["shots"] = shots;
  emit("hitcurve", p, seed, {t, {}, {}, {}}, g);
}

void run_schedule(const ScheduleOptions& so, std::optional<double> kappa,
                  const std::string& cap, const GlobalOptions& g) {
  ordered_json p;
  so.describe(p);
  aemle::Schedule s = so.build();
  if (kappa) {
    aemle::DepthCap depth_cap;
    if (cap == "truncate") {
      depth_cap = aemle::DepthCap::Truncate;
    } else if (cap == "mbar") {
      depth_cap = aemle::DepthCap::CapAtMbar;
    } else {
      throw aemle::ParseError("--cap must be truncate or mbar");
    }
    s = aemle::noise_limited_schedule(so.parsed_kind(), *kappa, so.shots, so.r,
                                      depth_cap, so.M);
    p["kappa"] = *kappa;
    p["cap"] = cap;
  }
  Table t({"k", "m", "shots", "cumulative_queries"});
  std::int64_t queries = 0;
  for (std::size_t k = 0; k < s.size(); ++k) {
    queries += s[k].shots * (2 * s[k].depth + 1);
    t.add_row({k, s[k].depth, s[k].shots, queries});
  }
  Output out;
  out.document = ordered_json::parse(aemle::schedule_to_json(s).dump());
  out.table = std::move(t);
  if (g.format == "json") out.table.reset();
  emit("schedule", p, resolve_seed(g), out, g);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Noise-aware maximum-likelihood amplitude estimation"};
  app.set_version_flag("--version", AEMLE_VERSION);
  app.require_subcommand(1);
  // Subcommands inherit this, so global flags may follow the subcommand.
  app.fallthrough();

  GlobalOptions g;
  app.add_option("--seed", g.seed,
                 "random seed (default: $AEMLE_SEED, else " +
                     std::to_string(kDefaultSeed) + ")");
  app.add_option("--format", g.format, "csv, json or table")
      ->check(CLI::IsMember({"csv", "json", "table"}))
      ->capture_default_str();
  app.add_option("--output,-o", g.output, "write to a file instead of stdout");
  app.add_option("--threads", g.threads, "worker threads, 0 = all cores")
      ->capture_default_str();

  PointOptions pt;
  ScheduleOptions so;
  MleOptions mo;
  std::function<void()> action;

  CLI::App* crbound = app.add_subcommand("crbound", "Cramer-Rao bound versus M");
  pt.add(crbound);
  so.add(crbound);
  crbound->callback([&] { action = [&] { run_crbound(pt, so, g); }; });

  EstimateOptions eo;
  CLI::App* estimate = app.add_subcommand("estimate", "maximum-likelihood estimate");
  estimate->add_option("--data", eo.data_path, "ExperimentData JSON file");
  estimate->add_flag("--simulate", eo.simulate, "sample data from the model");
  estimate->add_option("--profile-kappa", eo.profile_kappa,
                       "one-dimensional estimate with kappa held fixed");
  estimate->add_option("--save-data", eo.save_data,
                       "write the experiment data used as JSON");
  pt.add(estimate);
  so.add(estimate);
  mo.add(estimate);
  estimate->callback([&] { action = [&] { run_estimate(eo, pt, so, mo, g); }; });

  int trial_count = 256;
  CLI::App* trials = app.add_subcommand("trials", "RMSE of repeated estimates");
  pt.add(trials);
  so.add(trials, "largest M; runs M = 1..M");
  mo.add(trials);
  trials->add_option("--trials", trial_count, "trials per M")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  trials->callback([&] { action = [&] { run_trials(pt, so, mo, trial_count, g); }; });

  DensityOptions dopt;
  CLI::App* density = app.add_subcommand("density", "density of anomalous targets");
  density->add_option("--kappa", dopt.kappas, "noise levels")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  density->add_option("--samples", dopt.samples, "samples of a per kappa")
      ->capture_default_str();
  density->add_option("--threshold", dopt.threshold, "beta threshold")
      ->capture_default_str();
  density->add_option("--shots", dopt.shots, "shots per stage")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  density->add_option("--max-M", dopt.max_M, "cap on the number of stages")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  density->callback([&] { action = [&] { run_density(dopt, g); }; });

  ContourOptions copt;
  CLI::App* contour = app.add_subcommand("contour", "eps_min over an (a, kappa) grid");
  contour->add_option("--a-min", copt.a_min, "grid lower end (exclusive)")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  contour->add_option("--a-max", copt.a_max, "grid upper end (exclusive)")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  contour->add_option("--a-points", copt.a_points, "interior a points")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  contour->add_option("--kappa-min", copt.kappa_min, "smallest kappa")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  contour->add_option("--kappa-max", copt.kappa_max, "largest kappa")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  contour->add_option("--kappa-points", copt.kappa_points, "log-spaced kappa points")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  contour->add_option("--shots", copt.shots, "shots per stage")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  contour->add_option("--max-M", copt.max_M, "cap on the number of stages")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  contour->add_flag("--trace", copt.trace, "emit beta and eps_min per (kappa, a)");
  contour->callback([&] { action = [&] { run_contour(copt, g); }; });

  aemle::HardwareAssumptions hw;
  std::string reading = "per_shot";
  std::optional<double> kappa_bar;
  CLI::App* hwspec = app.add_subcommand("hwspec", "hardware requirements");
  hwspec->add_option("--eps", hw.epsilon_target, "target estimation error")
      ->capture_default_str();
  hwspec->add_option("--nint", hw.n_int, "integration variables")
      ->capture_default_str();
  hwspec->add_option("--shots", hw.shots, "shots per stage")->capture_default_str();
  hwspec->add_option("--t-single", hw.t_single, "single-qubit gate time [s]")
      ->capture_default_str();
  hwspec->add_option("--t-cnot", hw.t_cnot, "CNOT time [s]")->capture_default_str();
  hwspec->add_option("--t-measure", hw.t_measure, "measurement time [s]")
      ->capture_default_str();
  hwspec->add_option("--interval-factor", hw.interval_factor,
                     "interval between shots as a multiple of run time")
      ->capture_default_str();
  hwspec->add_option("--error-ratio", hw.error_ratio, "CNOT error / single error")
      ->capture_default_str();
  hwspec->add_option("--kappa-bar", kappa_bar,
                     "noise level to use instead of the required-noise scan");
  hwspec->add_option("--scan-a", hw.scan_a, "target a used by the scan")
      ->capture_default_str();
  hwspec->add_option("--interval", reading, "per_shot or per_mbar")
      ->capture_default_str();
  hwspec->callback([&] {
    action = [&] {
      hw.kappa_bar_override = kappa_bar;
      run_hwspec(hw, reading, g);
    };
  });

  std::vector<std::int64_t> depths;
  int max_depth = 30;
  std::int64_t curve_shots = 8192;
  CLI::App* hitcurve = app.add_subcommand("hitcurve", "sampled hit rate versus depth");
  pt.add(hitcurve);
  hitcurve->add_option("--depths", depths, "explicit depths")->delimiter(',');
  hitcurve->add_option("--max-depth", max_depth, "depths 0..max when --depths is absent")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  hitcurve->add_option("--shots", curve_shots, "shots per depth")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  hitcurve->callback([&] {
    action = [&] { run_hitcurve(pt, depths, max_depth, curve_shots, g); };
  });

  std::optional<double> sched_kappa;
  std::string cap = "truncate";
  CLI::App* schedule = app.add_subcommand("schedule", "print a schedule");
  so.add(schedule);
  schedule->add_option("--kappa", sched_kappa,
                       "limit depths to mbar(kappa); --M caps the stage count")
      ->check(CLI::NonNegativeNumber);
  schedule->add_option("--cap", cap, "truncate or mbar")->capture_default_str();
  schedule->callback([&] { action = [&] { run_schedule(so, sched_kappa, cap, g); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    action();
  } catch (const aemle::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const aemle::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitCompute;
  }
  return 0;
}
