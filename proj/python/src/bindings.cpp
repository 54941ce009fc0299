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

// Thin pybind11 layer: plain numbers, tuples and dicts in and out.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <tuple>
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

namespace py = pybind11;

namespace {

using StageTuple = std::tuple<std::int64_t, std::int64_t>;
using CountTuple = std::tuple<std::int64_t, std::int64_t, std::int64_t>;

aemle::Schedule build(const std::string& kind, int M, std::int64_t shots,
                      std::optional<double> r) {
  return aemle::make_schedule(aemle::parse_schedule_kind(kind), M, shots, r);
}

std::vector<StageTuple> stage_list(const aemle::Schedule& s) {
  std::vector<StageTuple> out;
  for (const auto& st : s.stages()) out.emplace_back(st.depth, st.shots);
  return out;
}

py::dict fisher_dict(double a, double kappa, const std::string& kind, int M,
                     std::int64_t shots, std::optional<double> r) {
  const aemle::AmplitudePoint pt = aemle::amplitude_point(a, kappa);
  const aemle::FisherMatrix f = aemle::fisher_matrix(pt, build(kind, M, shots, r));
  const aemle::CrBoundResult b = aemle::cr_lower_bound(f);
  py::dict d;
  d["i11"] = f.i11;
  d["i12"] = f.i12;
  d["i22"] = f.i22;
  d["epsilon_min"] = b.epsilon_min;
  d["identifiable"] = b.identifiable;
  return d;
}

py::dict estimate(const std::vector<CountTuple>& counts, int divisions,
                  double chebyshev_scale, double eps_target) {
  std::vector<aemle::ExperimentStage> stages;
  for (const auto& [m, n, h] : counts) stages.push_back({m, n, h});
  aemle::MleConfig cfg;
  cfg.divisions_per_stage = divisions;
  cfg.chebyshev_factor_scale = chebyshev_scale;
  cfg.epsilon_target = eps_target;
  const aemle::ExperimentData data =
      aemle::ExperimentData::from_stages(std::move(stages));
  aemle::EstimateResult r;
  {
    py::gil_scoped_release release;
    r = aemle::mle_grid_adaptive(data, cfg);
  }
  py::dict d;
  d["a_hat"] = r.a_hat;
  d["kappa_hat"] = r.kappa_hat;
  d["log_likelihood"] = r.log_likelihood_at_max;
  d["likelihood_evaluations"] = r.likelihood_evaluations;
  d["kappa_identifiable"] = r.kappa_identifiable;
  d["beta"] = r.anomality ? py::object(py::float_(*r.anomality)) : py::object(py::none());
  d["anomalous"] = r.anomalous;
  return d;
}

}  // namespace

PYBIND11_MODULE(_aemle, m) {
  m.doc() = "Noise-aware maximum-likelihood amplitude estimation";
  m.attr("__version__") = AEMLE_VERSION;

  static py::exception<aemle::Error> error(m, "AemleError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const aemle::Error& e) {
      py::set_error(error, e.what());
    }
  });

  m.def("schedule", [](const std::string& kind, int M, std::int64_t shots,
                       std::optional<double> r) {
          return stage_list(build(kind, M, shots, r));
        },
        py::arg("kind") = "eis", py::arg("M") = 6, py::arg("shots") = 100,
        py::arg("r") = py::none(), "list of (depth, shots) stages");

  m.def("hit_probability", [](std::int64_t depth, double a, double kappa) {
          return aemle::noisy_good_prob(aemle::GroverDepth(depth),
                                        aemle::amplitude_point(a, kappa));
        },
        py::arg("m"), py::arg("a"), py::arg("kappa") = 0.0);

  m.def("fisher", &fisher_dict, py::arg("a"), py::arg("kappa"),
        py::arg("kind") = "eis", py::arg("M") = 6, py::arg("shots") = 100,
        py::arg("r") = py::none());

  m.def("anomality", [](double a, double kappa, const std::string& kind, int M,
                        std::int64_t shots, std::optional<double> r) {
          return aemle::anomality(aemle::amplitude_point(a, kappa),
                                  build(kind, M, shots, r));
        },
        py::arg("a"), py::arg("kappa"), py::arg("kind") = "eis", py::arg("M") = 6,
        py::arg("shots") = 100, py::arg("r") = py::none());

  m.def("max_grover_depth", &aemle::max_grover_depth, py::arg("kappa"));

  m.def("required_noise", [](double eps, std::int64_t shots, const std::string& kind) {
          return aemle::required_noise_for_error(eps, shots,
                                                 aemle::parse_schedule_kind(kind));
        },
        py::arg("eps"), py::arg("shots") = 100, py::arg("kind") = "eis");

  m.def("sample_counts", [](double a, double kappa, const std::string& kind, int M,
                            std::int64_t shots, std::uint64_t seed,
                            std::optional<double> r) {
          const aemle::ExperimentData d = aemle::sample_counts(
              aemle::amplitude_point(a, kappa), build(kind, M, shots, r), seed);
          std::vector<CountTuple> out;
          for (const auto& st : d.stages()) out.emplace_back(st.depth, st.shots, st.hits);
          return out;
        },
        py::arg("a"), py::arg("kappa"), py::arg("kind") = "eis", py::arg("M") = 6,
        py::arg("shots") = 100, py::arg("seed") = 0, py::arg("r") = py::none(),
        "list of (depth, shots, hits)");

  m.def("estimate", &estimate, py::arg("counts"), py::arg("divisions") = 64,
        py::arg("chebyshev_scale") = 3.0, py::arg("eps_target") = 1e-3);

  m.def("anomaly_density", [](double kappa, std::int64_t samples, double threshold,
                              std::int64_t shots, int max_M, std::uint64_t seed,
                              unsigned threads) {
          const aemle::DensityResult r = aemle::anomaly_density(
              kappa, samples, threshold, aemle::anomaly_schedule(kappa, shots, max_M),
              seed, threads);
          return std::make_tuple(r.density_percent, r.stderr_percent);
        },
        py::arg("kappa"), py::arg("samples") = 100000,
        py::arg("threshold") = aemle::kAnomalyThreshold, py::arg("shots") = 100,
        py::arg("max_M") = 25, py::arg("seed") = 0, py::arg("threads") = 0,
        py::call_guard<py::gil_scoped_release>(), "(density %, stderr %)");

  m.def("sin2_target", [](int n, double b) { return aemle::sin2_target(n, b).second; },
        py::arg("n"), py::arg("b"));

  m.def("_hardware_spec_json", [](double eps, int n_int, std::int64_t shots,
                                  std::optional<double> kappa_bar,
                                  const std::string& interval) {
          aemle::HardwareAssumptions h;
          h.epsilon_target = eps;
          h.n_int = n_int;
          h.shots = shots;
          h.kappa_bar_override = kappa_bar;
          h.interval_reading = aemle::parse_interval_reading(interval);
          return aemle::hwspec_to_json(aemle::compute_spec(h)).dump();
        },
        py::arg("eps") = 1e-3, py::arg("n_int") = 5, py::arg("shots") = 100,
        py::arg("kappa_bar") = py::none(), py::arg("interval") = "per_shot");
}
