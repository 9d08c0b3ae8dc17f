// Copyright 2026 The qlock Authors
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

// Python bindings for the qlock core.

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "qlock/bounds.hpp"
#include "qlock/divergences.hpp"
#include "qlock/experiment.hpp"
#include "qlock/locking.hpp"
#include "qlock/parallel.hpp"
#include "qlock/random.hpp"
#include "qlock/uncertainty.hpp"

namespace py = pybind11;

namespace {

qlock::UnitaryEnsemble make_ensemble(const std::vector<qlock::CMatrix>& us,
                                     std::size_t d_a, std::size_t d_b) {
  return qlock::UnitaryEnsemble(us, qlock::BipartiteDims(d_a, d_b));
}

qlock::Seed seed_of(std::uint64_t value, std::uint64_t stream) { return {value, stream}; }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Entropic and fidelity uncertainty relations, quantum locking.";

  static py::exception<qlock::Error> error(m, "QlockError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const qlock::Error& e) {
      const std::string msg = std::string(qlock::to_string(e.code())) + ": " + e.what();
      PyErr_SetString(error.ptr(), msg.c_str());
    }
  });

  m.def("version", [] { return std::string(QLOCK_VERSION); });
  m.def("set_num_threads", &qlock::set_num_threads, py::arg("n"));
  m.def("num_threads", &qlock::num_threads);

  m.def(
      "run_experiment",
      [](const std::string& config) {
        const auto cfg = qlock::parse_config(nlohmann::json::parse(config));
        qlock::Report report;
        {
          py::gil_scoped_release release;
          report = qlock::run(cfg);
        }
        return qlock::report_to_json(report).dump();
      },
      py::arg("config_json"), "Run one experiment; returns the report as a JSON string.");
  m.def(
      "canonical_config",
      [](const std::string& config) {
        return qlock::config_to_json(qlock::parse_config(nlohmann::json::parse(config))).dump();
      },
      py::arg("config_json"));

  m.def(
      "haar_unitary",
      [](std::size_t d, std::uint64_t seed, std::uint64_t stream) {
        qlock::Rng rng(seed_of(seed, stream));
        return qlock::sample_haar_qr(d, rng);
      },
      py::arg("d"), py::arg("seed") = 0, py::arg("stream") = 0);
  m.def(
      "random_state",
      [](std::size_t d, std::uint64_t seed, std::uint64_t stream) {
        qlock::Rng rng(seed_of(seed, stream));
        return qlock::sample_sphere(d, rng);
      },
      py::arg("d"), py::arg("seed") = 0, py::arg("stream") = 0);
  m.def(
      "sample_simplex",
      [](std::size_t d, std::uint64_t seed, std::uint64_t stream) {
        qlock::Rng rng(seed_of(seed, stream));
        const auto w = qlock::sample_simplex(d, rng).weights();
        return std::vector<double>(w.begin(), w.end());
      },
      py::arg("d"), py::arg("seed") = 0, py::arg("stream") = 0);

  m.def(
      "total_variation",
      [](std::vector<double> p, std::vector<double> q) {
        return qlock::total_variation(qlock::ProbDist(std::move(p)), qlock::ProbDist(std::move(q)));
      },
      py::arg("p"), py::arg("q"));
  m.def(
      "fidelity",
      [](std::vector<double> p, std::vector<double> q) {
        return qlock::fidelity(qlock::ProbDist(std::move(p)), qlock::ProbDist(std::move(q)));
      },
      py::arg("p"), py::arg("q"));
  m.def(
      "hellinger",
      [](std::vector<double> p, std::vector<double> q) {
        return qlock::hellinger(qlock::ProbDist(std::move(p)), qlock::ProbDist(std::move(q)));
      },
      py::arg("p"), py::arg("q"));

  m.def(
      "eval_y",
      [](const std::vector<qlock::CMatrix>& us, std::size_t d_a, std::size_t d_b,
         const qlock::CVector& psi) {
        const auto ens = make_ensemble(us, d_a, d_b);
        return qlock::eval_y(ens, qlock::PureState(psi, ens.dims()));
      },
      py::arg("unitaries"), py::arg("d_a"), py::arg("d_b"), py::arg("psi"));
  m.def(
      "worst_case",
      [](const std::vector<qlock::CMatrix>& us, std::size_t d_a, std::size_t d_b, int restarts,
         int max_iterations, std::uint64_t seed) {
        const auto ens = make_ensemble(us, d_a, d_b);
        qlock::SearchOptions opts;
        opts.restarts = restarts;
        opts.max_iterations = max_iterations;
        opts.seed = seed_of(seed, 0);
        const auto r = qlock::worst_case_search(ens, qlock::StateSubset::full_sphere(), opts);
        py::dict out;
        out["objective_value"] = r.objective_value;
        out["epsilon_fidelity"] = r.epsilon_fidelity;
        out["epsilon_metric"] = r.epsilon_metric;
        out["epsilon_entropic"] = r.epsilon_entropic;
        out["worst_state"] = r.worst_state.vector();
        out["converged"] = r.diagnostics.converged;
        return out;
      },
      py::arg("unitaries"), py::arg("d_a"), py::arg("d_b"), py::arg("restarts") = 8,
      py::arg("max_iterations") = 500, py::arg("seed") = 0);

  m.def("hellinger_locking_bound", &qlock::hellinger_locking_bound, py::arg("eps"),
        py::arg("l"), py::arg("n"));
  m.def("key_length_lower_bound", &qlock::key_length_lower_bound, py::arg("eps"), py::arg("n"));
  m.def("separable_width_exact", [](const qlock::CVector& g, std::size_t d_a, std::size_t d_b) {
    return qlock::separable_width_exact(g, qlock::BipartiteDims(d_a, d_b));
  });
}
