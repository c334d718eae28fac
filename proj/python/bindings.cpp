// SPDX-License-Identifier: Apache-2.0
#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "pbloch/config.hpp"
#include "pbloch/dtn.hpp"
#include "pbloch/error.hpp"
#include "pbloch/experiment.hpp"
#include "pbloch/incident.hpp"
#include "pbloch/quasigrid.hpp"

namespace py = pybind11;
using namespace pbloch;

namespace {

CutoffKind cutoff_from(const std::string& s) {
  if (s == "polynomial") return CutoffKind::Polynomial;
  if (s == "exponential") return CutoffKind::Exponential;
  if (s == "identity") return CutoffKind::Identity;
  throw ConfigError("unknown cutoff '" + s + "'");
}

py::dict row_dict(const ErrorRow& r) {
  py::dict d;
  d["example"] = r.example;
  d["k"] = r.k;
  d["N"] = r.N;
  d["L"] = r.L;
  d["h"] = r.h;
  d["rel_l2_error"] = r.rel_l2_error;
  d["iterations"] = r.iterations;
  d["wall_ms"] = r.wall_ms;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Bloch-transform solver for scattering by perturbed periodic surfaces";

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<GeometryError>(m, "GeometryError", PyExc_RuntimeError);
  py::register_exception<ConvergenceError>(m, "ConvergenceError", PyExc_RuntimeError);

  py::class_<WavenumberClass>(m, "WavenumberClass")
      .def_readonly("k", &WavenumberClass::k)
      .def_readonly("Lambda", &WavenumberClass::Lambda)
      .def_readonly("k_under", &WavenumberClass::k_under)
      .def_readonly("S", &WavenumberClass::S)
      .def_readonly("a0", &WavenumberClass::a0)
      .def_readonly("a1", &WavenumberClass::a1)
      .def_property_readonly("case",
                             [](const WavenumberClass& w) {
                               return w.case_id == WavenumberCase::Case1 ? 1 : 2;
                             });

  m.def("exceptional_set", &exceptional_set, py::arg("k"), py::arg("Lambda") = 2 * M_PI);

  // Returns g as a Python callable t -> (g, g').
  m.def(
      "build_g",
      [](double k, double Lambda, int n, const std::string& cutoff) {
        auto g = std::make_shared<GMap>(exceptional_set(k, Lambda), n, cutoff_from(cutoff));
        return py::cpp_function([g](double t) {
          const auto v = (*g)(t);
          return std::make_pair(v.g, v.gprime);
        });
      },
      py::arg("k"), py::arg("Lambda") = 2 * M_PI, py::arg("n") = 5,
      py::arg("cutoff") = "polynomial");

  m.def("beta", &beta, py::arg("k"), py::arg("xi"));
  m.def("herglotz_density", &herglotz_density, py::arg("t"));
  m.def(
      "exact_flat_total",
      [](double x1, double x2, double k, double surface) {
        return exact_flat_total(Point(x1, x2), k, surface);
      },
      py::arg("x1"), py::arg("x2"), py::arg("k"), py::arg("surface") = 1.1);

  py::class_<RunConfig>(m, "RunConfig")
      .def_readwrite("example", &RunConfig::example)
      .def_readwrite("k", &RunConfig::k)
      .def_readwrite("N", &RunConfig::N)
      .def_readwrite("L", &RunConfig::L)
      .def_readwrite("h", &RunConfig::h)
      .def_readwrite("zeta", &RunConfig::zeta)
      .def_readwrite("perturbation", &RunConfig::perturbation)
      .def_readwrite("reference_N", &RunConfig::reference_N)
      .def_readwrite("timing", &RunConfig::timing);

  m.def("preset", &preset, py::arg("example"));
  m.def(
      "parse_config_text", [](const std::string& text) { return parse_config_text(text); },
      py::arg("text"));

  // Rows as dicts keyed like the errors.csv columns.
  m.def(
      "run_sweep",
      [](const RunConfig& cfg) {
        SweepResult result;
        {
          py::gil_scoped_release release;
          result = run_sweep(cfg);
        }
        py::list rows;
        for (const auto& r : result.rows) rows.append(row_dict(r));
        return rows;
      },
      py::arg("config"));
}
