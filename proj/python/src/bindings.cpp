#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "jacobi/carleman.hpp"
#include "jacobi/errors.hpp"
#include "jacobi/model_io.hpp"
#include "jacobi/solutions.hpp"
#include "jacobi/spectral.hpp"

namespace py = pybind11;
using namespace jacobi;

namespace {

JostOptions jost_options(long n_trunc, double tol) {
  JostOptions o;
  o.n_trunc = n_trunc;
  o.tol = tol;
  return o;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Jost solutions, spectral data and finite-section oracles for Jacobi matrices";

  auto base = py::register_exception<Error>(m, "JacobiError", PyExc_RuntimeError);
  py::register_exception<ModelError>(m, "ModelError", base.ptr());
  py::register_exception<RegimeMismatch>(m, "RegimeMismatch", base.ptr());
  py::register_exception<NotConverged>(m, "NotConverged", base.ptr());
  py::register_exception<PoleAtZ>(m, "PoleAtZ", base.ptr());
  py::register_exception<ConfigError>(m, "ConfigError", base.ptr());
  py::register_exception<TailUnbounded>(m, "TailUnbounded", base.ptr());

  py::class_<CoefficientModel>(m, "Model")
      .def("a", &CoefficientModel::a, py::arg("n"))
      .def("b", &CoefficientModel::b, py::arg("n"))
      .def("beta", [](const CoefficientModel& c, long n) { return double(c.beta(n)); }, py::arg("n"))
      .def("describe", &CoefficientModel::describe)
      .def("to_json", [](const CoefficientModel& c) { return model_to_json(c); })
      .def("__repr__", [](const CoefficientModel& c) { return "<Model " + c.describe() + ">"; });

  m.def("parse_model", [](const std::string& text) { return parse_model(text).model; }, py::arg("text"),
        "Model from a JSON document.");
  m.def("load_model", [](const std::string& path) { return load_model(path).model; }, py::arg("path"));
  m.def("model_hash", [](const std::string& text) { return parse_model(text).hash; }, py::arg("text"));

  m.def(
      "classify",
      [](const CoefficientModel& model) {
        const auto r = classify(model);
        py::dict d;
        d["kind"] = to_string(r.kind);
        d["beta_inf"] = r.beta_inf;
        d["varkappa_inf"] = r.varkappa_inf;
        d["carleman"] = r.carleman;
        d["verdict"] = r.kind == RegimeKind::Unsupported ? std::string("Unsupported")
                                                         : to_string(self_adjointness(model, r).verdict);
        return d;
      },
      py::arg("model"));

  m.def(
      "jost_function",
      [](const CoefficientModel& model, std::complex<double> z, long n_trunc, double tol) {
        const auto v = jost_function(model, classify(model), z, jost_options(n_trunc, tol));
        py::dict d;
        d["omega"] = v.omega.value();
        d["omega_wronskian"] = v.omega_wronskian.value();
        d["gap"] = v.gap;
        d["recurrence_residual"] = v.certificate.recurrence_residual;
        d["warnings"] = v.warnings;
        return d;
      },
      py::arg("model"), py::arg("z"), py::arg("n_trunc") = 2000, py::arg("tol") = 1e-10,
      "Omega(z) = {P, f} by both routes.");

  m.def(
      "find_eigenvalues",
      [](const CoefficientModel& model, double lo, double hi, double step, long n_trunc) {
        EigenOptions o;
        o.lo = lo, o.hi = hi, o.step = step;
        o.jost.n_trunc = n_trunc;
        std::vector<double> out;
        for (const auto& r : find_eigenvalues(model, classify(model), o).roots) out.push_back(r.lambda);
        return out;
      },
      py::arg("model"), py::arg("lo"), py::arg("hi"), py::arg("step") = 0.05, py::arg("n_trunc") = 150);

  m.def("finite_section_eigs", &finite_section_eigs, py::arg("model"), py::arg("N"), py::arg("how_many"),
        py::arg("bits") = 128);

  m.def(
      "spectral_mass",
      [](const CoefficientModel& model, double lambda, long n_trunc) {
        const auto s = spectral_mass(model, classify(model), lambda, jost_options(n_trunc, 1e-10));
        return py::make_tuple(s.series, s.jost);
      },
      py::arg("model"), py::arg("lam"), py::arg("n_trunc") = 150);

  m.def(
      "identity",
      [](const CoefficientModel& model, std::complex<double> z, long n_trunc) {
        const auto r = identity_thm_kappa(model, classify(model), z, jost_options(n_trunc, 1e-10));
        py::dict d;
        d["kappa_z"] = r.kappa_z;
        d["kappa_zbar"] = r.kappa_zbar;
        d["lhs"] = r.lhs;
        d["rhs"] = r.rhs;
        d["relative_gap"] = r.relative_gap;
        return d;
      },
      py::arg("model"), py::arg("z"), py::arg("n_trunc") = 500);

  m.def(
      "spectral_density",
      [](const CoefficientModel& model, const std::vector<double>& lambdas, long n_trunc) {
        std::vector<double> out;
        for (const auto& p : ac_spectral_density(model, classify(model), lambdas, jost_options(n_trunc, 1e-10)))
          out.push_back(p.density);
        return out;
      },
      py::arg("model"), py::arg("lambdas"), py::arg("n_trunc") = 16384);
}
