#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "tmm/finiten.hpp"
#include "tmm/kernels.hpp"
#include "tmm/measures.hpp"
#include "tmm/painleve.hpp"
#include "tmm/suites.hpp"
#include "tmm/surface.hpp"

namespace py = pybind11;
using namespace tmm;

namespace {

py::dict checks_dict(const Criterion& c) {
  py::list l;
  for (auto& k : c.checks)
    l.append(py::dict(py::arg("name") = k.name, py::arg("value") = k.value, py::arg("tolerance") = k.tolerance,
                      py::arg("pass") = k.pass));
  return py::dict(py::arg("id") = c.id, py::arg("title") = c.title, py::arg("pass") = c.pass(), py::arg("checks") = l);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "critical kernels of the quartic/quadratic two-matrix model";
  m.attr("__version__") = "0.1.0";

  py::register_exception<Error>(m, "TmmError");

  m.def("classify_phase", [](double a, double t) { return std::string(to_string(classify_phase(a, t))); },
        py::arg("alpha"), py::arg("tau"));
  m.def("gamma_of", &gamma_of, py::arg("alpha"), py::arg("tau"));
  m.def("scaled_params", &scaled_params, py::arg("a"), py::arg("b"), py::arg("n"));
  m.def("xi_branches",
        [](cplx z, double a, double t) {
          auto x = xi_branches(z, make_surface(a, t));
          return std::vector<cplx>(x.begin(), x.end());
        },
        py::arg("z"), py::arg("alpha") = -1.0, py::arg("tau") = 1.0);
  m.def("density",
        [](const std::string& measure, double x, double a, double t) {
          return density(measure_from_string(measure), x, make_surface(a, t));
        },
        py::arg("measure"), py::arg("x"), py::arg("alpha") = -1.0, py::arg("tau") = 1.0);
  m.def("mass",
        [](const std::string& measure, double a, double t) {
          auto p = make_surface(a, t);
          switch (measure_from_string(measure)) {
            case MeasureId::mu1: return mass_mu1(p).mass;
            case MeasureId::mu2: return mass_mu2(p).mass;
            case MeasureId::mu3: return mass_mu3(p).mass;
            default: throw Error(ErrorCode::ConfigError, "mass is defined for mu1, mu2, mu3");
          }
        },
        py::arg("measure"), py::arg("alpha") = -1.0, py::arg("tau") = 1.0);

  m.def("hastings_mcleod",
        [](double s) {
          auto h = hastings_mcleod(s);
          return py::make_tuple(h.q, h.qprime, h.u);
        },
        py::arg("sigma"));
  m.def("compatibility_residual", [](cplx z, double s, double t) { return compatibility_residual(z, s, t); },
        py::arg("zeta"), py::arg("s"), py::arg("t"));
  m.def("hm_extraction",
        [](double s, double t) {
          auto h = hm_extraction(s, t);
          return py::make_tuple(h.value, h.target);
        },
        py::arg("s"), py::arg("t"));

  m.def("kernel_cr", [](double u, double v, double s, double t) { return kernel_cr(u, v, {s, t}); }, py::arg("u"),
        py::arg("v"), py::arg("s") = 0.0, py::arg("t") = 0.0);
  m.def("kernel_cr_diag", [](double u, double s, double t) { return kernel_cr_diag(u, {s, t}); }, py::arg("u"),
        py::arg("s") = 0.0, py::arg("t") = 0.0);
  m.def("kernel_tac", [](double u, double v, double r, double s) { return kernel_tac(u, v, {r, s}); }, py::arg("u"),
        py::arg("v"), py::arg("r") = 1.0, py::arg("s") = 0.0);
  m.def("kernel_tac_diag", [](double u, double r, double s) { return kernel_tac_diag(u, {r, s}); }, py::arg("u"),
        py::arg("r") = 1.0, py::arg("s") = 0.0);
  m.def("kernel_pii", [](double x, double y, double nu) { return kernel_pii(x, y, nu); }, py::arg("x"), py::arg("y"),
        py::arg("nu"));
  m.def("double_scaling_gap", &double_scaling_gap, py::arg("a"), py::arg("sigma"), py::arg("x"), py::arg("y"));

  m.def("finite_n",
        [](int n, double a, double t, int bits) {
          auto s = finite_n_summary(n, a, t, bits);
          return py::dict(py::arg("n") = s.n, py::arg("zeros") = s.zeros.zeros,
                          py::arg("real_simple") = s.zeros.all_real_simple, py::arg("ks") = s.ks,
                          py::arg("residual") = s.residual);
        },
        py::arg("n"), py::arg("alpha") = -1.0, py::arg("tau") = 1.0, py::arg("precision_bits") = 0);

  m.def("run_criterion", [](int id) { return checks_dict(run_criterion(id)); }, py::arg("id"));
}
