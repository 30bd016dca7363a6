#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstring>

#include "nlwave/bench.hpp"
#include "nlwave/diagnostics.hpp"
#include "nlwave/dynamics.hpp"
#include "nlwave/noise.hpp"
#include "nlwave/norms.hpp"
#include "nlwave/propagator.hpp"

namespace py = pybind11;
using namespace nlwave;

namespace {

py::array_t<std::complex<double>> field_to_array(const SpectralField& f) {
  const int n = f.grid.n;
  py::array_t<std::complex<double>> arr({n, n, n});
  std::memcpy(arr.mutable_data(), f.coeffs.data(), sizeof(cdouble) * f.coeffs.size());
  return arr;
}

SpectralField field_from_array(
    const TorusGrid& g,
    const py::array_t<std::complex<double>, py::array::c_style | py::array::forcecast>&
        arr) {
  if (arr.ndim() != 3 || arr.shape(0) != g.n || arr.shape(1) != g.n ||
      arr.shape(2) != g.n) {
    throw std::invalid_argument("coefficient array must have shape (n, n, n)");
  }
  SpectralField f(g);
  std::memcpy(f.coeffs.data(), arr.data(), sizeof(cdouble) * f.coeffs.size());
  return f;
}

SpectralField spectral_from_array(
    const TorusGrid& g,
    const py::array_t<double, py::array::c_style | py::array::forcecast>& arr) {
  if (arr.ndim() != 3 || arr.shape(0) != g.n || arr.shape(1) != g.n ||
      arr.shape(2) != g.n) {
    throw std::invalid_argument("sample array must have shape (n, n, n)");
  }
  std::vector<double> xs(arr.data(), arr.data() + arr.size());
  return to_spectral(g, xs);
}

py::array_t<double> physical_to_array(const SpectralField& f) {
  const int n = f.grid.n;
  const std::vector<double> xs = to_physical_real(f);
  py::array_t<double> arr({n, n, n});
  std::memcpy(arr.mutable_data(), xs.data(), sizeof(double) * xs.size());
  return arr;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Pseudospectral simulation of the semilinear wave equation on the 3-torus";

  py::register_exception<BlowupError>(m, "BlowupError");

  py::class_<TorusGrid>(m, "TorusGrid")
      .def(py::init<int>(), py::arg("n"))
      .def_readonly("n", &TorusGrid::n)
      .def("size", &TorusGrid::size)
      .def("__repr__",
           [](const TorusGrid& g) { return "TorusGrid(" + std::to_string(g.n) + ")"; });

  py::class_<SpectralField>(m, "SpectralField")
      .def(py::init<TorusGrid>(), py::arg("grid"))
      .def_readonly("grid", &SpectralField::grid)
      .def("array", &field_to_array, "Coefficients as a complex (n, n, n) array")
      .def("get",
           [](const SpectralField& f, int k1, int k2, int k3) {
             return f.at(k1, k2, k3);
           })
      .def("set",
           [](SpectralField& f, int k1, int k2, int k3, cdouble v) {
             f.at(k1, k2, k3) = v;
           })
      .def_static("from_array", &field_from_array, py::arg("grid"), py::arg("coeffs"));

  py::class_<State>(m, "State")
      .def(py::init<TorusGrid>(), py::arg("grid"))
      .def(py::init<SpectralField, SpectralField>(), py::arg("u"), py::arg("v"))
      .def_readwrite("u", &State::u)
      .def_readwrite("v", &State::v);

  py::enum_<Scheme>(m, "Scheme")
      .value("lie", Scheme::lie)
      .value("corrected_lie", Scheme::corrected_lie)
      .value("strang_ref", Scheme::strang_ref);

  py::enum_<KRule>(m, "KRule")
      .value("none", KRule::none)
      .value("inverse_tau", KRule::inverse_tau)
      .value("inverse_tau_3_2", KRule::inverse_tau_3_2)
      .value("fixed", KRule::fixed);

  py::class_<ModelParams>(m, "ModelParams")
      .def(py::init([](double alpha, int mu, bool linear) {
             ModelParams p;
             p.alpha = alpha;
             p.mu = mu;
             p.linear = linear;
             validate_model(p);
             return p;
           }),
           py::arg("alpha") = 3.0, py::arg("mu") = 1, py::arg("linear") = false)
      .def_readwrite("alpha", &ModelParams::alpha)
      .def_readwrite("mu", &ModelParams::mu)
      .def_readwrite("linear", &ModelParams::linear);

  py::class_<SchemeConfig>(m, "SchemeConfig")
      .def(py::init([](double tau, Scheme scheme, KRule k_rule, double c, double fixed_k,
                       double t_end) {
             SchemeConfig cfg;
             cfg.tau = tau;
             cfg.scheme = scheme;
             cfg.k_rule = k_rule;
             cfg.c = c;
             cfg.fixed_k = fixed_k;
             cfg.t_end = t_end;
             return cfg;
           }),
           py::arg("tau"), py::arg("scheme") = Scheme::lie,
           py::arg("k_rule") = KRule::inverse_tau, py::arg("c") = 1.0,
           py::arg("fixed_k") = 0.0, py::arg("t_end") = 1.0)
      .def_readwrite("tau", &SchemeConfig::tau)
      .def_readwrite("scheme", &SchemeConfig::scheme)
      .def_readwrite("k_rule", &SchemeConfig::k_rule)
      .def_readwrite("c", &SchemeConfig::c)
      .def_readwrite("fixed_k", &SchemeConfig::fixed_k)
      .def_readwrite("t_end", &SchemeConfig::t_end);

  py::class_<FitResult>(m, "FitResult")
      .def_readonly("slope", &FitResult::slope)
      .def_readonly("residual", &FitResult::residual)
      .def_readonly("n_used", &FitResult::n_used);

  py::class_<TrajectoryEntry>(m, "TrajectoryEntry")
      .def_readonly("step", &TrajectoryEntry::step)
      .def_readonly("t", &TrajectoryEntry::t)
      .def_readonly("state", &TrajectoryEntry::state);

  // Transforms and spectral utilities.
  m.def("to_spectral", &spectral_from_array, py::arg("grid"), py::arg("samples"),
        "Real samples (n, n, n) -> Fourier coefficients");
  m.def("to_physical", &physical_to_array, py::arg("field"),
        "Fourier coefficients -> real samples (n, n, n)");
  m.def("lowpass", py::overload_cast<const SpectralField&, double>(&lowpass),
        py::arg("field"), py::arg("K"), "Sharp cutoff to the open ball |k| < K");
  m.def("sobolev_noise", &sobolev_noise, py::arg("grid"), py::arg("s"), py::arg("seed"),
        py::arg("amplitude"),
        "Deterministic random field of Sobolev regularity s");
  m.def(
      "sobolev_norm",
      [](const SpectralField& f, double s, bool homogeneous) {
        return sobolev_norm(f, SobolevSpec{s, homogeneous});
      },
      py::arg("field"), py::arg("s") = 0.0, py::arg("homogeneous") = true);
  m.def("lebesgue_norm", &lebesgue_norm, py::arg("field"), py::arg("q"));
  m.def("hermitian_defect", &hermitian_defect, py::arg("field"));

  // Propagators.
  m.def("wave_group", &wave_group, py::arg("state"), py::arg("t"));
  m.def("half_wave", &half_wave, py::arg("field"), py::arg("t"));
  m.def("s_map", &s_map, py::arg("f"), py::arg("g"), py::arg("t"));
  m.def("phi2_apply", &phi2_apply, py::arg("state"), py::arg("t"));

  // Dynamics.
  m.def("g_apply", &g_apply, py::arg("u"), py::arg("params"));
  m.def("h_apply", &h_apply, py::arg("state"), py::arg("params"));
  m.def("lie_step", &lie_step, py::arg("state"), py::arg("params"), py::arg("config"));
  m.def("corrected_lie_step", &corrected_lie_step, py::arg("state"), py::arg("params"),
        py::arg("config"));
  m.def("strang_reference_step", &strang_reference_step, py::arg("state"),
        py::arg("params"), py::arg("tau"));
  m.def("evolve", &evolve, py::arg("state"), py::arg("params"), py::arg("config"),
        py::arg("stride") = 1);
  m.def("evolve_final", &evolve_final, py::arg("state"), py::arg("params"),
        py::arg("config"));
  m.def("energy", &energy, py::arg("state"), py::arg("params"));

  // Diagnostics.
  m.def("error_norm_l2_hm1", &error_norm_l2_hm1, py::arg("state"));
  m.def("error_norm_h1_l2", &error_norm_h1_l2, py::arg("state"));
  m.def("wave_admissible", &wave_admissible, py::arg("p"), py::arg("q"),
        py::arg("gamma"));
  m.def("strichartz_ratio", &strichartz_ratio, py::arg("field"), py::arg("K"),
        py::arg("tau"), py::arg("p"), py::arg("q"), py::arg("gamma"), py::arg("t_end"));
  m.def("endpoint_ratio", &endpoint_ratio, py::arg("field"), py::arg("K"),
        py::arg("tau"), py::arg("n_steps"));
  m.def("fit_order", &fit_order, py::arg("tau_err_pairs"),
        "Least-squares slope of log2(err) vs log2(tau)");
}
