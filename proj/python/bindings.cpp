#include <pybind11/eigen.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>

#include "locstat/errors.hpp"
#include "locstat/harness.hpp"
#include "locstat/kalman.hpp"
#include "locstat/ou_lse.hpp"
#include "locstat/whittle.hpp"

namespace py = pybind11;
using namespace locstat;

namespace {

LevySpec noise_from(const std::string& name) {
  if (name == "gauss" || name == "gaussian") return default_gaussian_noise();
  if (name == "nig") return default_nig_noise();
  throw ConfigError("unknown noise '" + name + "' (expected gauss or nig)");
}

SimulationConfig sim_config(int N, double horizon, int sim_ratio, std::uint64_t seed,
                            std::uint64_t stream) {
  SimulationConfig c;
  c.N = N;
  c.horizon = horizon;
  c.sim_ratio = sim_ratio;
  c.seed = seed;
  c.stream = stream;
  return c;
}

DeConfig de_config(int max_gens, std::uint64_t seed) {
  DeConfig c;
  c.max_gens = max_gens;
  c.seed = seed;
  return c;
}

py::array_t<double> as_array(const std::vector<double>& v) {
  return py::array_t<double>(static_cast<py::ssize_t>(v.size()), v.data());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Localized estimation for time-varying Levy-driven OU and state-space models";

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<ParameterError>(m, "ParameterError", PyExc_ValueError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<RangeError>(m, "RangeError", PyExc_ValueError);
  py::register_exception<EstimationError>(m, "EstimationError", PyExc_RuntimeError);
  py::register_exception<NumericError>(m, "NumericError", PyExc_ArithmeticError);

  m.def("version", &version_string);

  py::class_<SamplingGrid>(m, "SamplingGrid")
      .def_static("standard_o1", &SamplingGrid::standard_o1, py::arg("N"), py::arg("u"),
                  py::arg("bandwidth_constant") = 400.0)
      .def_readonly("N", &SamplingGrid::N)
      .def_readonly("delta", &SamplingGrid::delta)
      .def_readonly("bandwidth", &SamplingGrid::bandwidth)
      .def_readonly("u", &SamplingGrid::u)
      .def_readonly("Delta", &SamplingGrid::Delta)
      .def("m", &SamplingGrid::m);

  py::class_<Path>(m, "Path")
      .def_readonly("N", &Path::N)
      .def_readonly("step", &Path::step)
      .def_property_readonly("values", [](const Path& p) { return as_array(p.values); })
      .def_property_readonly("times", [](const Path& p) {
        std::vector<double> t(p.size());
        for (std::size_t k = 0; k < t.size(); ++k) t[k] = p.time(k);
        return as_array(t);
      });

  py::class_<Window>(m, "Window")
      .def_readonly("grid", &Window::grid)
      .def_property_readonly("values", [](const Window& w) { return as_array(w.values); });

  m.def(
      "simulate_ou",
      [](std::optional<double> rate, const std::string& curve, const std::string& noise, int N,
         double horizon, int sim_ratio, std::uint64_t seed, std::uint64_t stream) {
        const CoefficientCurve a = rate ? CoefficientCurve::constant(*rate) : CoefficientCurve::builtin(curve);
        py::gil_scoped_release release;
        return simulate_tv_ou(a, noise_from(noise), sim_config(N, horizon, sim_ratio, seed, stream));
      },
      py::arg("rate") = py::none(), py::arg("curve") = "a2", py::arg("noise") = "nig",
      py::arg("N") = 1, py::arg("horizon") = 2000.0, py::arg("sim_ratio") = 1000,
      py::arg("seed") = 1, py::arg("stream") = 0);

  m.def(
      "simulate_statespace",
      [](const std::string& family, std::vector<double> theta, const std::string& noise, int N,
         double horizon, int sim_ratio, std::uint64_t seed, std::uint64_t stream) {
        const auto fam = make_family(family);
        const ParameterCurve curve = theta.empty()
                                         ? ParameterCurve::example_time_varying(noise == "nig")
                                         : ParameterCurve::constant(std::move(theta));
        py::gil_scoped_release release;
        return simulate_tv_statespace(*fam, curve, noise_from(noise),
                                      sim_config(N, horizon, sim_ratio, seed, stream));
      },
      py::arg("family") = "example2d", py::arg("theta") = std::vector<double>{},
      py::arg("noise") = "gauss", py::arg("N") = 1, py::arg("horizon") = 2000.0,
      py::arg("sim_ratio") = 1000, py::arg("seed") = 1, py::arg("stream") = 0);

  m.def("extract_window", &extract_window, py::arg("path"), py::arg("grid"), py::arg("history") = 0);

  py::class_<LseEstimate>(m, "LseEstimate")
      .def_readonly("a_hat", &LseEstimate::a_hat)
      .def_readonly("sigma_u_hat", &LseEstimate::sigma_u_hat)
      .def_readonly("ratio", &LseEstimate::ratio)
      .def_readonly("clamped", &LseEstimate::clamped);

  m.def(
      "lse_estimate",
      [](const Window& w, const std::string& kernel, double lo, double hi) {
        return lse_estimate(w, parse_kernel(kernel), lo, hi);
      },
      py::arg("window"), py::arg("kernel") = "rect", py::arg("lo") = kLseLo, py::arg("hi") = kLseHi);

  m.def(
      "lse_asymp_variance",
      [](double a, double Delta, double delta, const std::string& scheme) {
        return lse_asymp_variance(a, Delta, delta, parse_scheme(scheme));
      },
      py::arg("a"), py::arg("Delta") = 1.0, py::arg("delta") = 1.0, py::arg("scheme") = "O1");

  py::class_<StateSpaceEstimate>(m, "StateSpaceEstimate")
      .def_readonly("theta", &StateSpaceEstimate::theta)
      .def_readonly("objective", &StateSpaceEstimate::objective)
      .def_readonly("generations", &StateSpaceEstimate::generations)
      .def_readonly("converged", &StateSpaceEstimate::converged)
      .def_readonly("riccati_residual", &StateSpaceEstimate::riccati_residual);

  m.def(
      "qmle_estimate",
      [](const Window& w, const std::string& kernel, const std::string& family, int max_gens,
         std::uint64_t de_seed) {
        const auto fam = make_family(family);
        py::gil_scoped_release release;
        return qmle_estimate(w, parse_kernel(kernel), *fam, fam->default_box(), de_config(max_gens, de_seed));
      },
      py::arg("window"), py::arg("kernel") = "rect", py::arg("family") = "example2d",
      py::arg("max_gens") = 300, py::arg("de_seed") = DeConfig{}.seed);

  m.def(
      "whittle_estimate",
      [](const Window& w, const std::string& kernel, const std::string& family, int max_gens,
         std::uint64_t de_seed) {
        const auto fam = make_family(family);
        py::gil_scoped_release release;
        return whittle_estimate(w, parse_kernel(kernel), *fam, fam->default_box(),
                                de_config(max_gens, de_seed));
      },
      py::arg("window"), py::arg("kernel") = "rect", py::arg("family") = "example2d",
      py::arg("max_gens") = 300, py::arg("de_seed") = DeConfig{}.seed);

  m.def(
      "spectral_density_sampled",
      [](const std::string& family, const std::vector<double>& theta, double omega, double Delta) {
        return spectral_density_sampled(*make_family(family), theta, omega, Delta);
      },
      py::arg("family"), py::arg("theta"), py::arg("omega"), py::arg("Delta") = 1.0);

  m.def(
      "riccati",
      [](const Eigen::MatrixXd& Phi, const Eigen::MatrixXd& Q, const Eigen::VectorXd& B) {
        const KalmanSteady ks = solve_riccati(Phi, Q, B);
        return py::make_tuple(ks.Omega, ks.K, ks.V);
      },
      py::arg("Phi"), py::arg("Q"), py::arg("B"));

  m.def(
      "run_study",
      [](const std::string& config_json) {
        const StudyConfig config = StudyConfig::from_json(config_json);
        StudyResult r;
        {
          py::gil_scoped_release release;
          r = run_study(config);
        }
        py::dict out;
        out["u_points"] = r.u_points;
        out["mise"] = r.mise;
        out["mse"] = r.mse;
        out["failures"] = r.failures;
        out["rows"] = r.rows.size();
        std::vector<std::vector<double>> z;
        for (int N : config.N_list)
          z.push_back(config.estimator == Estimator::Lse ? r.standardized_errors(N) : std::vector<double>{});
        out["standardized_errors"] = z;
        return out;
      },
      py::arg("config_json"));

  m.def("default_config", [](const std::string& estimator) {
    StudyConfig c;
    c.estimator = parse_estimator(estimator);
    return c.to_json();
  }, py::arg("estimator") = "lse");
}
