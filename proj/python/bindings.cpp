#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "relay/copt.hpp"
#include "relay/harness.hpp"
#include "relay/joint.hpp"
#include "relay/model.hpp"
#include "relay/popt.hpp"
#include "relay/rootfind.hpp"

namespace py = pybind11;
using namespace relay;

PYBIND11_MODULE(_core, m) {
  m.doc() = "Improper-signalling design for two-path relay networks";

  py::class_<SystemParams>(m, "SystemParams")
      .def(py::init([](double p_s, double p_max, double sigma_n2) {
             return SystemParams{p_s, p_max, sigma_n2};
           }),
           py::arg("p_s") = 1.0, py::arg("p_max") = 1.0,
           py::arg("sigma_n2") = 1.0)
      .def_readwrite("p_s", &SystemParams::p_s)
      .def_readwrite("p_max", &SystemParams::p_max)
      .def_readwrite("sigma_n2", &SystemParams::sigma_n2);

  py::class_<ChannelGains>(m, "ChannelGains")
      .def(py::init([](std::array<double, 2> h2, std::array<double, 2> g2,
                       double f2) {
             ChannelGains g;
             g.h2 = h2;
             g.g2 = g2;
             g.f2 = f2;
             return g;
           }),
           py::arg("h2"), py::arg("g2"), py::arg("f2"))
      .def_readwrite("h2", &ChannelGains::h2)
      .def_readwrite("g2", &ChannelGains::g2)
      .def_readwrite("f2", &ChannelGains::f2);

  py::class_<SignalDesign>(m, "SignalDesign")
      .def(py::init([](double p_r, double c_x) {
             return SignalDesign{p_r, c_x};
           }),
           py::arg("p_r"), py::arg("c_x"))
      .def_readwrite("p_r", &SignalDesign::p_r)
      .def_readwrite("c_x", &SignalDesign::c_x);

  py::class_<RateBreakdown>(m, "RateBreakdown")
      .def_readonly("hop", &RateBreakdown::hop)
      .def_readonly("path", &RateBreakdown::path)
      .def_readonly("total", &RateBreakdown::total);

  m.def("first_hop_rate", &FirstHopRate, py::arg("params"), py::arg("gains"),
        py::arg("design"), py::arg("path"));
  m.def("second_hop_rate", &SecondHopRate, py::arg("params"), py::arg("gains"),
        py::arg("design"), py::arg("path"));
  m.def("total_rate", &TotalRate, py::arg("params"), py::arg("gains"),
        py::arg("design"));

  m.def("real_roots_in",
        [](std::vector<double> coeffs, double lo, double hi, bool open_lo) {
          return RealRootsIn(RealPolynomial(std::move(coeffs)), lo, hi,
                             open_lo);
        },
        py::arg("coeffs"), py::arg("lo"), py::arg("hi"),
        py::arg("open_lo") = true,
        "Real roots of an ascending-coefficient polynomial in the interval.");
  m.def("descartes_positive_bound", [](std::vector<double> coeffs) {
    return DescartesPositiveBound(RealPolynomial(std::move(coeffs)));
  });

  m.def("hop_intersection_power",
        [](const SystemParams& p, const ChannelGains& g, double c_x,
           int path) {
          return HopIntersectionPower(p, g, c_x, path).feasible;
        },
        py::arg("params"), py::arg("gains"), py::arg("c_x"), py::arg("path"));
  m.def("optimize_power",
        [](const SystemParams& p, const ChannelGains& g, double c_x) {
          const auto sol = OptimizePower(p, g, c_x);
          return py::make_tuple(sol.p_r, sol.rates);
        },
        py::arg("params"), py::arg("gains"), py::arg("c_x"));
  m.def("hop_intersection_circularity", &HopIntersectionCircularity,
        py::arg("params"), py::arg("gains"), py::arg("p_r"), py::arg("path"));
  m.def("optimize_circularity",
        [](const SystemParams& p, const ChannelGains& g, double p_r) {
          const auto sol = OptimizeCircularity(p, g, p_r);
          return py::make_tuple(sol.c_x, sol.rates,
                                ToString(sol.candidates.case_tag));
        },
        py::arg("params"), py::arg("gains"), py::arg("p_r"));

  py::class_<TrajectoryPoint>(m, "TrajectoryPoint")
      .def_readonly("p_r", &TrajectoryPoint::p_r)
      .def_readonly("c_x", &TrajectoryPoint::c_x)
      .def_readonly("rate", &TrajectoryPoint::rate);

  py::class_<OptimizerResult>(m, "OptimizerResult")
      .def_readonly("design", &OptimizerResult::design)
      .def_readonly("rates", &OptimizerResult::rates)
      .def_readonly("iterations", &OptimizerResult::iterations)
      .def_readonly("trajectory", &OptimizerResult::trajectory)
      .def_readonly("converged", &OptimizerResult::converged);

  m.def("coordinate_descent",
        [](const SystemParams& p, const ChannelGains& g, double init_c_x,
           double eps_max, int max_iters) {
          CdConfig config;
          config.init_c_x = init_c_x;
          config.eps_max = eps_max;
          config.max_iters = max_iters;
          return CoordinateDescent(p, g, config);
        },
        py::arg("params"), py::arg("gains"), py::arg("init_c_x") = 0.0,
        py::arg("eps_max") = 1e-4, py::arg("max_iters") = 100);
  m.def("grid_search", &GridSearch, py::arg("params"), py::arg("gains"),
        py::arg("n_p") = 1000, py::arg("n_c") = 1000);
  m.def("baseline",
        [](const SystemParams& p, const ChannelGains& g,
           const std::string& strategy, int grid) {
          BaselineOptions options;
          options.grid_p = options.grid_c = grid;
          return Baseline(p, g, ParseStrategy(strategy), options);
        },
        py::arg("params"), py::arg("gains"), py::arg("strategy"),
        py::arg("grid") = 1000);

  m.def("draw_gains",
        [](double gamma_h_db, double gamma_g_db, double gamma_f_db,
           std::uint64_t seed, std::uint64_t trial, double sigma_n2) {
          FadingConfig f;
          f.gamma_h_db = {gamma_h_db, gamma_h_db};
          f.gamma_g_db = {gamma_g_db, gamma_g_db};
          f.gamma_f_db = gamma_f_db;
          f.seed = seed;
          return DrawGains(f, trial, sigma_n2);
        },
        py::arg("gamma_h_db"), py::arg("gamma_g_db"), py::arg("gamma_f_db"),
        py::arg("seed"), py::arg("trial"), py::arg("sigma_n2") = 1.0);

  m.def("run_sweep_csv",
        [](const std::map<std::string, std::string>& settings) {
          RunConfig config;
          for (const auto& [k, v] : settings) ApplySetting(config, k, v);
          return FormatCsv(RunSweep(config));
        },
        py::arg("settings"),
        "Run a Monte Carlo sweep from CLI-style settings; returns the CSV.");

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
}
