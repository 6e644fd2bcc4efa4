#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ampo/analysis.hpp"
#include "ampo/greeks.hpp"
#include "ampo/oracle.hpp"
#include "ampo/pricing.hpp"
#include "ampo/statics.hpp"

namespace py = pybind11;
using namespace ampo;

namespace {

std::string num(double v) { return py::repr(py::float_(v)).cast<std::string>(); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Amortizing perpetual option pricing, Greeks and numerical checks";

  py::register_exception<ParameterError>(m, "ParameterError", PyExc_ValueError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<RegionError>(m, "RegionError", PyExc_ValueError);
  py::register_exception<ConvergenceError>(m, "ConvergenceError", PyExc_RuntimeError);
  py::register_exception<SolverError>(m, "SolverError", PyExc_RuntimeError);

  py::enum_<OptionKind>(m, "OptionKind")
      .value("CALL", OptionKind::Call)
      .value("PUT", OptionKind::Put);
  py::enum_<Regime>(m, "Regime")
      .value("CONTINUATION", Regime::Continuation)
      .value("EXERCISE_NOW", Regime::ExerciseNow);
  py::enum_<ExponentConvention>(m, "ExponentConvention")
      .value("PLUS_HALF", ExponentConvention::PlusHalf)
      .value("MINUS_HALF", ExponentConvention::MinusHalf);
  py::enum_<StrategyKind>(m, "StrategyKind")
      .value("CALL_ONLY", StrategyKind::CallOnly)
      .value("PUT_ONLY", StrategyKind::PutOnly)
      .value("STRADDLE", StrategyKind::Straddle);
  py::enum_<OptimumStatus>(m, "OptimumStatus")
      .value("INTERIOR", OptimumStatus::Interior)
      .value("BOUNDARY_MAXIMUM", OptimumStatus::BoundaryMaximum)
      .value("MULTIMODAL", OptimumStatus::Multimodal);

  py::class_<MarketParams>(m, "MarketParams")
      .def(py::init([](double spot, double rate, double vol) {
             MarketParams p{spot, rate, vol};
             p.validate();
             return p;
           }),
           py::arg("spot") = 100.0, py::arg("rate") = 0.0, py::arg("vol") = 0.2)
      .def_readwrite("spot", &MarketParams::spot)
      .def_readwrite("rate", &MarketParams::rate)
      .def_readwrite("vol", &MarketParams::vol)
      .def("validate", &MarketParams::validate)
      .def("__repr__", [](const MarketParams& p) {
        return "MarketParams(spot=" + num(p.spot) + ", rate=" + num(p.rate) + ", vol=" + num(p.vol) + ")";
      });

  py::class_<ContractParams>(m, "ContractParams")
      .def(py::init([](double strike, double amort, OptionKind kind, ExponentConvention conv) {
             ContractParams c{strike, amort, kind, conv};
             c.validate();
             return c;
           }),
           py::arg("strike") = 100.0, py::arg("amort") = 0.1, py::arg("kind") = OptionKind::Call,
           py::arg("convention") = ExponentConvention::PlusHalf)
      .def_readwrite("strike", &ContractParams::strike)
      .def_readwrite("amort", &ContractParams::amort)
      .def_readwrite("kind", &ContractParams::kind)
      .def_readwrite("convention", &ContractParams::convention)
      .def("validate", &ContractParams::validate);

  py::class_<Exponents>(m, "Exponents")
      .def_readonly("alpha_c", &Exponents::alpha_c)
      .def_readonly("alpha_p", &Exponents::alpha_p)
      .def_readonly("alpha_bar", &Exponents::alpha_bar)
      .def("valid_for_pricing", &Exponents::valid_for_pricing);

  py::class_<Quote>(m, "Quote")
      .def_readonly("premium", &Quote::premium)
      .def_readonly("boundary", &Quote::boundary)
      .def_readonly("regime", &Quote::regime)
      .def("__repr__", [](const Quote& q) {
        return "Quote(premium=" + num(q.premium) + ", boundary=" + num(q.boundary) +
               ", regime=" + to_string(q.regime) + ")";
      });

  py::class_<GreeksReport>(m, "GreeksReport")
      .def_readonly("delta", &GreeksReport::delta)
      .def_readonly("gamma", &GreeksReport::gamma)
      .def_readonly("theta_explicit", &GreeksReport::theta_explicit)
      .def_readonly("theta_economic", &GreeksReport::theta_economic)
      .def_readonly("vega", &GreeksReport::vega);

  py::class_<StaticsIntermediates>(m, "StaticsIntermediates")
      .def_readonly("d_dalpha", &StaticsIntermediates::d_dalpha)
      .def_readonly("dalpha_dsigma", &StaticsIntermediates::dalpha_dsigma)
      .def_readonly("d_dalpha_bar", &StaticsIntermediates::d_dalpha_bar)
      .def_readonly("dalpha_bar_dsigma", &StaticsIntermediates::dalpha_bar_dsigma)
      .def_readonly("explicit_sigma", &StaticsIntermediates::explicit_sigma);

  py::class_<StaticsReport>(m, "StaticsReport")
      .def_readonly("d_premium_dq", &StaticsReport::d_premium_dq)
      .def_readonly("d_boundary_dq", &StaticsReport::d_boundary_dq)
      .def_readonly("d2_premium_dsigma_dq", &StaticsReport::d2_premium_dsigma_dq)
      .def_readonly("intermediates", &StaticsReport::intermediates);

  py::class_<LatticeConfig>(m, "LatticeConfig")
      .def(py::init([](double horizon, int steps, double convergence, bool richardson) {
             LatticeConfig c{horizon, steps, convergence, richardson};
             c.validate();
             return c;
           }),
           py::arg("horizon") = 200.0, py::arg("steps") = 4000, py::arg("convergence") = 1e-2,
           py::arg("richardson") = false)
      .def_readwrite("horizon", &LatticeConfig::horizon)
      .def_readwrite("steps", &LatticeConfig::steps)
      .def_readwrite("convergence", &LatticeConfig::convergence)
      .def_readwrite("richardson", &LatticeConfig::richardson);

  py::class_<OracleReport>(m, "OracleReport")
      .def_readonly("oracle_price", &OracleReport::oracle_price)
      .def_readonly("analytic_price", &OracleReport::analytic_price)
      .def_readonly("rel_error", &OracleReport::rel_error)
      .def_readonly("boundary_estimate", &OracleReport::boundary_estimate)
      .def_readonly("coarse_price", &OracleReport::coarse_price)
      .def_readonly("refined_price", &OracleReport::refined_price);

  py::class_<MaturityResult>(m, "MaturityResult")
      .def_readonly("q", &MaturityResult::q)
      .def_readonly("effective_maturity", &MaturityResult::effective_maturity)
      .def_readonly("effective_notional", &MaturityResult::effective_notional);

  py::class_<RatioPoint>(m, "RatioPoint")
      .def_readonly("q", &RatioPoint::q)
      .def_readonly("gamma_ratio", &RatioPoint::gamma_ratio)
      .def_readonly("theta_ratio", &RatioPoint::theta_ratio);

  py::class_<OptimizationResult>(m, "OptimizationResult")
      .def_readonly("q_star", &OptimizationResult::q_star)
      .def_readonly("positional_vega_at_star", &OptimizationResult::positional_vega_at_star)
      .def_readonly("status", &OptimizationResult::status)
      .def_readonly("curve", &OptimizationResult::curve);

  m.def("compute_exponents", &compute_exponents, py::arg("market"), py::arg("q"),
        py::arg("convention") = ExponentConvention::PlusHalf);
  m.def("price", &price, py::arg("market"), py::arg("contract"));
  m.def("exercise_boundary", &exercise_boundary, py::arg("market"), py::arg("contract"));
  m.def("in_continuation", &in_continuation, py::arg("market"), py::arg("contract"));
  m.def("greeks", &greeks, py::arg("market"), py::arg("contract"));
  m.def("statics", &statics, py::arg("market"), py::arg("contract"));
  m.def("d_premium_dq", &d_premium_dq, py::arg("market"), py::arg("contract"));
  m.def("d_boundary_dq", &d_boundary_dq, py::arg("market"), py::arg("contract"));

  m.def(
      "lattice_price",
      [](const MarketParams& mk, const ContractParams& c, const LatticeConfig& cfg) {
        return lattice_price(to_equivalent_perpetual(c, mk), mk, cfg, c.convention);
      },
      py::arg("market"), py::arg("contract"), py::arg("config") = LatticeConfig{});
  m.def(
      "pde_residual",
      [](const MarketParams& mk, const ContractParams& c, const std::vector<double>& spots) {
        return pde_residual(mk, c, spots);
      },
      py::arg("market"), py::arg("contract"), py::arg("spots"));

  m.def("effective_maturity", &effective_maturity, py::arg("market"), py::arg("strike"), py::arg("q"),
        py::arg("convention") = ExponentConvention::PlusHalf);
  m.def(
      "effective_notional_curve",
      [](const MarketParams& mk, double strike, const std::vector<double>& grid, ExponentConvention conv) {
        return effective_notional_curve(mk, strike, grid, conv);
      },
      py::arg("market"), py::arg("strike"), py::arg("q_grid"),
      py::arg("convention") = ExponentConvention::PlusHalf);
  m.def(
      "ratio_study",
      [](const MarketParams& mk, double strike, const std::vector<double>& grid, ExponentConvention conv) {
        return ratio_study(mk, strike, grid, conv);
      },
      py::arg("market"), py::arg("strike"), py::arg("q_grid"),
      py::arg("convention") = ExponentConvention::PlusHalf);
  m.def(
      "positional_vega",
      [](const MarketParams& mk, double strike, StrategyKind kind, double q, double budget,
         ExponentConvention conv) { return positional_vega(mk, strike, {kind, budget}, q, conv); },
      py::arg("market"), py::arg("strike"), py::arg("strategy"), py::arg("q"), py::arg("budget") = 100.0,
      py::arg("convention") = ExponentConvention::PlusHalf);
  m.def(
      "optimize_q",
      [](const MarketParams& mk, double strike, StrategyKind kind, double q_lo, double q_hi,
         int grid_points, double budget, ExponentConvention conv) {
        return optimize_q(mk, strike, {kind, budget}, q_lo, q_hi, grid_points, conv);
      },
      py::arg("market"), py::arg("strike"), py::arg("strategy"), py::arg("q_lo") = 0.001,
      py::arg("q_hi") = 1.0, py::arg("grid_points") = 201, py::arg("budget") = 100.0,
      py::arg("convention") = ExponentConvention::PlusHalf);
}
