#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <charconv>
#include <cmath>
#include <json.hpp>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <system_error>
#include <vector>

#include "ampo/analysis.hpp"
#include "ampo/greeks.hpp"
#include "ampo/oracle.hpp"
#include "ampo/pricing.hpp"
#include "ampo/statics.hpp"
#include "output.hpp"

namespace ampo::cli {

namespace {

constexpr double kPriceTolerance = 5e-3;
constexpr double kBoundaryTolerance = 2e-2;
constexpr double kResidualTolerance = 1e-8;
constexpr double kGreekTolerance = 1e-5;

struct Options {
  std::string kind = "call";
  double spot = 100.0;
  double strike = 100.0;
  double rate = 0.05;
  double vol = 0.5;
  double amort = 0.1;
  std::string convention = "plus-half";
  std::optional<double> q_min;
  std::optional<double> q_max;
  std::optional<int> q_steps;
  double budget = 100.0;
  std::string strategy = "put";
  std::string output = "table";
  bool vega_per_point = false;
  int steps = 4000;
  double horizon = 200.0;
  double tolerance = 1e-2;
  double perturbation = 0.0;
  int example = 0;
};

// Exact decimal -> double; CLI11's own float path goes through long double.
double parse_real(const std::string& flag, const std::string& text) {
  double v = 0.0;
  const char* first = text.data();
  const char* last = first + text.size();
  if (!text.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) {
    throw CLI::ValidationError(flag, "expected a number, got '" + text + "'");
  }
  return v;
}

CLI::Option* add_real(CLI::App& app, const std::string& flag, double& target,
                      const std::string& help) {
  return app
      .add_option_function<std::string>(
          flag, [&target, flag](const std::string& s) { target = parse_real(flag, s); }, help)
      ->type_name("FLOAT");
}

CLI::Option* add_real(CLI::App& app, const std::string& flag, std::optional<double>& target,
                      const std::string& help) {
  return app
      .add_option_function<std::string>(
          flag, [&target, flag](const std::string& s) { target = parse_real(flag, s); }, help)
      ->type_name("FLOAT");
}

/// Reads either key=value lines (INI style) or a JSON object. A JSON document
/// produced by `--output json` is accepted as is: its "inputs" object is used.
class ConfigReader : public CLI::ConfigBase {
 public:
  std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
    const std::string text{std::istreambuf_iterator<char>(input), std::istreambuf_iterator<char>()};
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first == std::string::npos || text[first] != '{') {
      std::istringstream ini(text);
      return CLI::ConfigBase::from_config(ini);
    }
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
      throw CLI::ConversionError("config is not valid JSON: " + std::string(e.what()));
    }
    const nlohmann::json& obj = doc.contains("inputs") ? doc.at("inputs") : doc;
    if (!obj.is_object()) throw CLI::ConversionError("config JSON must be an object");
    std::vector<CLI::ConfigItem> items;
    for (const auto& [key, value] : obj.items()) {
      if (key == "example" || key == "command") continue;  // part of the command line
      CLI::ConfigItem item;
      item.name = key;
      if (value.is_string()) {
        item.inputs = {value.get<std::string>()};
      } else if (value.is_boolean()) {
        item.inputs = {value.get<bool>() ? "true" : "false"};
      } else if (value.is_number()) {
        item.inputs = {value.dump()};
      } else {
        throw CLI::ConversionError("config key '" + key + "' must be a scalar");
      }
      items.push_back(std::move(item));
    }
    return items;
  }
};

MarketParams market_of(const Options& o) {
  MarketParams m;
  m.spot = o.spot;
  m.rate = o.rate;
  m.vol = o.vol;
  m.validate();
  return m;
}

ContractParams contract_of(const Options& o) {
  ContractParams c;
  c.strike = o.strike;
  c.amort = o.amort;
  c.kind = parse_option_kind(o.kind);
  c.convention = parse_convention(o.convention);
  c.validate();
  return c;
}

Record market_inputs(const Options& o) {
  return {{"spot", o.spot}, {"strike", o.strike}, {"rate", o.rate}, {"vol", o.vol}};
}

Record contract_inputs(const Options& o) {
  Record r{{"kind", o.kind}};
  for (auto& kv : market_inputs(o)) r.push_back(std::move(kv));
  r.emplace_back("amort", o.amort);
  r.emplace_back("convention", o.convention);
  return r;
}

struct Grid {
  double lo;
  double hi;
  int n;
};

Grid resolve_grid(const Options& o, double lo, double hi, int n, int min_points) {
  Grid g{o.q_min.value_or(lo), o.q_max.value_or(hi), o.q_steps.value_or(n)};
  if (!(g.lo > 0.0) || !std::isfinite(g.lo)) throw ParameterError("q-min must be > 0");
  if (!(g.hi > g.lo) || !std::isfinite(g.hi)) throw ParameterError("q-max must be > q-min");
  if (g.n < min_points) {
    throw ParameterError("q-steps must be >= " + std::to_string(min_points));
  }
  return g;
}

void add_grid_inputs(Record& r, const Grid& g) {
  r.emplace_back("q-min", g.lo);
  r.emplace_back("q-max", g.hi);
  r.emplace_back("q-steps", static_cast<std::int64_t>(g.n));
}

Document cmd_price(const Options& o) {
  const MarketParams m = market_of(o);
  const ContractParams c = contract_of(o);
  const Quote q = price(m, c);
  const Exponents e = compute_exponents(m, c.amort, c.convention);
  Document d{"price", contract_inputs(o),
             {"kind", "regime", "premium", "boundary", "alpha_c", "alpha_p", "alpha_bar"},
             {}};
  d.rows.push_back({o.kind, to_string(q.regime), q.premium, q.boundary, e.alpha_c, e.alpha_p,
                    e.alpha_bar});
  return d;
}

Document cmd_greeks(const Options& o) {
  const MarketParams m = market_of(o);
  const ContractParams c = contract_of(o);
  const Quote q = price(m, c);
  const GreeksReport g = greeks(m, c);
  Record inputs = contract_inputs(o);
  inputs.emplace_back("vega-per-point", o.vega_per_point);
  Document d{"greeks",
             inputs,
             {"kind", "regime", "premium", "delta", "gamma", "theta_explicit", "theta_economic",
              "vega"},
             {}};
  const double vega_scale = o.vega_per_point ? 0.01 : 1.0;
  d.rows.push_back({o.kind, to_string(q.regime), q.premium, g.delta, g.gamma, g.theta_explicit,
                    g.theta_economic, g.vega * vega_scale});
  return d;
}

Document cmd_statics(const Options& o) {
  const MarketParams m = market_of(o);
  const ContractParams c = contract_of(o);
  const StaticsReport s = statics(m, c);
  Document d{"statics",
             contract_inputs(o),
             {"kind", "d_premium_dq", "d_boundary_dq", "d2_premium_dsigma_dq", "d_dalpha",
              "dalpha_dsigma", "d_dalpha_bar", "dalpha_bar_dsigma", "explicit_sigma"},
             {}};
  const StaticsIntermediates& i = s.intermediates;
  d.rows.push_back({o.kind, s.d_premium_dq, s.d_boundary_dq, s.d2_premium_dsigma_dq, i.d_dalpha,
                    i.dalpha_dsigma, i.d_dalpha_bar, i.dalpha_bar_dsigma, i.explicit_sigma});
  return d;
}

Document cmd_examples(const Options& o) {
  const MarketParams m = market_of(o);
  const ExponentConvention conv = parse_convention(o.convention);
  if (!(o.strike > 0.0) || !std::isfinite(o.strike)) throw ParameterError("strike must be > 0");
  const Grid g = o.example == 3 ? resolve_grid(o, 0.01, 1.0, 100, 2)
                                : resolve_grid(o, 0.05, 1.0, 96, 2);
  const std::vector<double> grid = linspace(g.lo, g.hi, g.n);

  Document d;
  d.command = "examples";
  d.inputs = {{"example", static_cast<std::int64_t>(o.example)}};
  for (auto& kv : market_inputs(o)) d.inputs.push_back(std::move(kv));
  d.inputs.emplace_back("convention", o.convention);
  add_grid_inputs(d.inputs, g);

  if (o.example == 1) {
    d.columns = {"q", "T", "effective_notional"};
    for (const MaturityResult& r : effective_notional_curve(m, o.strike, grid, conv)) {
      d.rows.push_back({r.q, r.effective_maturity, r.effective_notional});
    }
  } else if (o.example == 2) {
    d.columns = {"q", "gamma_ratio", "theta_ratio"};
    for (const RatioPoint& r : ratio_study(m, o.strike, grid, conv)) {
      d.rows.push_back({r.q, r.gamma_ratio, r.theta_ratio});
    }
  } else {
    if (!(o.budget > 0.0) || !std::isfinite(o.budget)) throw ParameterError("budget must be > 0");
    d.inputs.emplace_back("budget", o.budget);
    d.columns = {"q", "call", "put", "straddle"};
    for (double q : grid) {
      std::vector<Cell> row{q};
      for (StrategyKind k : {StrategyKind::CallOnly, StrategyKind::PutOnly, StrategyKind::Straddle}) {
        row.emplace_back(positional_vega(m, o.strike, StrategySpec{k, o.budget}, q, conv));
      }
      d.rows.push_back(std::move(row));
    }
  }
  return d;
}

Document cmd_optimize(const Options& o) {
  const MarketParams m = market_of(o);
  const ExponentConvention conv = parse_convention(o.convention);
  if (!(o.strike > 0.0) || !std::isfinite(o.strike)) throw ParameterError("strike must be > 0");
  if (!(o.budget > 0.0) || !std::isfinite(o.budget)) throw ParameterError("budget must be > 0");
  const Grid g = resolve_grid(o, 0.001, 1.0, 201, 200);
  const StrategySpec spec{parse_strategy(o.strategy), o.budget};
  const OptimizationResult r = optimize_q(m, o.strike, spec, g.lo, g.hi, g.n, conv);

  Document d;
  d.command = "optimize";
  d.inputs = {{"strategy", o.strategy}};
  for (auto& kv : market_inputs(o)) d.inputs.push_back(std::move(kv));
  d.inputs.emplace_back("convention", o.convention);
  d.inputs.emplace_back("budget", o.budget);
  add_grid_inputs(d.inputs, g);
  d.columns = {"strategy", "q_star", "positional_vega", "status"};
  d.rows.push_back({o.strategy, r.q_star, r.positional_vega_at_star, to_string(r.status)});
  return d;
}

struct CheckRow {
  std::string name;
  double value;
  double tolerance;
  bool passed;
};

Document cmd_validate(const Options& o, std::vector<std::string>& failed) {
  const MarketParams m = market_of(o);
  const ContractParams c = contract_of(o);
  LatticeConfig cfg;
  cfg.steps = o.steps;
  cfg.horizon = o.horizon;
  cfg.convergence = o.tolerance;
  cfg.validate();
  if (!(o.perturbation >= 0.0) || !std::isfinite(o.perturbation)) {
    throw ParameterError("inject-perturbation must be >= 0");
  }

  std::vector<CheckRow> checks;
  auto check = [&](const std::string& name, double value, double tol) {
    checks.push_back({name, value, tol, std::isfinite(value) && value <= tol});
  };

  // Convergence is judged here so that every lattice number is still reported.
  LatticeConfig loose = cfg;
  loose.convergence = std::numeric_limits<double>::infinity();
  const OracleReport rep = lattice_price(to_equivalent_perpetual(c, m), m, loose, c.convention);
  check("lattice_convergence",
        std::abs(rep.refined_price - rep.coarse_price) /
            std::max(std::abs(rep.refined_price), 1e-12),
        cfg.convergence);
  check("lattice_price", rep.rel_error, kPriceTolerance);
  const double boundary = exercise_boundary(m, c);
  check("lattice_boundary", std::abs(rep.boundary_estimate - boundary) / boundary,
        kBoundaryTolerance);

  std::vector<double> spots;
  for (int k = 1; k <= 20; ++k) {
    const double depth = 0.05 * k;
    spots.push_back(c.kind == OptionKind::Call ? boundary * std::exp(-depth)
                                               : boundary * std::exp(depth));
  }
  double worst = 0.0;
  for (double r : pde_residual(m, c, spots, 1.0 + o.perturbation)) {
    worst = std::max(worst, std::abs(r));
  }
  check("pde_residual", worst, kResidualTolerance);

  if (in_continuation(m, c)) {
    const GreeksReport a = greeks(m, c);
    const GreeksReport f = fd_greeks(m, c);
    auto rel = [](double x, double y) { return std::abs(x - y) / std::max(std::abs(x), 1e-300); };
    check("fd_delta", rel(a.delta, f.delta), kGreekTolerance);
    check("fd_gamma", rel(a.gamma, f.gamma), kGreekTolerance);
    check("fd_vega", rel(a.vega, f.vega), kGreekTolerance);
  }

  Document d;
  d.command = "validate";
  d.inputs = contract_inputs(o);
  d.inputs.emplace_back("steps", static_cast<std::int64_t>(o.steps));
  d.inputs.emplace_back("horizon", o.horizon);
  d.inputs.emplace_back("tolerance", o.tolerance);
  d.inputs.emplace_back("inject-perturbation", o.perturbation);
  d.columns = {"check", "value", "tolerance", "passed"};
  for (const CheckRow& r : checks) {
    d.rows.push_back({r.name, r.value, r.tolerance, r.passed});
    if (!r.passed) failed.push_back(r.name);
  }
  return d;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Amortizing perpetual option pricer and analytics"};
  app.name("ampo");
  app.fallthrough();
  app.require_subcommand(1);
  app.config_formatter(std::make_shared<ConfigReader>());
  app.set_config("--config", "", "Read options from a key=value or JSON file (flags win)");

  app.add_option("--kind", o.kind, "call or put")->check(CLI::IsMember({"call", "put"}));
  add_real(app, "--spot", o.spot, "Underlying price S (default 100)");
  add_real(app, "--strike", o.strike, "Strike K (default 100)");
  add_real(app, "--rate", o.rate, "Risk-free rate as a decimal (default 0.05)");
  add_real(app, "--vol", o.vol, "Volatility as a decimal (default 0.5)");
  add_real(app, "--amort", o.amort, "Amortization rate q (default 0.1)");
  app.add_option("--convention", o.convention, "Exponent convention: plus-half (default) or minus-half")
      ->check(CLI::IsMember({"plus-half", "minus-half"}));
  add_real(app, "--q-min", o.q_min, "Lower end of the q grid");
  add_real(app, "--q-max", o.q_max, "Upper end of the q grid");
  app.add_option("--q-steps", o.q_steps, "Number of q grid points");
  add_real(app, "--budget", o.budget, "Position budget for positional vega (default 100)");
  app.add_option("--strategy", o.strategy, "call, put or straddle")
      ->check(CLI::IsMember({"call", "put", "straddle"}));
  app.add_option("--output", o.output, "json, csv or table (default table)")
      ->envname("AMPO_OUTPUT");
  app.add_flag("--vega-per-point", o.vega_per_point, "Report vega per 1% volatility move");
  app.add_option("--steps", o.steps, "Lattice steps (default 4000)");
  add_real(app, "--horizon", o.horizon, "Lattice truncation horizon in years (default 200)");
  add_real(app, "--tolerance", o.tolerance, "Lattice convergence tolerance (default 1e-2)");
  add_real(app, "--inject-perturbation", o.perturbation,
           "Scale the premium by 1+eps inside the residual check");

  CLI::App* price_cmd = app.add_subcommand("price", "Premium, exercise boundary and exponents");
  CLI::App* greeks_cmd = app.add_subcommand("greeks", "Delta, gamma, theta and vega");
  CLI::App* statics_cmd = app.add_subcommand("statics", "Sensitivities to the amortization rate");
  CLI::App* examples_cmd = app.add_subcommand("examples", "Curve data for the worked examples");
  examples_cmd->add_option("example", o.example, "1, 2 or 3")
      ->required()
      ->check(CLI::IsMember({1, 2, 3}));
  CLI::App* optimize_cmd = app.add_subcommand("optimize", "Amortization rate maximizing positional vega");
  CLI::App* validate_cmd = app.add_subcommand("validate", "Check closed forms against numerical oracles");

  std::vector<std::string> args;
  for (int i = argc - 1; i > 0; --i) args.emplace_back(argv[i]);
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kArgumentError;
  }

  try {
    const OutputFormat format = parse_output_format(o.output);
    std::vector<std::string> failed;
    Document doc;
    if (price_cmd->parsed()) {
      doc = cmd_price(o);
    } else if (greeks_cmd->parsed()) {
      doc = cmd_greeks(o);
    } else if (statics_cmd->parsed()) {
      doc = cmd_statics(o);
    } else if (examples_cmd->parsed()) {
      doc = cmd_examples(o);
    } else if (optimize_cmd->parsed()) {
      doc = cmd_optimize(o);
    } else if (validate_cmd->parsed()) {
      doc = cmd_validate(o, failed);
    }
    write_document(out, doc, format);
    if (!failed.empty()) {
      err << "validation failed:";
      for (const auto& name : failed) err << ' ' << name;
      err << '\n';
      return kOracleFailure;
    }
    return kOk;
  } catch (const ParameterError& e) {
    err << "error: " << e.what() << '\n';
    return kArgumentError;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return kArgumentError;
  } catch (const ConvergenceError& e) {
    err << "error: " << e.what() << '\n';
    return kOracleFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kSolverError;
  }
}

}  // namespace ampo::cli
