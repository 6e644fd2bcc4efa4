#include "ampo/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "ampo/greeks.hpp"
#include "ampo/pricing.hpp"

namespace ampo {

namespace {

// Rows closer to the root than this are searched for the exercise boundary;
// estimates from the first kBoundaryRows rows that bracket it are averaged
// to smooth out the node-alignment jitter.
constexpr int kBoundaryProbeRows = 512;
constexpr int kBoundaryRows = 32;
// exp() of larger log-moneyness overflows; such nodes are deep in the
// exercise region of a call anyway.
constexpr double kMaxLogMoneyness = 700.0;

double payoff(OptionKind kind, double s, double strike) {
  return kind == OptionKind::Call ? std::max(s - strike, 0.0) : std::max(strike - s, 0.0);
}

// g = V − payoff vanishes quadratically at the boundary, so √g is locally
// linear in log-price; extrapolate it from the two continuation nodes
// nearest the exercise region.
double extrapolate_boundary(double x1, double g1, double x2, double g2, double x_ex) {
  const double s1 = std::sqrt(std::max(g1, 0.0));
  const double s2 = std::sqrt(std::max(g2, 0.0));
  if (!(s2 > s1)) return x_ex;
  const double x = x1 - s1 * (x2 - x1) / (s2 - s1);
  return std::clamp(x, std::min(x_ex, x1), std::max(x_ex, x1));
}

}  // namespace

void LatticeConfig::validate() const {
  if (!(horizon > 0.0)) throw ParameterError("horizon must be > 0");
  if (steps < 1) throw ParameterError("steps must be >= 1");
  if (!(convergence > 0.0)) throw ParameterError("convergence must be > 0");
}

LatticeRun run_lattice(const EquivalentPerpetual& e, double spot, double vol, double horizon,
                       int steps) {
  const int n_steps = steps;
  const double dt = horizon / n_steps;
  const double du = vol * std::sqrt(dt);
  const double up = std::exp(du);
  const double down = 1.0 / up;
  const double growth = std::exp((e.rate_eff - e.dividend_eff) * dt);
  const double p = (growth - down) / (up - down);
  if (!(p > 0.0 && p < 1.0)) {
    throw ParameterError("lattice up-probability outside (0, 1); increase steps (p = " +
                         std::to_string(p) + ")");
  }
  const double disc = std::exp(-e.rate_eff * dt);
  const double pu = disc * p;
  const double pd = disc * (1.0 - p);

  // Node (n, j) sits at log-moneyness (2j − n)·du.
  std::vector<double> level(2 * static_cast<size_t>(n_steps) + 1);
  for (int k = -n_steps; k <= n_steps; ++k) {
    level[k + n_steps] = spot * std::exp(std::min(k * du, kMaxLogMoneyness));
  }
  auto node_price = [&](int n, int j) { return level[2 * j - n + n_steps]; };

  std::vector<double> value(n_steps + 1);
  std::vector<char> exercised(n_steps + 1);
  for (int j = 0; j <= n_steps; ++j) value[j] = payoff(e.payoff_kind, node_price(n_steps, j), e.strike);

  LatticeRun out;
  std::vector<double> estimates;  // log-moneyness, from the innermost rows outwards
  for (int n = n_steps - 1; n >= 0; --n) {
    for (int j = 0; j <= n; ++j) {
      const double hold = pu * value[j + 1] + pd * value[j];
      const double ex = payoff(e.payoff_kind, node_price(n, j), e.strike);
      exercised[j] = ex > 0.0 && ex >= hold;
      value[j] = std::max(hold, ex);
    }
    if (n > kBoundaryProbeRows) continue;

    auto gap = [&](int j) { return value[j] - payoff(e.payoff_kind, node_price(n, j), e.strike); };
    auto logm = [&](int j) { return (2 * j - n) * du; };
    if (e.payoff_kind == OptionKind::Put) {
      int last = -1;
      while (last + 1 <= n && exercised[last + 1]) ++last;
      if (last >= 0 && last + 2 <= n && !exercised[last + 1] && !exercised[last + 2]) {
        const double x = extrapolate_boundary(logm(last + 1), gap(last + 1), logm(last + 2),
                                              gap(last + 2), logm(last));
        estimates.push_back(x);
      }
    } else {
      int first = n + 1;
      while (first - 1 >= 0 && exercised[first - 1]) --first;
      if (first <= n && first - 2 >= 0 && !exercised[first - 1] && !exercised[first - 2]) {
        const double x = extrapolate_boundary(logm(first - 1), gap(first - 1), logm(first - 2),
                                              gap(first - 2), logm(first));
        estimates.push_back(x);
      }
    }
  }
  out.price = value[0];
  if (estimates.empty()) {
    out.boundary_estimate = std::numeric_limits<double>::quiet_NaN();
  } else {
    const size_t take = std::min<size_t>(estimates.size(), kBoundaryRows);
    double sum = 0.0;
    for (size_t i = estimates.size() - take; i < estimates.size(); ++i) sum += estimates[i];
    out.boundary_estimate = spot * std::exp(sum / static_cast<double>(take));
  }
  return out;
}

OracleReport lattice_price(const EquivalentPerpetual& e, const MarketParams& m,
                           const LatticeConfig& cfg, ExponentConvention convention) {
  m.validate();
  cfg.validate();
  if (std::abs((e.rate_eff - e.dividend_eff) - m.rate) > 1e-12) {
    throw ParameterError("equivalent perpetual drift (rate_eff - dividend_eff) must equal rate");
  }
  ContractParams c;
  c.strike = e.strike;
  c.amort = e.dividend_eff;
  c.kind = e.payoff_kind;
  c.convention = convention;
  c.validate();

  const LatticeRun coarse = run_lattice(e, m.spot, m.vol, cfg.horizon, cfg.steps);
  const LatticeRun fine = run_lattice(e, m.spot, m.vol, cfg.horizon, 2 * cfg.steps);
  const double change = std::abs(fine.price - coarse.price) / std::max(std::abs(fine.price), 1e-12);
  if (change > cfg.convergence) {
    throw ConvergenceError("lattice not converged: doubling steps from " +
                           std::to_string(cfg.steps) + " changed the price by a relative " +
                           std::to_string(change) + " > " + std::to_string(cfg.convergence));
  }

  OracleReport rep;
  rep.coarse_price = coarse.price;
  rep.refined_price = fine.price;
  rep.oracle_price = cfg.richardson ? 2.0 * fine.price - coarse.price : fine.price;
  rep.boundary_estimate = fine.boundary_estimate;
  rep.analytic_price = price(m, c).premium;
  rep.rel_error = std::abs(rep.oracle_price - rep.analytic_price) / std::max(rep.analytic_price, 1e-12);
  return rep;
}

std::vector<double> pde_residual(const MarketParams& m, const ContractParams& c,
                                 std::span<const double> spots, double premium_scale) {
  m.validate();
  c.validate();
  const double r = m.rate;
  const double disc = r + c.amort;
  std::vector<double> out;
  out.reserve(spots.size());
  for (double s : spots) {
    MarketParams at = m;
    at.spot = s;
    const Quote quote = price(at, c);
    if (quote.regime != Regime::Continuation) {
      throw RegionError("pde_residual: spot " + std::to_string(s) + " is outside the continuation region");
    }
    const double v = premium_scale * quote.premium;
    const double res = 0.5 * m.vol * m.vol * s * s * gamma(at, c) + r * s * delta(at, c) - disc * v;
    out.push_back(res / (disc * v));
  }
  return out;
}

double finite_difference(const std::function<double(double)>& f, double x, int order, FdMode mode,
                         double rel_step) {
  if (order != 1 && order != 2) throw ParameterError("order must be 1 or 2");
  if (rel_step == 0.0) throw ParameterError("rel_step must be non-zero");
  const double h = x == 0.0 ? rel_step : rel_step * std::abs(x);
  if (mode == FdMode::Central) {
    if (order == 1) return (f(x + h) - f(x - h)) / (2.0 * h);
    return (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h);
  }
  const double f0 = f(x);
  const double f1 = f(x + h);
  const double f2 = f(x + 2.0 * h);
  if (order == 1) return (-3.0 * f0 + 4.0 * f1 - f2) / (2.0 * h);
  const double f3 = f(x + 3.0 * h);
  return (2.0 * f0 - 5.0 * f1 + 4.0 * f2 - f3) / (h * h);
}

GreeksReport fd_greeks(const MarketParams& m, const ContractParams& c, double rel_step) {
  const Quote here = price(m, c);
  auto premium_at_spot = [&](double s) {
    MarketParams at = m;
    at.spot = s;
    return price(at, c).premium;
  };
  auto premium_at_vol = [&](double v) {
    MarketParams at = m;
    at.vol = v;
    return price(at, c).premium;
  };

  GreeksReport g;
  if (here.regime == Regime::ExerciseNow) {
    g.delta = payoff_sign(c.kind);
  } else {
    const double h = rel_step * m.spot;
    const bool straddles = c.kind == OptionKind::Call ? m.spot + h > here.boundary
                                                      : m.spot - h < here.boundary;
    if (straddles) {
      // step away from the boundary, into the continuation region
      const double step = c.kind == OptionKind::Call ? -rel_step : rel_step;
      g.delta = finite_difference(premium_at_spot, m.spot, 1, FdMode::Forward, step);
      g.gamma = finite_difference(premium_at_spot, m.spot, 2, FdMode::Forward, step);
    } else {
      g.delta = finite_difference(premium_at_spot, m.spot, 1, FdMode::Central, rel_step);
      g.gamma = finite_difference(premium_at_spot, m.spot, 2, FdMode::Central, rel_step);
    }
    g.vega = finite_difference(premium_at_vol, m.vol, 1, FdMode::Central, rel_step);
  }
  g.theta_explicit = 0.0;
  g.theta_economic = -c.amort * here.premium;
  return g;
}

}  // namespace ampo
