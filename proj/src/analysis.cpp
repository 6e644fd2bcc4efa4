#include "ampo/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ampo/greeks.hpp"
#include "ampo/pricing.hpp"

namespace ampo {

namespace {

constexpr double kPremiumTolerance = 1e-10;

ContractParams call_contract(double strike, double q, ExponentConvention convention) {
  ContractParams c;
  c.strike = strike;
  c.amort = q;
  c.kind = OptionKind::Call;
  c.convention = convention;
  return c;
}

}  // namespace

std::string to_string(StrategyKind kind) {
  switch (kind) {
    case StrategyKind::CallOnly: return "call";
    case StrategyKind::PutOnly: return "put";
    case StrategyKind::Straddle: return "straddle";
  }
  return "?";
}

std::string to_string(OptimumStatus status) {
  switch (status) {
    case OptimumStatus::Interior: return "interior";
    case OptimumStatus::BoundaryMaximum: return "boundary_maximum";
    case OptimumStatus::Multimodal: return "multimodal";
  }
  return "?";
}

StrategyKind parse_strategy(const std::string& text) {
  if (text == "call") return StrategyKind::CallOnly;
  if (text == "put") return StrategyKind::PutOnly;
  if (text == "straddle") return StrategyKind::Straddle;
  throw ParameterError("strategy must be 'call', 'put' or 'straddle', got '" + text + "'");
}

std::vector<double> linspace(double lo, double hi, int n) {
  if (n < 1) throw ParameterError("grid size must be >= 1");
  if (n == 1) return {lo};
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) out[i] = lo + (hi - lo) * i / (n - 1);
  out.back() = hi;
  return out;
}

MaturityResult effective_maturity(const MarketParams& m, double strike, double q,
                                  ExponentConvention convention) {
  const double target = price(m, call_contract(strike, q, convention)).premium;
  // The dated call premium rises in T towards S0 (r >= 0, no dividends).
  if (target >= m.spot - kPremiumTolerance) {
    throw SolverError("AmPO premium reaches the spot; no finite effective maturity");
  }
  const double floor = intrinsic_value(OptionKind::Call, m.spot, strike);
  MaturityResult out;
  out.q = q;
  if (target <= floor + kPremiumTolerance) {
    out.effective_maturity = 0.0;
    out.effective_notional = 1.0;
    return out;
  }

  auto dated = [&](double t) { return dated_bs_call(m, strike, t).premium; };
  double lo = 0.0;
  double hi = 1.0;
  while (dated(hi) < target) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e6) throw SolverError("could not bracket the effective maturity");
  }
  double mid = 0.5 * (lo + hi);
  for (int it = 0; it < 400; ++it) {
    mid = 0.5 * (lo + hi);
    const double diff = dated(mid) - target;
    if (std::abs(diff) <= kPremiumTolerance || hi - lo <= 1e-15 * hi) break;
    (diff < 0.0 ? lo : hi) = mid;
  }
  out.effective_maturity = mid;
  out.effective_notional = std::exp(-q * mid);
  return out;
}

std::vector<MaturityResult> effective_notional_curve(const MarketParams& m, double strike,
                                                     std::span<const double> q_grid,
                                                     ExponentConvention convention) {
  std::vector<MaturityResult> out;
  out.reserve(q_grid.size());
  for (double q : q_grid) {
    if (!(q > 0.0)) throw ParameterError("q grid values must be > 0");
    out.push_back(effective_maturity(m, strike, q, convention));
  }
  return out;
}

std::vector<RatioPoint> ratio_study(const MarketParams& m, double strike,
                                    std::span<const double> q_grid,
                                    ExponentConvention convention) {
  std::vector<RatioPoint> out;
  out.reserve(q_grid.size());
  for (double q : q_grid) {
    const MaturityResult mat = effective_maturity(m, strike, q, convention);
    if (!(mat.effective_maturity > 0.0)) {
      throw SolverError("effective maturity is zero at q = " + std::to_string(q));
    }
    const DatedGreeksReport dated = dated_bs_call(m, strike, mat.effective_maturity);
    const ContractParams c = call_contract(strike, q, convention);
    RatioPoint pt;
    pt.q = q;
    pt.gamma_ratio = gamma(m, c) / dated.gamma;
    pt.theta_ratio = std::abs(theta_economic(m, c)) / std::abs(dated.theta);
    out.push_back(pt);
  }
  return out;
}

double positional_vega(const MarketParams& m, double strike, const StrategySpec& s, double q,
                       ExponentConvention convention) {
  if (!(s.budget > 0.0)) throw ParameterError("budget must be > 0");
  ContractParams c;
  c.strike = strike;
  c.amort = q;
  c.convention = convention;
  double prem = 0.0;
  double veg = 0.0;
  if (s.kind != StrategyKind::PutOnly) {
    c.kind = OptionKind::Call;
    prem += price(m, c).premium;
    veg += vega(m, c);
  }
  if (s.kind != StrategyKind::CallOnly) {
    c.kind = OptionKind::Put;
    prem += price(m, c).premium;
    veg += vega(m, c);
  }
  if (prem < 1e-12) throw SolverError("premium below 1e-12; positional vega is degenerate");
  return s.budget * veg / prem;
}

double golden_section_maximize(const std::function<double(double)>& f, double lo, double hi,
                               double tol) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo;
  double b = hi;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = f(x1);
  double f2 = f(x2);
  while (b - a > tol) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = f(x1);
    }
  }
  return 0.5 * (a + b);
}

OptimizationResult optimize_q(const MarketParams& m, double strike, const StrategySpec& s,
                              double q_lo, double q_hi, int grid_points,
                              ExponentConvention convention) {
  if (!(q_lo > 0.0) || !(q_hi > q_lo)) throw ParameterError("q range must satisfy 0 < q_min < q_max");
  if (grid_points < 200) throw ParameterError("grid_points must be >= 200");

  auto objective = [&](double q) { return positional_vega(m, strike, s, q, convention); };
  OptimizationResult out;
  const std::vector<double> grid = linspace(q_lo, q_hi, grid_points);
  out.curve.reserve(grid.size());
  for (double q : grid) out.curve.emplace_back(q, objective(q));

  const auto best = std::max_element(out.curve.begin(), out.curve.end(),
                                     [](const auto& a, const auto& b) { return a.second < b.second; });
  const auto idx = static_cast<size_t>(best - out.curve.begin());

  // Local maxima of the sampled curve (edges count when they dominate their neighbour).
  int peaks = 0;
  for (size_t i = 0; i < out.curve.size(); ++i) {
    const double v = out.curve[i].second;
    const bool left_ok = i == 0 || out.curve[i - 1].second < v;
    const bool right_ok = i + 1 == out.curve.size() || out.curve[i + 1].second < v;
    if (left_ok && right_ok) ++peaks;
  }

  out.q_star = best->first;
  out.positional_vega_at_star = best->second;
  if (idx == 0 || idx + 1 == out.curve.size()) {
    out.status = OptimumStatus::BoundaryMaximum;
    return out;
  }
  if (peaks > 1) {
    out.status = OptimumStatus::Multimodal;
    return out;
  }
  out.status = OptimumStatus::Interior;
  out.q_star = golden_section_maximize(objective, out.curve[idx - 1].first, out.curve[idx + 1].first, 1e-6);
  out.positional_vega_at_star = objective(out.q_star);
  return out;
}

}  // namespace ampo
