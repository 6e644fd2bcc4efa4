#include "ampo/statics.hpp"

#include <algorithm>
#include <cmath>

#include "ampo/pricing.hpp"

namespace ampo {

namespace {

// 2r² + σ²(2D − r); equals 2r² + σ²(3r+2q) for PlusHalf.
double sigma_numerator(const MarketParams& m, double q, ExponentConvention convention) {
  const double r = m.rate;
  const double d = ode_discount_rate(m, q, convention);
  return 2.0 * r * r + m.vol * m.vol * (2.0 * d - r);
}

struct Local {
  Exponents exps;
  double alpha = 0.0;
  double premium = 0.0;
  double log_term = 0.0;  // ≤ 0 for calls, ≥ 0 for puts, 0 on the boundary
};

Local continuation_local(const MarketParams& m, const ContractParams& c) {
  m.validate();
  c.validate();
  Local l;
  l.exps = compute_exponents(m, c.amort, c.convention);
  l.alpha = kind_exponent(l.exps, c.kind);
  const Quote quote = quote_from_exponent(c.kind, m.spot, c.strike, l.alpha);
  if (quote.regime != Regime::Continuation) {
    throw RegionError("amortization-rate sensitivities are defined in the continuation region only");
  }
  l.premium = quote.premium;
  const double a = l.alpha;
  l.log_term = c.kind == OptionKind::Call ? std::log((a - 1.0) * m.spot / (a * c.strike))
                                          : std::log((1.0 + a) * m.spot / (a * c.strike));
  return l;
}

}  // namespace

double dalpha_bar_dsigma(const MarketParams& m, double q, ExponentConvention convention) {
  const double abar = compute_exponents(m, q, convention).alpha_bar;
  return -sigma_numerator(m, q, convention) / (std::pow(m.vol, 5) * abar);
}

double dalpha_c_dsigma(const MarketParams& m, double q, ExponentConvention convention) {
  const double abar = compute_exponents(m, q, convention).alpha_bar;
  const double var = m.vol * m.vol;
  return (2.0 * m.rate - sigma_numerator(m, q, convention) / (var * abar)) / (var * m.vol);
}

double dalpha_p_dsigma(const MarketParams& m, double q, ExponentConvention convention) {
  const double abar = compute_exponents(m, q, convention).alpha_bar;
  const double var = m.vol * m.vol;
  return -(2.0 * m.rate + sigma_numerator(m, q, convention) / (var * abar)) / (var * m.vol);
}

double d_premium_dq(const MarketParams& m, const ContractParams& c) {
  const Local l = continuation_local(m, c);
  const double scale = l.premium / (m.vol * m.vol * l.exps.alpha_bar);
  return c.kind == OptionKind::Call ? scale * l.log_term : -scale * l.log_term;
}

double d_boundary_dq(const MarketParams& m, const ContractParams& c) {
  m.validate();
  c.validate();
  const Exponents e = compute_exponents(m, c.amort, c.convention);
  const double var = m.vol * m.vol;
  if (c.kind == OptionKind::Call) {
    const double am1 = e.alpha_c - 1.0;
    return -c.strike / (var * am1 * am1 * e.alpha_bar);
  }
  const double ap1 = 1.0 + e.alpha_p;
  return c.strike / (var * ap1 * ap1 * e.alpha_bar);
}

MixedPartial d2_premium_dsigma_dq(const MarketParams& m, const ContractParams& c) {
  const Local l = continuation_local(m, c);
  const double var = m.vol * m.vol;
  const double abar = l.exps.alpha_bar;
  const double a = l.alpha;
  const double v = l.premium;
  const double lt = l.log_term;

  StaticsIntermediates f;
  f.dalpha_bar_dsigma = dalpha_bar_dsigma(m, c.amort, c.convention);
  if (c.kind == OptionKind::Call) {
    // ∂V/∂q = V·L/(σ²ᾱ), ∂V/∂α = V·L, ∂L/∂α = 1/(α(α−1)).
    f.d_dalpha = v / (var * abar) * (lt * lt + 1.0 / (a * (a - 1.0)));
    f.dalpha_dsigma = dalpha_c_dsigma(m, c.amort, c.convention);
    f.d_dalpha_bar = -v * lt / (var * abar * abar);
    f.explicit_sigma = -2.0 * v * lt / (var * m.vol * abar);
  } else {
    // ∂V/∂q = −V·L/(σ²ᾱ), ∂V/∂α = −V·L, ∂L/∂α = −1/(α(1+α)).
    f.d_dalpha = v / (var * abar) * (lt * lt + 1.0 / ((1.0 + a) * a));
    f.dalpha_dsigma = dalpha_p_dsigma(m, c.amort, c.convention);
    f.d_dalpha_bar = v * lt / (var * abar * abar);
    f.explicit_sigma = 2.0 * v * lt / (var * m.vol * abar);
  }
  MixedPartial out;
  out.intermediates = f;
  out.value = f.d_dalpha * f.dalpha_dsigma + f.d_dalpha_bar * f.dalpha_bar_dsigma + f.explicit_sigma;
  return out;
}

StaticsReport statics(const MarketParams& m, const ContractParams& c) {
  StaticsReport s;
  s.d_premium_dq = d_premium_dq(m, c);
  s.d_boundary_dq = d_boundary_dq(m, c);
  const MixedPartial mixed = d2_premium_dsigma_dq(m, c);
  s.d2_premium_dsigma_dq = mixed.value;
  s.intermediates = mixed.intermediates;
  return s;
}

double vanilla_perpetual_premium(const MarketParams& m, OptionKind kind, double strike,
                                 ExponentConvention convention) {
  m.validate();
  if (!(strike > 0.0)) throw ParameterError("strike must be > 0");
  const Exponents e = compute_exponents(m, 0.0, convention);
  if (!e.valid_for_pricing()) {
    throw DomainError("vanilla perpetual exponents are degenerate (rate = 0 and amort = 0)");
  }
  return quote_from_exponent(kind, m.spot, strike, kind_exponent(e, kind)).premium;
}

LimitReport limit_suite(const MarketParams& m, const ContractParams& c) {
  LimitReport rep;
  ContractParams probe = c;

  probe.amort = rep.small_q;
  rep.premium_small_q = price(m, probe).premium;
  rep.vanilla_premium = vanilla_perpetual_premium(m, c.kind, c.strike, c.convention);
  rep.small_q_rel_error =
      std::abs(rep.premium_small_q - rep.vanilla_premium) / std::max(rep.vanilla_premium, 1e-300);
  rep.small_q_ok = rep.small_q_rel_error <= 1e-6;

  probe.amort = rep.large_q;
  rep.premium_large_q = price(m, probe).premium;
  rep.intrinsic = intrinsic_value(c.kind, m.spot, c.strike);
  rep.large_q_gap = std::abs(rep.premium_large_q - rep.intrinsic);
  rep.large_q_ok = rep.large_q_gap <= 1e-4 * c.strike;
  return rep;
}

}  // namespace ampo
