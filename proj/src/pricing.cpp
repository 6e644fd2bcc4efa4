#include "ampo/pricing.hpp"

#include <algorithm>
#include <cmath>

namespace ampo {

double ode_discount_rate(const MarketParams& m, double q, ExponentConvention convention) {
  return convention == ExponentConvention::PlusHalf ? 2.0 * m.rate + q : m.rate + q;
}

Exponents compute_exponents(const MarketParams& m, double q, ExponentConvention convention) {
  if (!(m.vol > 0.0)) throw DomainError("vol must be > 0 to compute exponents");
  if (!(q >= 0.0)) throw ParameterError("amort must be >= 0");
  const double var = m.vol * m.vol;
  const double drift = m.rate / var;
  const double shift = convention == ExponentConvention::PlusHalf ? 0.5 : -0.5;
  const double radical = std::sqrt((drift + shift) * (drift + shift) + 2.0 * (m.rate + q) / var);

  Exponents e;
  e.alpha_c = radical - drift + 0.5;
  e.alpha_p = radical + drift - 0.5;
  e.alpha_bar = 0.5 * (e.alpha_c + e.alpha_p);
  return e;
}

double intrinsic_value(OptionKind kind, double spot, double strike) {
  return std::max(payoff_sign(kind) * (spot - strike), 0.0);
}

double boundary_from_exponent(OptionKind kind, double strike, double alpha) {
  if (kind == OptionKind::Call) {
    if (!(alpha > 1.0)) throw DomainError("call exponent must exceed 1");
    return alpha * strike / (alpha - 1.0);
  }
  if (!(alpha > 0.0)) throw DomainError("put exponent must be positive");
  return alpha * strike / (1.0 + alpha);
}

Quote quote_from_exponent(OptionKind kind, double spot, double strike, double alpha) {
  Quote quote;
  quote.boundary = boundary_from_exponent(kind, strike, alpha);
  const bool exercise =
      kind == OptionKind::Call ? spot > quote.boundary : spot < quote.boundary;
  if (exercise) {
    quote.regime = Regime::ExerciseNow;
    quote.premium = intrinsic_value(kind, spot, strike);
    return quote;
  }
  // Both bases are positive in the continuation region.
  if (kind == OptionKind::Call) {
    const double base = (alpha - 1.0) * spot / (alpha * strike);
    quote.premium = strike / (alpha - 1.0) * std::exp(alpha * std::log(base));
  } else {
    const double base = alpha * strike / ((1.0 + alpha) * spot);
    quote.premium = strike / (1.0 + alpha) * std::exp(alpha * std::log(base));
  }
  return quote;
}

double kind_exponent(const Exponents& e, OptionKind kind) {
  return kind == OptionKind::Call ? e.alpha_c : e.alpha_p;
}

double exercise_boundary(const MarketParams& m, const ContractParams& c) {
  m.validate();
  c.validate();
  const Exponents e = compute_exponents(m, c.amort, c.convention);
  return boundary_from_exponent(c.kind, c.strike, kind_exponent(e, c.kind));
}

Quote price(const MarketParams& m, const ContractParams& c) {
  m.validate();
  c.validate();
  const Exponents e = compute_exponents(m, c.amort, c.convention);
  return quote_from_exponent(c.kind, m.spot, c.strike, kind_exponent(e, c.kind));
}

bool in_continuation(const MarketParams& m, const ContractParams& c) {
  const double b = exercise_boundary(m, c);
  return c.kind == OptionKind::Call ? m.spot <= b : m.spot >= b;
}

EquivalentPerpetual to_equivalent_perpetual(const ContractParams& c, const MarketParams& m) {
  c.validate();
  return {m.rate + c.amort, c.amort, c.kind, c.strike};
}

double notional_at(const AmortizationSchedule& s, double t) {
  if (!(s.initial_notional > 0.0)) throw ParameterError("initial_notional must be > 0");
  if (!(t >= 0.0)) throw ParameterError("t must be >= 0");
  return s.initial_notional * std::exp(-s.amort * t);
}

}  // namespace ampo
