#include "ampo/greeks.hpp"

#include <cmath>
#include <numbers>

#include "ampo/pricing.hpp"

namespace ampo {

namespace {

struct Setup {
  Exponents exps;
  double alpha = 0.0;
  Quote quote;
};

Setup setup(const MarketParams& m, const ContractParams& c) {
  m.validate();
  c.validate();
  Setup s;
  s.exps = compute_exponents(m, c.amort, c.convention);
  s.alpha = kind_exponent(s.exps, c.kind);
  s.quote = quote_from_exponent(c.kind, m.spot, c.strike, s.alpha);
  return s;
}

}  // namespace

double delta(const MarketParams& m, const ContractParams& c) {
  const Setup s = setup(m, c);
  if (s.quote.regime == Regime::ExerciseNow) return payoff_sign(c.kind);
  const double a = s.alpha;
  if (c.kind == OptionKind::Call) {
    const double base = (a - 1.0) * m.spot / (a * c.strike);
    return std::exp((a - 1.0) * std::log(base));
  }
  const double base = a * c.strike / ((1.0 + a) * m.spot);
  return -std::exp((1.0 + a) * std::log(base));
}

double gamma(const MarketParams& m, const ContractParams& c) {
  const Setup s = setup(m, c);
  if (s.quote.regime == Regime::ExerciseNow) return 0.0;
  const double a = s.alpha;
  if (c.kind == OptionKind::Call) {
    const double base = (a - 1.0) * m.spot / (a * c.strike);
    return (a - 1.0) * (a - 1.0) / (a * c.strike) * std::exp((a - 2.0) * std::log(base));
  }
  const double base = a * c.strike / ((1.0 + a) * m.spot);
  return a * c.strike / (m.spot * m.spot) * std::exp(a * std::log(base));
}

// ∂α/∂σ comes from implicitly differentiating ½σ²α(α∓1) ± rα − D = 0 at
// fixed q; for PlusHalf D = 2r+q.
double vega(const MarketParams& m, const ContractParams& c) {
  const Setup s = setup(m, c);
  if (s.quote.regime == Regime::ExerciseNow) return 0.0;
  const double a = s.alpha;
  const double sig = m.vol;
  const double var = sig * sig;
  const double r = m.rate;
  const double disc = ode_discount_rate(m, c.amort, c.convention);
  const double v = s.quote.premium;
  if (c.kind == OptionKind::Call) {
    const double log_term = std::log((a - 1.0) * m.spot / (a * c.strike));
    return 4.0 * v / sig * log_term * ((r * a - disc) / ((2.0 * a - 1.0) * var + 2.0 * r));
  }
  const double denom = (2.0 * a + 1.0) * var - 2.0 * r;
  if (denom == 0.0) throw DomainError("put vega denominator (2*alpha_p+1)*vol^2 - 2*rate vanishes");
  const double log_term = std::log((1.0 + a) * m.spot / (a * c.strike));
  return 4.0 * v / sig * log_term * ((r * a + disc) / denom);
}

double theta_economic(const MarketParams& m, const ContractParams& c) {
  return -c.amort * price(m, c).premium;
}

GreeksReport greeks(const MarketParams& m, const ContractParams& c) {
  GreeksReport g;
  g.delta = delta(m, c);
  g.gamma = gamma(m, c);
  g.theta_explicit = 0.0;
  g.theta_economic = theta_economic(m, c);
  g.vega = vega(m, c);
  return g;
}

double norm_pdf(double x) { return std::exp(-0.5 * x * x) * (0.5 * std::numbers::inv_sqrtpi * std::numbers::sqrt2); }

double norm_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

DatedGreeksReport dated_bs_call(const MarketParams& m, double strike, double maturity) {
  m.validate();
  if (!(strike > 0.0)) throw ParameterError("strike must be > 0");
  if (!(maturity > 0.0)) throw ParameterError("maturity must be > 0");
  const double sqrt_t = std::sqrt(maturity);
  const double sd = m.vol * sqrt_t;
  const double d1 = (std::log(m.spot / strike) + (m.rate + 0.5 * m.vol * m.vol) * maturity) / sd;
  const double d2 = d1 - sd;
  const double df = std::exp(-m.rate * maturity);
  const double pdf1 = norm_pdf(d1);

  DatedGreeksReport g;
  g.premium = m.spot * norm_cdf(d1) - strike * df * norm_cdf(d2);
  g.delta = norm_cdf(d1);
  g.gamma = pdf1 / (m.spot * sd);
  g.theta = -m.spot * pdf1 * m.vol / (2.0 * sqrt_t) - m.rate * strike * df * norm_cdf(d2);
  g.vega = m.spot * pdf1 * sqrt_t;
  return g;
}

}  // namespace ampo
