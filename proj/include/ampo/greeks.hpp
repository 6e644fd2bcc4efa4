#pragma once

#include "ampo/types.hpp"

namespace ampo {

/// Sensitivities of the per-unit premium at constant notional.
struct GreeksReport {
  double delta = 0.0;
  double gamma = 0.0;
  double theta_explicit = 0.0;  // perpetual: no calendar dependence
  double theta_economic = 0.0;  // -q * premium, decay of the held notional
  double vega = 0.0;            // per unit of sigma
};

/// European call under Black-Scholes with no dividends. For a
/// non-dividend-paying underlying this is also the American call premium.
struct DatedGreeksReport {
  double premium = 0.0;
  double delta = 0.0;
  double gamma = 0.0;
  double theta = 0.0;  // per year, calendar time
  double vega = 0.0;
};

// Piecewise: ±1 / 0 / 0 in the exercise region.
double delta(const MarketParams& m, const ContractParams& c);
double gamma(const MarketParams& m, const ContractParams& c);
double vega(const MarketParams& m, const ContractParams& c);

double theta_economic(const MarketParams& m, const ContractParams& c);

GreeksReport greeks(const MarketParams& m, const ContractParams& c);

double norm_pdf(double x);
double norm_cdf(double x);

DatedGreeksReport dated_bs_call(const MarketParams& m, double strike, double maturity);

}  // namespace ampo
