#pragma once

#include <functional>
#include <string>
#include <span>
#include <utility>
#include <vector>

#include "ampo/types.hpp"

namespace ampo {

/// Dated at-the-money call matched to an AmPO call by premium.
struct MaturityResult {
  double q = 0.0;
  double effective_maturity = 0.0;  // years
  double effective_notional = 1.0;  // exp(-q T)
};

struct RatioPoint {
  double q = 0.0;
  double gamma_ratio = 0.0;  // AmPO gamma / dated gamma
  double theta_ratio = 0.0;  // q*C0 / |dated theta|
};

enum class StrategyKind { CallOnly, PutOnly, Straddle };

struct StrategySpec {
  StrategyKind kind = StrategyKind::PutOnly;
  double budget = 100.0;
};

enum class OptimumStatus { Interior, BoundaryMaximum, Multimodal };

struct OptimizationResult {
  double q_star = 0.0;
  double positional_vega_at_star = 0.0;
  OptimumStatus status = OptimumStatus::Interior;
  std::vector<std::pair<double, double>> curve;  // (q, positional vega)
};

std::string to_string(StrategyKind kind);
std::string to_string(OptimumStatus status);
StrategyKind parse_strategy(const std::string& text);

/// Maturity T at which dated_bs_call(m, strike, T) costs the same as the
/// AmPO call with rate q. Bracketing plus bisection to 1e-10 in premium.
MaturityResult effective_maturity(const MarketParams& m, double strike, double q,
                                  ExponentConvention convention = ExponentConvention::PlusHalf);

std::vector<MaturityResult> effective_notional_curve(
    const MarketParams& m, double strike, std::span<const double> q_grid,
    ExponentConvention convention = ExponentConvention::PlusHalf);

/// Gamma and theta of the AmPO call against the dated call at its effective
/// maturity, both at the current spot.
std::vector<RatioPoint> ratio_study(const MarketParams& m, double strike,
                                    std::span<const double> q_grid,
                                    ExponentConvention convention = ExponentConvention::PlusHalf);

/// budget * vega / premium. Straddle sums call and put premium and vega.
double positional_vega(const MarketParams& m, double strike, const StrategySpec& s, double q,
                       ExponentConvention convention = ExponentConvention::PlusHalf);

/// Coarse scan of `grid_points` (>= 200) evenly spaced rates, then
/// golden-section refinement to 1e-6 in q around a single interior peak.
OptimizationResult optimize_q(const MarketParams& m, double strike, const StrategySpec& s,
                              double q_lo, double q_hi, int grid_points = 201,
                              ExponentConvention convention = ExponentConvention::PlusHalf);

/// Maximiser of a unimodal f on [lo, hi], to an interval width of `tol`.
double golden_section_maximize(const std::function<double(double)>& f, double lo, double hi,
                               double tol);

std::vector<double> linspace(double lo, double hi, int n);

}  // namespace ampo
