#pragma once

#include <functional>
#include <span>
#include <vector>

#include "ampo/greeks.hpp"
#include "ampo/types.hpp"

namespace ampo {

/// Binomial lattice settings for pricing a perpetual by truncation at
/// `horizon` years. Every run also prices at 2*steps as a convergence check.
struct LatticeConfig {
  double horizon = 200.0;
  int steps = 4000;
  double convergence = 1e-2;  // max relative change between steps and 2*steps
  bool richardson = false;

  void validate() const;
};

struct OracleReport {
  double oracle_price = 0.0;
  double analytic_price = 0.0;
  double rel_error = 0.0;  // |oracle - analytic| / max(analytic, 1e-12)
  double boundary_estimate = 0.0;  // NaN when the lattice did not bracket it
  double coarse_price = 0.0;   // `steps`
  double refined_price = 0.0;  // `2*steps`
};

struct LatticeRun {
  double price = 0.0;
  double boundary_estimate = 0.0;
};

/// One backward induction of a CRR tree for an American option with
/// continuous dividend yield. Independent of the closed forms.
LatticeRun run_lattice(const EquivalentPerpetual& e, double spot, double vol, double horizon,
                       int steps);

/// Prices the equivalent perpetual on the lattice and compares with the
/// closed-form AmPO premium under `convention`. Throws ConvergenceError
/// when doubling the steps moves the price by more than cfg.convergence.
OracleReport lattice_price(const EquivalentPerpetual& e, const MarketParams& m,
                           const LatticeConfig& cfg,
                           ExponentConvention convention = ExponentConvention::PlusHalf);

/// Relative residual of ½σ²S²V'' + rSV' − (r+q)V at each spot, scaled by
/// (r+q)V, using the analytic premium, delta and gamma. `premium_scale`
/// multiplies V only, for checking the checker.
std::vector<double> pde_residual(const MarketParams& m, const ContractParams& c,
                                 std::span<const double> spots, double premium_scale = 1.0);

enum class FdMode { Central, Forward };

/// Second-order accurate first or second derivative. The step is
/// rel_step * |x| (rel_step itself at x = 0); a negative step with
/// FdMode::Forward gives the backward stencil.
double finite_difference(const std::function<double(double)>& f, double x, int order, FdMode mode,
                         double rel_step);

/// Delta, gamma and vega by finite differences of `price` alone. Spot
/// stencils switch to one-sided when the central one would straddle the
/// exercise boundary; vega uses a central stencil in sigma. Theta fields
/// are filled analytically (0 and -q*premium).
GreeksReport fd_greeks(const MarketParams& m, const ContractParams& c, double rel_step = 1e-4);

}  // namespace ampo
