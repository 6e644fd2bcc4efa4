#pragma once

#include "ampo/types.hpp"

namespace ampo {

/// Discount rate D in the ODE ½σ²S²V'' + rSV' − D·V = 0 that the chosen
/// exponents solve: 2r+q for PlusHalf, r+q for MinusHalf.
double ode_discount_rate(const MarketParams& m, double q, ExponentConvention convention);

/// Exponents of the power-law solutions. Accepts q >= 0; the r = q = 0
/// limit returns alpha_c = 1, alpha_p = 0, flagged by valid_for_pricing().
Exponents compute_exponents(const MarketParams& m, double q,
                            ExponentConvention convention = ExponentConvention::PlusHalf);

double intrinsic_value(OptionKind kind, double spot, double strike);

/// Boundary implied by one exponent: αK/(α−1) for calls, αK/(1+α) for puts.
double boundary_from_exponent(OptionKind kind, double strike, double alpha);

/// Closed-form premium for a given exponent, extended by intrinsic value
/// beyond the boundary. Shared by the AmPO and the q = 0 vanilla limit.
Quote quote_from_exponent(OptionKind kind, double spot, double strike, double alpha);

/// Exponent relevant to `c.kind` (alpha_c or alpha_p).
double kind_exponent(const Exponents& e, OptionKind kind);

double exercise_boundary(const MarketParams& m, const ContractParams& c);

/// Premium per unit notional, optimal exercise boundary and regime.
/// Spot exactly on the boundary is classified as Continuation.
Quote price(const MarketParams& m, const ContractParams& c);

/// True when the closed-form (non-intrinsic) branch applies.
bool in_continuation(const MarketParams& m, const ContractParams& c);

EquivalentPerpetual to_equivalent_perpetual(const ContractParams& c, const MarketParams& m);

double notional_at(const AmortizationSchedule& s, double t);

}  // namespace ampo
