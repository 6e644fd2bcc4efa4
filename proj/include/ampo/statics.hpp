#pragma once

#include "ampo/types.hpp"

namespace ampo {

/// Chain-rule pieces of ∂²V/∂σ∂q, with α the kind's exponent and ᾱ the
/// radical, treated as independent variables:
///
///   ∂²V/∂σ∂q = d_dalpha * dalpha_dsigma
///            + d_dalpha_bar * dalpha_bar_dsigma
///            + explicit_sigma
///
/// where d_dalpha = ∂/∂α (∂V/∂q), d_dalpha_bar = ∂/∂ᾱ (∂V/∂q) and
/// explicit_sigma is the derivative of the 1/(σ²ᾱ) prefactor of ∂V/∂q with
/// respect to its explicit σ, i.e. −(2/σ)·∂V/∂q.
struct StaticsIntermediates {
  double d_dalpha = 0.0;
  double dalpha_dsigma = 0.0;
  double d_dalpha_bar = 0.0;
  double dalpha_bar_dsigma = 0.0;
  double explicit_sigma = 0.0;
};

struct StaticsReport {
  double d_premium_dq = 0.0;
  double d_boundary_dq = 0.0;
  double d2_premium_dsigma_dq = 0.0;
  StaticsIntermediates intermediates;
};

struct MixedPartial {
  double value = 0.0;
  StaticsIntermediates intermediates;
};

// ∂ᾱ/∂σ, ∂α_C/∂σ, ∂α_P/∂σ at fixed r and q in closed form.
double dalpha_bar_dsigma(const MarketParams& m, double q, ExponentConvention convention);
double dalpha_c_dsigma(const MarketParams& m, double q, ExponentConvention convention);
double dalpha_p_dsigma(const MarketParams& m, double q, ExponentConvention convention);

/// Requires the continuation region (S <= S̄_C for calls, S >= S̄_P for
/// puts); throws RegionError otherwise.
double d_premium_dq(const MarketParams& m, const ContractParams& c);

double d_boundary_dq(const MarketParams& m, const ContractParams& c);

/// Continuation region only.
MixedPartial d2_premium_dsigma_dq(const MarketParams& m, const ContractParams& c);

StaticsReport statics(const MarketParams& m, const ContractParams& c);

/// Premium of the vanilla perpetual American option: the q = 0 exponents.
/// Needs r > 0 so the exponents stay non-degenerate.
double vanilla_perpetual_premium(const MarketParams& m, OptionKind kind, double strike,
                                 ExponentConvention convention = ExponentConvention::PlusHalf);

struct LimitReport {
  double small_q = 1e-10;
  double large_q = 1e4;
  double premium_small_q = 0.0;
  double vanilla_premium = 0.0;
  double small_q_rel_error = 0.0;
  double premium_large_q = 0.0;
  double intrinsic = 0.0;
  double large_q_gap = 0.0;  // |premium_large_q - intrinsic|
  bool small_q_ok = false;   // rel error <= 1e-6
  bool large_q_ok = false;   // gap <= 1e-4 * K
};

/// Premium at q -> 0 against the vanilla perpetual, and at q -> infinity
/// against intrinsic value. `c.amort` is ignored.
LimitReport limit_suite(const MarketParams& m, const ContractParams& c);

}  // namespace ampo
