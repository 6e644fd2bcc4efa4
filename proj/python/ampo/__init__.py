"""Amortizing perpetual option pricing, Greeks and numerical checks."""

from ._core import (
    ContractParams,
    ConvergenceError,
    DomainError,
    ExponentConvention,
    LatticeConfig,
    MarketParams,
    OptimumStatus,
    OptionKind,
    ParameterError,
    Regime,
    RegionError,
    SolverError,
    StrategyKind,
    compute_exponents,
    d_boundary_dq,
    d_premium_dq,
    effective_maturity,
    effective_notional_curve,
    exercise_boundary,
    greeks,
    in_continuation,
    lattice_price,
    optimize_q,
    pde_residual,
    positional_vega,
    price,
    ratio_study,
    statics,
)

__all__ = [name for name in dir() if not name.startswith("_")]
