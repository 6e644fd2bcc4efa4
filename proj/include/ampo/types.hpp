#pragma once

#include <stdexcept>
#include <string>

namespace ampo {

enum class OptionKind { Call, Put };
enum class Regime { Continuation, ExerciseNow };

// Which closed form the exponents follow.
//
// PlusHalf (default): radical (r/σ² + 1/2)² + 2(r+q)/σ². The reference
// values (α_C = 1.6 at r=5%, σ=50%, q=10%; q* ≈ 14.26%) use this form.
// Its power solutions satisfy ½σ²S²V'' + rSV' − (2r+q)V = 0.
//
// MinusHalf: radical (r/σ² − 1/2)² + 2(r+q)/σ², the exponents of a
// perpetual American option with rate r+q and dividend yield q, i.e. the
// solutions of ½σ²S²V'' + rSV' − (r+q)V = 0. Both coincide when r = 0.
enum class ExponentConvention { PlusHalf, MinusHalf };

/// Invalid input; the message names the offending field.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A formula is evaluated outside its mathematical domain.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A continuation-region-only quantity was requested in the exercise region.
class RegionError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A numerical oracle did not converge to the requested tolerance.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Root finding / optimisation could not produce an answer.
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Underlying state under geometric Brownian motion. Rates and volatility
/// are annualised decimals.
struct MarketParams {
  double spot = 100.0;
  double rate = 0.0;
  double vol = 0.2;

  void validate() const;
};

struct ContractParams {
  double strike = 100.0;
  double amort = 0.1;  // q, per year
  OptionKind kind = OptionKind::Call;
  ExponentConvention convention = ExponentConvention::PlusHalf;

  /// Requires q > 0. The q = 0 limit is only reachable through the
  /// exponent and limit-check functions.
  void validate() const;
};

struct Exponents {
  double alpha_c = 0.0;
  double alpha_p = 0.0;
  double alpha_bar = 0.0;  // (alpha_c + alpha_p) / 2, equals the radical

  /// False in the degenerate r = q = 0 limit (alpha_c = 1, alpha_p = 0).
  [[nodiscard]] bool valid_for_pricing() const { return alpha_c > 1.0 && alpha_p > 0.0; }
};

struct Quote {
  double premium = 0.0;
  double boundary = 0.0;
  Regime regime = Regime::Continuation;
};

/// Vanilla perpetual American option with the same price as the AmPO.
struct EquivalentPerpetual {
  double rate_eff = 0.0;      // r + q
  double dividend_eff = 0.0;  // q
  OptionKind payoff_kind = OptionKind::Call;
  double strike = 0.0;
};

struct AmortizationSchedule {
  double initial_notional = 1.0;
  double amort = 0.0;
};

std::string to_string(OptionKind kind);
std::string to_string(Regime regime);
std::string to_string(ExponentConvention convention);

OptionKind parse_option_kind(const std::string& text);
ExponentConvention parse_convention(const std::string& text);

/// +1 for calls, -1 for puts.
inline double payoff_sign(OptionKind kind) { return kind == OptionKind::Call ? 1.0 : -1.0; }

}  // namespace ampo
