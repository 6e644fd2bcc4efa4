#include "ampo/types.hpp"

#include <cmath>

namespace ampo {

namespace {

void require_finite(double v, const char* field) {
  if (!std::isfinite(v)) {
    throw ParameterError(std::string(field) + " must be finite");
  }
}

}  // namespace

void MarketParams::validate() const {
  require_finite(spot, "spot");
  require_finite(rate, "rate");
  require_finite(vol, "vol");
  if (spot <= 0.0) throw ParameterError("spot must be > 0");
  if (vol <= 0.0) throw ParameterError("vol must be > 0");
  if (rate < 0.0) throw ParameterError("rate must be >= 0");
}

void ContractParams::validate() const {
  require_finite(strike, "strike");
  require_finite(amort, "amort");
  if (strike <= 0.0) throw ParameterError("strike must be > 0");
  if (amort <= 0.0) throw ParameterError("amort must be > 0");
}

std::string to_string(OptionKind kind) { return kind == OptionKind::Call ? "call" : "put"; }

std::string to_string(Regime regime) {
  return regime == Regime::Continuation ? "continuation" : "exercise_now";
}

std::string to_string(ExponentConvention convention) {
  return convention == ExponentConvention::PlusHalf ? "plus-half" : "minus-half";
}

OptionKind parse_option_kind(const std::string& text) {
  if (text == "call") return OptionKind::Call;
  if (text == "put") return OptionKind::Put;
  throw ParameterError("kind must be 'call' or 'put', got '" + text + "'");
}

ExponentConvention parse_convention(const std::string& text) {
  if (text == "plus-half") return ExponentConvention::PlusHalf;
  if (text == "minus-half") return ExponentConvention::MinusHalf;
  throw ParameterError("convention must be 'plus-half' or 'minus-half', got '" + text + "'");
}

}  // namespace ampo
