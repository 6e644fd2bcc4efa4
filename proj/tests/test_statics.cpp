#include <gtest/gtest.h>

#include <cmath>

#include "ampo/greeks.hpp"
#include "ampo/oracle.hpp"
#include "ampo/pricing.hpp"
#include "ampo/statics.hpp"
#include "random_params.hpp"

using namespace ampo;
using ampo::test_support::rel_diff;

namespace {

MarketParams market_a() { return {100.0, 0.05, 0.5}; }

ContractParams contract_a(OptionKind kind) {
  ContractParams c;
  c.strike = 100.0;
  c.amort = 0.1;
  c.kind = kind;
  return c;
}

double premium(MarketParams m, ContractParams c, double vol, double q) {
  m.vol = vol;
  c.amort = q;
  return price(m, c).premium;
}

// Cross difference of the premium in (sigma, q), relative step 1e-4 in both.
double fd_mixed(const MarketParams& m, const ContractParams& c) {
  const double h = 1e-4 * m.vol;
  const double k = 1e-4 * c.amort;
  const double s = m.vol, q = c.amort;
  return (premium(m, c, s + h, q + k) - premium(m, c, s + h, q - k) - premium(m, c, s - h, q + k) +
          premium(m, c, s - h, q - k)) /
         (4.0 * h * k);
}

double fd_dq(const MarketParams& m, const ContractParams& c) {
  auto f = [&](double q) { return premium(m, c, m.vol, q); };
  return finite_difference(f, c.amort, 1, FdMode::Central, 1e-5);
}

double fd_boundary_dq(const MarketParams& m, const ContractParams& c) {
  auto f = [&](double q) {
    ContractParams at = c;
    at.amort = q;
    return exercise_boundary(m, at);
  };
  return finite_difference(f, c.amort, 1, FdMode::Central, 1e-5);
}

// mpmath.diff at 40 digits on an independent premium implementation.
constexpr double kCallDq = -104.7149831321702;
constexpr double kPutDq = -53.31901388922656;
constexpr double kCallMixed = -80.48604147931042;
constexpr double kPutMixed = -112.1709779811950;

}  // namespace

TEST(PremiumDq, Reference) {
  EXPECT_NEAR(d_premium_dq(market_a(), contract_a(OptionKind::Call)), kCallDq, 1e-10);
  EXPECT_NEAR(d_premium_dq(market_a(), contract_a(OptionKind::Put)), kPutDq, 1e-10);
  // -(25 / 0.325) ln 2
  EXPECT_NEAR(d_premium_dq(market_a(), contract_a(OptionKind::Put)), -25.0 / 0.325 * std::log(2.0), 1e-10);
}

TEST(PremiumDq, ZeroOnBoundary) {
  MarketParams m = market_a();
  ContractParams c = contract_a(OptionKind::Call);
  m.spot = exercise_boundary(m, c);
  EXPECT_NEAR(d_premium_dq(m, c), 0.0, 1e-10);
}

TEST(PremiumDq, RefusesExerciseRegion) {
  MarketParams m = market_a();
  m.spot = 300.0;
  EXPECT_THROW(d_premium_dq(m, contract_a(OptionKind::Call)), RegionError);
  m.spot = 40.0;
  EXPECT_THROW(d2_premium_dsigma_dq(m, contract_a(OptionKind::Put)), RegionError);
}

TEST(BoundaryDq, Reference) {
  EXPECT_NEAR(d_boundary_dq(market_a(), contract_a(OptionKind::Call)), -100.0 / (0.25 * 0.36 * 1.3), 1e-9);
  EXPECT_NEAR(d_boundary_dq(market_a(), contract_a(OptionKind::Put)), 100.0 / (0.25 * 4.0 * 1.3), 1e-10);
  EXPECT_LT(rel_diff(fd_boundary_dq(market_a(), contract_a(OptionKind::Call)),
                     d_boundary_dq(market_a(), contract_a(OptionKind::Call))), 1e-7);
}

TEST(BoundaryDq, LargeAmortization) {
  ContractParams c = contract_a(OptionKind::Put);
  c.amort = 1e3;
  // Approaches K like 1/sqrt(q); still ~1.1% below K at q = 1000.
  EXPECT_NEAR(exercise_boundary(market_a(), c), 98.890709286874718, 1e-9);
  EXPECT_GT(d_boundary_dq(market_a(), c), 0.0);
}

TEST(Mixed, PositiveForSomeContinuationSets) {
  // Call deep in the continuation region with small r and q: the mixed partial is positive.
  const MarketParams m{83.0, 0.03627, 0.63255};
  ContractParams c = contract_a(OptionKind::Call);
  c.amort = 0.03622;
  ASSERT_TRUE(in_continuation(m, c));
  const MixedPartial mp = d2_premium_dsigma_dq(m, c);
  EXPECT_GT(mp.value, 0.0);
  EXPECT_LT(rel_diff(mp.value, fd_mixed(m, c)), 1e-3);
}

TEST(Mixed, Reference) {
  const MixedPartial put = d2_premium_dsigma_dq(market_a(), contract_a(OptionKind::Put));
  EXPECT_NEAR(put.value, kPutMixed, 1e-9);
  EXPECT_LT(rel_diff(put.value, fd_mixed(market_a(), contract_a(OptionKind::Put))), 1e-4);

  const MixedPartial call = d2_premium_dsigma_dq(market_a(), contract_a(OptionKind::Call));
  EXPECT_NEAR(call.value, kCallMixed, 1e-9);
  EXPECT_LT(rel_diff(call.value, fd_mixed(market_a(), contract_a(OptionKind::Call))), 1e-4);
}

TEST(Mixed, DalphaBarDsigmaClosedForm) {
  // -(2r^2 + sigma^2 (3r + 2q)) / (sigma^5 alpha_bar)
  const double expected = -(2 * 0.0025 + 0.25 * (0.15 + 0.2)) / (std::pow(0.5, 5) * 1.3);
  const MixedPartial call = d2_premium_dsigma_dq(market_a(), contract_a(OptionKind::Call));
  EXPECT_NEAR(call.intermediates.dalpha_bar_dsigma, expected, 1e-13);
  EXPECT_LT(call.intermediates.dalpha_bar_dsigma, 0.0);
}

TEST(Mixed, AlphaBarFactorVanishesOnBoundary) {
  MarketParams m = market_a();
  const ContractParams c = contract_a(OptionKind::Call);
  m.spot = exercise_boundary(m, c);
  const MixedPartial mp = d2_premium_dsigma_dq(m, c);
  EXPECT_NEAR(mp.intermediates.d_dalpha_bar, 0.0, 1e-12);
  EXPECT_NEAR(mp.intermediates.explicit_sigma, 0.0, 1e-12);
}

TEST(Mixed, ExponentSensitivitiesTwoRoutes) {
  // Proof closed forms against implicit differentiation of the exponent
  // quadratic and against a numerical derivative of compute_exponents.
  test_support::CaseGenerator gen(31);
  for (int i = 0; i < 300; ++i) {
    const auto c = gen.any(OptionKind::Call);
    for (ExponentConvention conv : {ExponentConvention::PlusHalf, ExponentConvention::MinusHalf}) {
      const MarketParams m = c.market;
      const double q = c.contract.amort;
      const Exponents e = compute_exponents(m, q, conv);
      const double s = m.vol, var = s * s, r = m.rate, d = ode_discount_rate(m, q, conv);
      const double implicit_c = 4.0 * (r * e.alpha_c - d) / (s * ((2 * e.alpha_c - 1) * var + 2 * r));
      const double implicit_p = -4.0 * (r * e.alpha_p + d) / (s * ((2 * e.alpha_p + 1) * var - 2 * r));
      EXPECT_LT(rel_diff(dalpha_c_dsigma(m, q, conv), implicit_c), 1e-10);
      EXPECT_LT(rel_diff(dalpha_p_dsigma(m, q, conv), implicit_p), 1e-10);
      auto abar = [&](double v) { return compute_exponents({m.spot, r, v}, q, conv).alpha_bar; };
      EXPECT_LT(rel_diff(dalpha_bar_dsigma(m, q, conv), finite_difference(abar, s, 1, FdMode::Central, 1e-5)), 1e-7);
    }
  }
}

TEST(StaticsProperty, MatchFiniteDifferences) {
  test_support::CaseGenerator gen(32);
  for (int i = 0; i < 200; ++i) {
    for (OptionKind kind : {OptionKind::Call, OptionKind::Put}) {
      const auto c = gen.continuation(kind);
      const StaticsReport s = statics(c.market, c.contract);
      EXPECT_LT(rel_diff(fd_dq(c.market, c.contract), s.d_premium_dq), 1e-5) << i;
      EXPECT_LT(rel_diff(fd_boundary_dq(c.market, c.contract), s.d_boundary_dq), 1e-5) << i;
      EXPECT_LT(rel_diff(fd_mixed(c.market, c.contract), s.d2_premium_dsigma_dq), 1e-5) << i;
    }
  }
}

TEST(StaticsProperty, MixedPartialEqualsVegaSlope) {
  test_support::CaseGenerator gen(33);
  for (int i = 0; i < 100; ++i) {
    for (OptionKind kind : {OptionKind::Call, OptionKind::Put}) {
      const auto c = gen.continuation(kind);
      auto vega_at = [&](double q) {
        ContractParams at = c.contract;
        at.amort = q;
        return vega(c.market, at);
      };
      const double slope = finite_difference(vega_at, c.contract.amort, 1, FdMode::Central, 1e-5);
      EXPECT_LT(rel_diff(slope, d2_premium_dsigma_dq(c.market, c.contract).value), 1e-6) << i;
    }
  }
}

TEST(StaticsProperty, FirstOrderSigns) {
  test_support::CaseGenerator gen(34);
  for (int i = 0; i < 10000; ++i) {
    for (OptionKind kind : {OptionKind::Call, OptionKind::Put}) {
      const auto c = gen.continuation(kind, 0.0, 2.0);
      ASSERT_LE(d_premium_dq(c.market, c.contract), 0.0);
      const double db = d_boundary_dq(c.market, c.contract);
      if (kind == OptionKind::Call) ASSERT_LE(db, 0.0);
      else ASSERT_GE(db, 0.0);
    }
  }
}

TEST(StaticsProperty, ProofFactorSigns) {
  test_support::CaseGenerator gen(35);
  for (int i = 0; i < 10000; ++i) {
    const auto p = gen.continuation(OptionKind::Put, 1e-3, 2.0);
    const StaticsIntermediates f = d2_premium_dsigma_dq(p.market, p.contract).intermediates;
    ASSERT_GT(f.d_dalpha, 0.0);
    ASSERT_LT(f.dalpha_dsigma, 0.0);
    ASSERT_GT(f.d_dalpha_bar, 0.0);
    ASSERT_LT(f.dalpha_bar_dsigma, 0.0);

    const auto c = gen.continuation(OptionKind::Call, 1e-3, 2.0);
    const StaticsIntermediates g = d2_premium_dsigma_dq(c.market, c.contract).intermediates;
    ASSERT_GT(g.d_dalpha, 0.0);
    ASSERT_LT(g.dalpha_dsigma, 0.0);
    ASSERT_GT(g.d_dalpha_bar, 0.0);
    ASSERT_LT(g.dalpha_bar_dsigma, 0.0);
    // 4 r^2 sigma^4 abar^2 < (2 r^2 + sigma^2 (3r + 2q))^2
    const double r = c.market.rate, s2 = c.market.vol * c.market.vol, q = c.contract.amort;
    const double abar = compute_exponents(c.market, q).alpha_bar;
    ASSERT_LT(4 * r * r * s2 * s2 * abar * abar, std::pow(2 * r * r + s2 * (3 * r + 2 * q), 2));
  }
}

TEST(StaticsProperty, MonotoneScanReference) {
  const std::vector<double> grid = [] {
    std::vector<double> g;
    for (int i = 0; i < 50; ++i) g.push_back(0.01 + (2.0 - 0.01) * i / 49.0);
    return g;
  }();
  for (OptionKind kind : {OptionKind::Call, OptionKind::Put}) {
    ContractParams c = contract_a(kind);
    double prev_p = 1e300, prev_v = 1e300;
    for (double q : grid) {
      c.amort = q;
      const double p = price(market_a(), c).premium;
      const double v = vega(market_a(), c);
      EXPECT_LT(p, prev_p);
      EXPECT_LT(v, prev_v);
      prev_p = p;
      prev_v = v;
    }
  }
}

TEST(Limits, SmallAndLargeAmortization) {
  const LimitReport call = limit_suite(market_a(), contract_a(OptionKind::Call));
  EXPECT_TRUE(call.small_q_ok);
  EXPECT_LT(call.small_q_rel_error, 1e-6);
  // Convergence to intrinsic is slow: ~K / (e * alpha) with alpha ~ sqrt(2q)/sigma.
  EXPECT_NEAR(call.premium_large_q, 0.1301564020747008, 1e-12);

  MarketParams deep = market_a();
  deep.spot = 250.0;
  const LimitReport itm = limit_suite(deep, contract_a(OptionKind::Call));
  EXPECT_DOUBLE_EQ(itm.premium_large_q, 150.0);
  EXPECT_TRUE(itm.large_q_ok);

  EXPECT_THROW(vanilla_perpetual_premium({100.0, 0.0, 0.5}, OptionKind::Put, 100.0), DomainError);
}

TEST(Limits, LargeAmortizationDecaysLikeInverseRoot) {
  ContractParams c = contract_a(OptionKind::Put);
  double prev = 0.0;
  for (double q : {1e4, 1e6, 1e8}) {
    c.amort = q;
    const double scaled = price(market_a(), c).premium * std::sqrt(q);
    if (prev > 0.0) EXPECT_NEAR(scaled / prev, 1.0, 5e-3);
    prev = scaled;
  }
}
