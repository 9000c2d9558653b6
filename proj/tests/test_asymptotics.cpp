#include <gtest/gtest.h>

#include "toporna/asymptotics.hpp"
#include "toporna/genfun.hpp"

namespace toporna {
namespace {

double D(const Real& r) { return static_cast<double>(r); }

struct Cell {
  int lambda, r;
  double mu;
};

// printed to four decimals
const std::vector<Cell> kTable = {
    {1, 1, 0.3333}, {1, 2, 0.3484}, {1, 3, 0.3582}, {1, 4, 0.3651}, {1, 5, 0.3704}, {1, 6, 0.3746},
    {2, 1, 0.2764}, {2, 2, 0.3172}, {2, 3, 0.3364}, {2, 4, 0.3482}, {2, 5, 0.3565}, {2, 6, 0.3627},
    {3, 2, 0.2983}, {3, 3, 0.3215}, {3, 4, 0.3358}, {3, 5, 0.3459}, {3, 6, 0.3534},
    {4, 3, 0.3113}, {4, 4, 0.3268}, {4, 5, 0.3378}, {4, 6, 0.3460},
    {5, 4, 0.3203}, {5, 5, 0.3316}, {5, 6, 0.3403},
    {6, 5, 0.3271}, {6, 6, 0.3359},
};

TEST(Rho, UnitParameters) {
  const Real third = Real(1) / 3;
  EXPECT_LT(D(abs(rho(1, 1, Real(1)) - third)), 1e-45);
  // 1 / (1 + 2 sqrt(y))
  EXPECT_LT(D(abs(rho(1, 1, Real("1.21")) - Real(1) / Real("3.2"))), 1e-45);
  for (const char* y : {"0.5", "0.8", "1.7", "2"}) {
    const Real yy(y);
    EXPECT_LT(D(abs(rho(1, 1, yy) - 1 / (1 + 2 * sqrt(yy)))), 1e-45) << y;
  }
}

TEST(Rho, NoOneArcs) {
  EXPECT_LT(D(abs(rho(2, 1, Real(1)) - (3 - sqrt(Real(5))) / 2)), 1e-45);
}

TEST(Rho, IsARootInsideTheUnitInterval) {
  for (const auto& c : kTable) {
    const Real x = rho(c.lambda, c.r, Real(1));
    EXPECT_GT(D(x), 0);
    EXPECT_LT(D(x), 1);
  }
}

TEST(Clt, UnitParametersExact) {
  const auto p = clt_params(1, 1);
  EXPECT_LT(D(abs(p.mu - Real(1) / 3)), 1e-40);
  // theta(s) = 1/(1 + 2 e^{s/2}) gives sigma^2 = 1/18
  EXPECT_LT(D(abs(p.sigma2 - Real(1) / 18)), 1e-40);
}

TEST(Clt, ReproducesPrintedTable) {
  for (const auto& c : kTable) {
    EXPECT_NEAR(D(clt_params(c.lambda, c.r).mu), c.mu, 5e-5) << c.lambda << "," << c.r;
  }
}

TEST(Clt, PositiveVarianceAndMonotoneMeans) {
  for (int lambda = 1; lambda <= 6; ++lambda) {
    for (int r = std::max(1, lambda - 1); r <= 6; ++r) {
      const auto p = clt_params(lambda, r);
      EXPECT_GT(D(p.sigma2), 0);
      if (r < 6) EXPECT_LT(D(p.mu), D(clt_params(lambda, r + 1).mu));
      if (lambda > 1) EXPECT_LT(D(p.mu), D(clt_params(lambda - 1, r).mu));
    }
  }
}

TEST(Clt, FiniteDifferenceCrossCheck) {
  for (auto [l, r] : std::vector<std::pair<int, int>>{{1, 1}, {2, 2}, {4, 3}, {6, 6}}) {
    const auto exact = clt_params(l, r);
    const auto fd = clt_params_finite_difference(l, r, Real("1e-8"));
    EXPECT_NEAR(D(fd.mu), D(exact.mu), 1e-12);
    EXPECT_NEAR(D(fd.sigma2), D(exact.sigma2), 1e-8);
  }
}

TEST(Clt, MatchesExactMomentsSlowly) {
  // E[arcs]/n at n = 200 is within 1% of mu for genus 1
  GFParams p;
  p.g = 1;
  p.order = 201;
  const auto m = moments(p, 200);
  EXPECT_NEAR(m.mean.get_d() / 200, 1.0 / 3, 0.01 / 3);
}

TEST(PkLeading, ProbabilitiesSumToOneExactly) {
  SqrtForm sum{0, 0, 0};
  for (PkKind k : {PkKind::H, PkKind::K, PkKind::L, PkKind::M}) {
    EXPECT_EQ(pk_leading_term(k).denominator, (SqrtForm{-51, 0, 16}));
    sum = sum + pk_leading_term(k).numerator;
  }
  EXPECT_EQ(sum, (SqrtForm{-51, 0, 16}));
}

TEST(PkLeading, Values) {
  EXPECT_NEAR(D(pk_expectation_asymptotic(PkKind::H, 10000)), 288.0 / 159949, 1e-15);
  EXPECT_GT(D(pk_expectation_asymptotic(PkKind::M, 1000000)), 0.98);
  Real total = 0;
  for (PkKind k : {PkKind::H, PkKind::K, PkKind::L, PkKind::M}) total += pk_expectation_asymptotic(k, 500);
  EXPECT_LT(D(abs(total - 1)), 1e-40);
  EXPECT_THROW(pk_expectation_asymptotic(PkKind::H, 3), std::invalid_argument);
}

TEST(ExponentFit, RecoversKnownPowers) {
  // a_n = 3^n n^{-3/2}, rounded to a double-precision mantissa
  std::vector<Rational> coeffs;
  for (long n = 100; n < 200; ++n) {
    Rational v(std::pow(static_cast<double>(n), -1.5));
    for (long i = 0; i < n; ++i) v *= 3;
    coeffs.push_back(v);
  }
  EXPECT_NEAR(exponent_fit(coeffs, 100, Real(1) / 3), -1.5, 1e-6);
  EXPECT_THROW(exponent_fit(std::vector<Rational>(10, 1), 1, Real(1)), std::invalid_argument);
  std::vector<Rational> bad(60, 1);
  bad[55] = 0;
  EXPECT_THROW(exponent_fit(bad, 1, Real(1)), std::invalid_argument);
}

TEST(ExponentFit, SecondaryStructuresAtShortRange) {
  GFParams p;
  p.order = 201;
  const auto d0 = d0_series(p).value();
  std::vector<Rational> window;
  for (std::size_t n = 100; n <= 200; ++n) window.push_back(d0[n]);
  EXPECT_NEAR(exponent_fit(window, 100, Real(1) / 3), -1.5, 0.1);
}

}  // namespace
}  // namespace toporna
