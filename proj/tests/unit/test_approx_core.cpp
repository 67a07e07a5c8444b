#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "oracles.hpp"
#include "qalab/approx_core.hpp"
#include "qalab/corpus.hpp"
#include "qalab/errors.hpp"

using namespace qalab;

namespace {

SampledFunction fn(RealMap g) { return SampledFunction{std::move(g), "test", Smoothness::Analytic}; }

ChebApproximant unit_cheb(int k) {
  std::vector<double> c(static_cast<std::size_t>(k + 1), 0.0);
  c.back() = 1.0;
  return ChebApproximant(IntervalDomain(-1.0, 1.0), c);
}

// Power-basis polynomial evaluated by Horner in the mapped variable.
double horner(const std::vector<double>& m, double t) {
  double v = 0.0;
  for (auto it = m.rbegin(); it != m.rend(); ++it) v = v * t + *it;
  return v;
}

}  // namespace

TEST(IntervalDomain, RejectsEmptyOrReversed) {
  EXPECT_THROW(IntervalDomain(1.0, 1.0), ArgumentError);
  EXPECT_THROW(IntervalDomain(2.0, -1.0), ArgumentError);
  EXPECT_THROW(IntervalDomain(0.0, std::numeric_limits<double>::infinity()), ArgumentError);
}

TEST(IntervalDomain, AffineMapRoundTrips) {
  oracle::Gen g(11);
  for (int i = 0; i < 500; ++i) {
    const double a = g.uniform(-100.0, 100.0);
    const double b = a + g.uniform(1e-3, 50.0);
    IntervalDomain d(a, b);
    const double x = g.uniform(a, b);
    EXPECT_NEAR(d.from_unit(d.to_unit(x)), x, 8 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(x)));
    EXPECT_DOUBLE_EQ(d.to_unit(a), -1.0);
    EXPECT_DOUBLE_EQ(d.to_unit(b), 1.0);
  }
}

TEST(SampledFunction, WrapsEvaluatorFailures) {
  SampledFunction bad = fn([](double x) { return 1.0 / x; });
  try {
    (void)bad(0.0);
    FAIL() << "expected InputFunctionError";
  } catch (const InputFunctionError& e) {
    EXPECT_EQ(e.x(), 0.0);
  }
  SampledFunction throwing = fn([](double) -> double { throw std::runtime_error("boom"); });
  EXPECT_THROW((void)throwing(0.5), InputFunctionError);
}

TEST(ChebInterpolate, SquareHasHalfHalfCoefficients) {
  auto p = cheb_interpolate(fn([](double x) { return x * x; }), IntervalDomain(-1, 1), 2);
  ASSERT_EQ(p.coeffs().size(), 3u);
  EXPECT_NEAR(p.coeffs()[0], 0.5, 1e-15);
  EXPECT_NEAR(p.coeffs()[1], 0.0, 1e-15);
  EXPECT_NEAR(p.coeffs()[2], 0.5, 1e-15);
}

TEST(ChebInterpolate, ConstantAtDegreeZero) {
  auto p = cheb_interpolate(fn([](double) { return 3.25; }), IntervalDomain(2, 7), 0);
  ASSERT_EQ(p.coeffs().size(), 1u);
  EXPECT_DOUBLE_EQ(p.coeffs()[0], 3.25);
  EXPECT_EQ(p.degree(), 0);
}

TEST(ChebInterpolate, ExponentialOnDenseGrid) {
  IntervalDomain d(-1, 1);
  auto p = cheb_interpolate(fn([](double x) { return std::exp(x); }), d, 10);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double x = -1.0 + 2.0 * i / 999.0;
    worst = std::max(worst, std::abs(p(x) - std::exp(x)));
  }
  EXPECT_LT(worst, 1e-9);
}

TEST(ChebInterpolate, RejectsNegativeDegree) {
  EXPECT_THROW(cheb_interpolate(fn([](double x) { return x; }), IntervalDomain(-1, 1), -1), ArgumentError);
}

TEST(ChebInterpolate, PropagatesEvaluatorFailure) {
  EXPECT_THROW(cheb_interpolate(fn([](double x) { return std::log(x); }), IntervalDomain(-1, 1), 4),
               InputFunctionError);
}

TEST(ChebApproximant, EndpointsMatchSignedSum) {
  oracle::Gen g(5);
  for (int trial = 0; trial < 50; ++trial) {
    const auto c = g.vector(static_cast<std::size_t>(g.integer(1, 20)), -1.0, 1.0);
    ChebApproximant p(IntervalDomain(-3.0, 0.5), c);
    double plus = 0.0;
    double minus = 0.0;
    for (std::size_t k = 0; k < c.size(); ++k) {
      plus += c[k];
      minus += (k % 2 == 0 ? 1.0 : -1.0) * c[k];
    }
    EXPECT_NEAR(p(0.5), plus, 1e-13);
    EXPECT_NEAR(p(-3.0), minus, 1e-13);
  }
}

TEST(EvalApproximant, T3AtHalf) {
  EXPECT_NEAR(eval_approximant(unit_cheb(3), complex(0.5, 0.0)).real(), -1.0, 1e-15);
}

TEST(EvalApproximant, ConstantEverywhere) {
  auto c = ChebApproximant::constant(IntervalDomain(-1, 1), 2.5);
  for (complex z : {complex(0, 0), complex(3, -4), complex(-10, 0.1)}) {
    EXPECT_EQ(eval_approximant(c, z), complex(2.5, 0.0));
  }
}

TEST(EvalApproximant, ExponentialInterpolantAtPointThree) {
  auto p = cheb_interpolate(fn([](double x) { return std::exp(x); }), IntervalDomain(-1, 1), 10);
  const complex v = eval_approximant(p, complex(0.3, 0.0));
  EXPECT_NEAR(v.real(), std::exp(0.3), 1e-9);
  EXPECT_EQ(v.imag(), 0.0);
}

TEST(EvalApproximant, OffSegmentMatchesClosedForm) {
  // T_n(z) = ((z + sqrt(z^2-1))^n + (z - sqrt(z^2-1))^n) / 2
  const complex z(0.7, 1.3);
  const complex s = std::sqrt(z * z - 1.0);
  for (int n = 0; n <= 12; ++n) {
    const complex expect = 0.5 * (std::pow(z + s, n) + std::pow(z - s, n));
    EXPECT_LT(std::abs(eval_approximant(unit_cheb(n), z) - expect), 1e-10 * std::max(1.0, std::abs(expect)));
  }
}

TEST(EvalApproximant, RationalNearPoleThrows) {
  IntervalDomain d(-1, 1);
  ChebApproximant p = ChebApproximant::constant(d, 1.0);
  ChebApproximant q(d, {0.0, 1.0});  // q(t) = t, zero at 0
  RationalApproximant r(1, p, q, 1.0);
  try {
    (void)eval_approximant(r, complex(0.0, 0.0));
    FAIL() << "expected PoleProximityError";
  } catch (const PoleProximityError& e) {
    EXPECT_EQ(e.z(), complex(0.0, 0.0));
  }
  EXPECT_NEAR(eval_approximant(r, complex(0.0, 2.0)).imag(), -0.5, 1e-15);
}

TEST(SupNorm, AbsoluteValueAttainsOneAtEnds) {
  EXPECT_NEAR(sup_norm_estimate([](double x) { return std::abs(x); }, IntervalDomain(-1, 1), 101), 1.0, 1e-15);
}

TEST(SupNorm, ZeroFunction) {
  EXPECT_EQ(sup_norm_estimate([](double) { return 0.0; }, IntervalDomain(3, 4), 10), 0.0);
}

TEST(SupNorm, ChebyshevT5IsOne) {
  auto t5 = unit_cheb(5);
  EXPECT_NEAR(sup_norm_estimate([&](double x) { return t5(x); }, IntervalDomain(-1, 1), 64), 1.0, 1e-12);
}

TEST(SupNorm, PolishFindsInteriorPeakBetweenNodes) {
  // peak at 0.1234 sits between the nodes of a coarse grid
  const double v = sup_norm_estimate([](double x) { return 1.0 - (x - 0.1234) * (x - 0.1234); },
                                     IntervalDomain(-1, 1), 8);
  EXPECT_NEAR(v, 1.0, 1e-12);
}

TEST(SupNorm, RejectsTooFewPoints) {
  EXPECT_THROW(sup_norm_estimate([](double x) { return x; }, IntervalDomain(-1, 1), 1), ArgumentError);
}

// Property: interpolation of a degree <= n polynomial at degree n reproduces it.
TEST(ApproxCoreProperty, InterpolationIsExactOnPolynomials) {
  oracle::Gen g(2024);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = g.integer(0, 25);
    IntervalDomain d(g.uniform(-5, 0), g.uniform(0.5, 5));
    ChebApproximant P(d, g.vector(static_cast<std::size_t>(g.integer(1, n + 1)), -1.0, 1.0));
    const double norm = sup_norm_estimate([&](double x) { return P(x); }, d, default_sup_grid(P.degree()));
    auto I = cheb_interpolate(fn([&](double x) { return P(x); }), d, n);
    const double diff = sup_norm_estimate([&](double x) { return I(x) - P(x); }, d, default_sup_grid(n));
    EXPECT_LT(diff, 1e-10 * norm) << "n=" << n;
  }
}

// Property: Chebyshev evaluation agrees with power-basis evaluation after conversion.
TEST(ApproxCoreProperty, EvaluationMatchesPowerBasis) {
  oracle::Gen g(77);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = g.integer(0, 30);
    IntervalDomain d(-1.0, 1.0);
    // power-basis coefficients decaying like 2^-k keep the conversion well conditioned
    std::vector<double> m(static_cast<std::size_t>(n + 1));
    for (int k = 0; k <= n; ++k) m[static_cast<std::size_t>(k)] = g.uniform(-1, 1) * std::ldexp(1.0, -k);
    auto p = ChebApproximant::from_monomial(d, m);
    ASSERT_EQ(p.degree(), n);
    for (int i = 0; i < 20; ++i) {
      const double x = g.uniform(-1, 1);
      const double ref = horner(m, x);
      EXPECT_NEAR(eval_approximant(p, complex(x, 0.0)).real(), ref, 1e-10 * std::max(1.0, std::abs(ref)));
    }
    const auto back = p.to_monomial();
    for (std::size_t k = 0; k < m.size(); ++k) EXPECT_NEAR(back[k], m[k], 1e-10);
  }
}

// Property: doubling the grid never lowers the estimate.
TEST(ApproxCoreProperty, SupNormMonotoneUnderGridDoubling) {
  IntervalDomain d(-1, 1);
  for (const auto& e : corpus()) {
    const SampledFunction f = make_named(e.name);
    double prev = 0.0;
    for (std::size_t m = 8; m <= 1024; m *= 2) {
      const double v = sup_norm_estimate([&](double x) { return f(x); }, d, m);
      EXPECT_GE(v, prev - 1e-12) << e.name << " m=" << m;
      prev = v;
    }
  }
}
