#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "qalab/classifier.hpp"
#include "qalab/corpus.hpp"
#include "qalab/errors.hpp"

using namespace qalab;

namespace {

const IntervalDomain kUnit(-1.0, 1.0);

DecayProfile stub_profile(std::function<double(int)> e, std::function<double(int)> rho, int n_max) {
  DecaySolver s;
  s.polynomial = [e](int n) { return ErrorSample{e(n), SolverStatus::Converged}; };
  s.rational = [rho](int n) { return ErrorSample{rho(n), SolverStatus::Converged}; };
  std::vector<int> ns;
  for (int n = 1; n <= n_max; ++n) ns.push_back(n);
  return decay_profile(ns, s, 1e-6);
}

std::vector<int> range(int lo, int hi) {
  std::vector<int> v;
  for (int n = lo; n <= hi; ++n) v.push_back(n);
  return v;
}

void expect_chain(const ClassVerdict& v) {
  if (v.analytic_test) {
    EXPECT_TRUE(v.bernstein_test);
  }
  if (v.bernstein_test) {
    EXPECT_TRUE(v.gonchar_test);
  }
  switch (v.verdict) {
    case Verdict::AnalyticRate:
      EXPECT_LT(v.limsup_e, v.threshold);
      break;
    case Verdict::BernsteinQA:
      EXPECT_LT(v.alpha_e, v.threshold);
      break;
    case Verdict::GoncharQA:
      EXPECT_LT(v.alpha_rho, v.threshold);
      break;
    case Verdict::NotDetected:
      EXPECT_FALSE(v.gonchar_test);
      break;
  }
}

int rank(Verdict v) {
  switch (v) {
    case Verdict::AnalyticRate:
      return 3;
    case Verdict::BernsteinQA:
      return 2;
    case Verdict::GoncharQA:
      return 1;
    case Verdict::NotDetected:
      return 0;
  }
  return -1;
}

}  // namespace

TEST(Classify, RungeIsAnalyticRate) {
  auto p = decay_profile(make_named("runge", {{"c", 2.0}}), kUnit, range(2, 20), 1e-6);
  auto v = classify(p, 0.9);
  EXPECT_EQ(v.verdict, Verdict::AnalyticRate);
  // Chebyshev coefficient decay of 1/(x-2)
  EXPECT_NEAR(v.limsup_e, 2.0 - std::sqrt(3.0), 0.1 * (2.0 - std::sqrt(3.0)));
  expect_chain(v);
}

TEST(Classify, AbsoluteValueRootsAtSmallBudget) {
  // polynomial best errors of |x| from the linear-programming oracle
  const auto x = oracle::cheb_grid(2001);
  std::vector<double> fx;
  for (double t : x) fx.push_back(std::abs(t));
  const double e12 = oracle::poly_minimax(x, fx, 12).error;
  const double e11 = oracle::poly_minimax(x, fx, 11).error;

  auto p = decay_profile(make_named("absval"), kUnit, range(1, 12), 1e-6);
  auto v = classify(p, 0.9);
  // e_n ~ 0.28/n keeps the n-th roots well below 0.9 at this budget
  EXPECT_NEAR(v.limsup_e, std::pow(e12, 1.0 / 12.0), 1e-4);
  EXPECT_NEAR(v.alpha_e, std::min(std::pow(e12, 1.0 / 12.0), std::pow(e11, 1.0 / 11.0)), 0.1);
  EXPECT_LT(v.alpha_rho, v.alpha_e);
  EXPECT_EQ(v.verdict, Verdict::AnalyticRate);
  expect_chain(v);
}

TEST(Classify, StubSeparatesRationalFromPolynomialRates) {
  auto p = stub_profile([](int) { return 1.0; }, [](int n) { return std::pow(2.0, -n); }, 12);
  auto v = classify(p, kDefaultThreshold);
  EXPECT_EQ(v.verdict, Verdict::GoncharQA);
  EXPECT_EQ(v.alpha_e, 1.0);
  EXPECT_NEAR(v.alpha_rho, 0.5, 1e-14);
  EXPECT_FALSE(v.bernstein_test);
  EXPECT_TRUE(v.gonchar_test);
}

TEST(Classify, BernsteinWithoutAnalyticRate) {
  // 2^-n on even n with plateaus in between: trailing roots 0.63 (n=3) and 0.5 (n=4)
  auto e = [](int n) { return n % 2 == 0 ? std::pow(2.0, -n) : std::pow(2.0, -(n - 1)); };
  auto p = stub_profile(e, e, 4);
  auto v = classify(p, 0.6);
  EXPECT_EQ(v.verdict, Verdict::BernsteinQA);
  expect_chain(v);
}

TEST(Classify, EvidenceCarriesBothSeries) {
  auto p = stub_profile([](int n) { return std::pow(0.5, n); }, [](int n) { return std::pow(0.25, n); }, 5);
  auto v = classify(p, 0.9);
  ASSERT_EQ(v.evidence.size(), 10u);
  for (const auto& ev : v.evidence) {
    const double rate = ev.series == "e" ? 0.5 : 0.25;
    EXPECT_NEAR(ev.root, rate, 1e-14);
    EXPECT_NEAR(ev.value, std::pow(rate, ev.n), 1e-15);
  }
}

TEST(Classify, TooFewEntries) {
  auto p = stub_profile([](int n) { return std::pow(0.5, n); }, [](int n) { return std::pow(0.5, n); }, 3);
  EXPECT_THROW(classify(p), InsufficientEvidenceError);

  DecaySolver failing;
  failing.polynomial = [](int n) {
    return n % 2 == 0 ? ErrorSample{std::pow(0.5, n), SolverStatus::Converged} : ErrorSample{0.0, SolverStatus::Failed};
  };
  failing.rational = failing.polynomial;
  // only the even degrees 2, 4, 6 succeed
  auto q = decay_profile(range(1, 7), failing, 1e-6);
  EXPECT_THROW(classify(q), InsufficientEvidenceError);
}

TEST(Classify, ThresholdOutOfRange) {
  auto p = stub_profile([](int n) { return std::pow(0.5, n); }, [](int n) { return std::pow(0.5, n); }, 6);
  EXPECT_THROW(classify(p, 0.0), ArgumentError);
  EXPECT_THROW(classify(p, 1.0), ArgumentError);
  EXPECT_THROW(classify(p, -0.3), ArgumentError);
}

// Random profiles: the chain holds, raising the threshold never loses membership,
// and equal inputs give equal verdicts.
TEST(ClassifyProperty, ChainThresholdMonotonicityDeterminism) {
  oracle::Gen g(404);
  for (int trial = 0; trial < 300; ++trial) {
    const int n_max = g.integer(4, 20);
    std::vector<double> e(static_cast<std::size_t>(n_max + 1)), r(e.size());
    for (int n = 1; n <= n_max; ++n) {
      e[static_cast<std::size_t>(n)] = std::pow(g.uniform(0.05, 1.0), n);
      r[static_cast<std::size_t>(n)] = e[static_cast<std::size_t>(n)] * g.uniform(0.0, 1.0);
    }
    auto p = stub_profile([&](int n) { return e[static_cast<std::size_t>(n)]; },
                          [&](int n) { return r[static_cast<std::size_t>(n)]; }, n_max);
    int prev_rank = -1;
    for (double t = 0.05; t < 1.0; t += 0.05) {
      auto v = classify(p, t);
      expect_chain(v);
      EXPECT_GE(rank(v.verdict), prev_rank) << "threshold " << t;
      prev_rank = rank(v.verdict);
      auto again = classify(p, t);
      EXPECT_EQ(again.verdict, v.verdict);
      EXPECT_EQ(again.alpha_e, v.alpha_e);
      EXPECT_EQ(again.alpha_rho, v.alpha_rho);
    }
  }
}

TEST(ClassifyProperty, ChainOnCorpus) {
  for (const auto& entry : corpus()) {
    auto p = decay_profile(make_named(entry.name), kUnit, range(1, 10), 1e-6);
    for (double t : {0.3, 0.6, 0.9, kDefaultThreshold}) expect_chain(classify(p, t));
  }
}

TEST(Verdict, Names) {
  EXPECT_EQ(to_string(Verdict::AnalyticRate), "AnalyticRate");
  EXPECT_EQ(to_string(Verdict::BernsteinQA), "BernsteinQA");
  EXPECT_EQ(to_string(Verdict::GoncharQA), "GoncharQA");
  EXPECT_EQ(to_string(Verdict::NotDetected), "NotDetected");
}
