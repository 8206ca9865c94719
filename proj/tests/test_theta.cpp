#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "plp/enclosures.hpp"
#include "plp/theta.hpp"

using namespace plp;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST(Theta, SymmetryAndPeriodicity) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> uc(0.05, 5.0), ux(-2.0, 2.0);
  for (int i = 0; i < 50; ++i) {
    const double c = uc(rng), x = ux(rng);
    const double v = theta(c, x).value;
    EXPECT_NEAR(v, theta(c, -x).value, 1e-13 * v);
    EXPECT_NEAR(v, theta(c, x + 1).value, 1e-12 * v);
  }
}

TEST(Theta, DirectSummationAtOne) {
  double s = 1.0;
  for (int k = 1; k <= 50; ++k) s += 2.0 * std::exp(-kPi * k * k);
  auto r = theta(1.0, 0.0);
  EXPECT_NEAR(r.value, s, 1e-14);
  EXPECT_LE(r.tail, kDefaultTol);
}

TEST(Theta, PoissonIdentity) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> ul(std::log(0.05), std::log(100.0)), ux(-3.0, 3.0);
  for (int i = 0; i < 200; ++i) {
    const double c = std::exp(ul(rng)), x = ux(rng);
    auto a = theta(c, x), b = theta_dual(c, x);
    EXPECT_LE(std::abs(a.value - b.value), a.tail + b.tail + 1e-13) << c << " " << x;
  }
}

TEST(Theta, DualZeroTermDominatesForSmallC) {
  auto r = theta_dual(0.01, 0.0);
  EXPECT_NEAR(r.value, 1.0 / std::sqrt(0.01), 1e-12);
  for (double c : {1.0, 50.0}) EXPECT_GE(theta_dual(c, 0.0).value, 1.0 / std::sqrt(c));
}

TEST(Theta, GaussianPeriodization) {
  // F_{a,Z}(x) = sqrt(pi/a) theta(pi/a; x), oracle: direct sum of Gaussians.
  for (double a : {0.5, 2.0, 7.0}) {
    for (double x : {0.0, 0.1, 0.37}) {
      double s = 0.0;
      for (int k = -60; k <= 60; ++k) s += std::exp(-a * (x + k) * (x + k));
      EXPECT_NEAR(std::sqrt(kPi / a) * theta(kPi / a, x).value, s, 1e-13 * s);
    }
  }
}

TEST(Theta, VGMatchesSeriesAndFiniteDifference) {
  for (double c : {0.02, 0.3, 0.99, 1.0, 4.0}) {
    for (double x : {0.0, 0.13, 0.5, 0.77}) {
      auto vg = theta_vg(c, x);
      EXPECT_NEAR(vg.value, theta(c, x).value, 1e-13 * std::max(1.0, vg.value));
      const double h = 1e-5;
      const double fd = (theta(c, x + h).value - theta(c, x - h).value) / (2 * h);
      EXPECT_NEAR(vg.dx, fd, 1e-6 * (1 + std::abs(fd)));
    }
  }
}

TEST(ThetaTilde, OrderZeroIsTheta) {
  for (double c : {0.05, 0.3, 1.0, 3.0}) {
    ThetaTilde tt(c);
    for (double x : {0.0, 0.1, 0.25, 0.4, 0.5}) {
      const double v = theta(c, x).value;
      EXPECT_NEAR(tt(std::cos(2 * kPi * x)), v, 1e-13 * std::max(1.0, v));
    }
  }
}

TEST(ThetaTilde, FirstDerivativeAtOneMatchesFiniteDifference) {
  for (double c : {0.3, 1.0, 3.0}) {
    ThetaTilde tt(c);
    const double h = 1e-4;
    const double fd = (3 * tt(1.0) - 4 * tt(1 - h) + tt(1 - 2 * h)) / (2 * h);
    EXPECT_NEAR(tt.deriv(1.0, 1).value, fd, 1e-6 * std::abs(fd));
  }
}

TEST(ThetaTilde, LimitSeriesAgreesWithProductForm) {
  for (double c : {0.3, 1.0, 3.0}) {
    ThetaTilde tt(c);
    for (int sign : {1, -1}) {
      for (int n = 0; n <= 4; ++n) {
        auto lim = tilde_theta_limit(c, sign, n);
        auto prod = tt.deriv(sign, n);
        EXPECT_NEAR(lim.value, prod.value, lim.tail + prod.tail + 1e-11 * std::abs(prod.value))
            << c << " " << sign << " " << n;
      }
    }
  }
}

TEST(ThetaTilde, AbsolutelyMonotone) {
  for (double c : {0.3, 1.0, 3.0}) {
    ThetaTilde tt(c);
    for (int i = 0; i < 50; ++i) {
      const double t = -1.0 + 2.0 * i / 49.0;
      for (int n = 0; n <= 4; ++n) EXPECT_GT(tt(t, n), 0.0) << c << " " << t << " " << n;
    }
  }
}

TEST(ThetaTilde, TailsMonotoneInFactors) {
  for (double c : {0.05, 0.5}) {
    double prev = INFINITY;
    for (int nf : {2, 4, 8, 16, 32}) {
      ThetaTilde tt(c, nf);
      ASSERT_GE(tt.factors(), nf);
      const double tail = tt.deriv(0.3, 2, INFINITY).tail;
      EXPECT_LE(tail, prev);
      prev = tail;
    }
  }
}

TEST(ThetaTilde, HigherOrderMatchesFiniteDifferenceOfLowerOrder) {
  ThetaTilde tt(0.4);
  for (double t : {-0.9, -0.2, 0.5}) {
    for (int n = 1; n <= 4; ++n) {
      const double h = 1e-5;
      const double fd = (tt(t + h, n - 1) - tt(t - h, n - 1)) / (2 * h);
      EXPECT_NEAR(tt(t, n), fd, 1e-6 * std::abs(fd));
    }
  }
}

TEST(TripleProduct, MatchesSeries) {
  for (double c : {0.5, 1.0, 3.0}) {
    for (int i = 0; i < 100; ++i) {
      const double t = -1.0 + 2.0 * i / 99.0;
      const double x = std::acos(t) / (2 * kPi);
      EXPECT_NEAR(triple_product(c, t, 60), theta(c, x).value, 1e-12);
    }
  }
}

TEST(TripleProduct, PositiveAtMinusOne) {
  for (int n : {1, 5, 20}) {
    double expect = 1.0;
    for (int r = 1; r <= n; ++r) {
      const double q = std::exp(-kPi * 4.0 * (2 * r - 1));
      expect *= (1 - std::exp(-2 * kPi * r * 4.0)) * (1 - q) * (1 - q);
    }
    EXPECT_NEAR(triple_product(4.0, -1.0, n), expect, 1e-15);
    EXPECT_GT(triple_product(4.0, -1.0, n), 0.0);
  }
}

TEST(TripleProduct, LogDerivativeCompletelyMonotone) {
  const double c = 0.4, h = 1e-3;
  auto ld = [&](double t) {
    return (std::log(triple_product(c, t + 1e-6, 80)) - std::log(triple_product(c, t - 1e-6, 80))) / 2e-6;
  };
  for (int i = 1; i < 40; ++i) {
    const double t = -0.99 + 1.97 * i / 40.0;
    EXPECT_GT(ld(t), 0.0);
    EXPECT_LT(ld(t + h) - ld(t), 0.0);
    EXPECT_GT(ld(t + 2 * h) - 2 * ld(t + h) + ld(t), -1e-9);
  }
}

TEST(Constants, EpsilonChecks) { EXPECT_NO_THROW(verify_epsilon_constants()); }

TEST(F1F2, LargeAValuesAtOne) {
  for (double a : {9.6, 15.0, 40.0}) {
    FPair fp(a, Convention::Rescaled);
    for (int w : {1, 2}) {
      const double v = fp.f(w, 1.0);
      EXPECT_GT(v, 1.0 - 1e-13);
      EXPECT_LT(v, 1.0 + kEps);
    }
  }
}

TEST(F1F2, RegimeBoundaryFactor) {
  const double a = kPi * kPi;
  FPair small(a, Convention::Small), big(a, Convention::Rescaled);
  EXPECT_EQ(ThetaRegime::of(a).regime, Regime::Small);
  EXPECT_EQ(ThetaRegime::of(std::nextafter(a, 100.0)).regime, Regime::Large);
  for (double t : {-1.0, 0.0, 0.7}) {
    EXPECT_NEAR(big.f1(t), std::sqrt(kPi / a) * small.f1(t), 1e-14);
    EXPECT_NEAR(big.f2(t), std::sqrt(kPi / (3 * a)) * small.f2(t), 1e-14);
    EXPECT_NEAR(big.scale() * big.FL(t, 0.2), small.scale() * small.FL(t, 0.2), 1e-14);
  }
}

TEST(Enclosures, BracketSeriesValues) {
  std::mt19937_64 rng(9);
  for (const auto& spec : enclosure_registry()) {
    const double amax = std::isfinite(spec.a_max) ? spec.a_max : 80.0;
    std::uniform_real_distribution<double> ua(spec.a_min > 0 ? spec.a_min : 0.2, amax);
    std::uniform_real_distribution<double> ut(spec.t_lo, spec.t_hi);
    for (int i = 0; i < 20; ++i) {
      const double a = i == 0 && spec.a_min > 0 ? spec.a_min : ua(rng);
      const double t = spec.points.empty() ? ut(rng) : spec.points[i % spec.points.size()];
      FPair fp(a, spec.convention);
      const double v = fp.f(spec.which, t, spec.order);
      Interval iv = enclosure(spec.id, a, t);
      const double slack = 1e-14 * std::abs(v);
      EXPECT_LE(iv.lo, v + slack) << spec.name << " a=" << a << " t=" << t;
      EXPECT_GE(iv.hi, v - slack) << spec.name << " a=" << a << " t=" << t;
      EXPECT_LE(iv.lo, iv.hi);
    }
  }
}

TEST(Enclosures, BasicValuesExample) {
  const double a = 12.0, x = 0.2;
  Interval iv = enclosure(EnclosureId::LargeF1Value, a, std::cos(2 * kPi * x));
  EXPECT_NEAR(iv.lo, std::exp(-a * x * x) + std::exp(-a * (x - 1) * (x - 1)), 1e-12);
  EXPECT_NEAR(iv.hi, (1 + kEps) * std::exp(-a * x * x) * (1 + std::exp(-a * (1 - 2 * x))), 1e-12);
}

TEST(Enclosures, OutOfHypothesis) {
  try {
    enclosure(EnclosureId::LargeF1AtM1, 5.0, -1.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::OutOfHypothesis);
  }
  EXPECT_THROW(enclosure(EnclosureId::LargeF2Value, 20.0, -0.8), Error);
  EXPECT_EQ(enclosure_id("large_f1_atm1"), EnclosureId::LargeF1AtM1);
}

TEST(ThetaDeriv, SeriesAgreeWithinTails) {
  for (double c : {0.2, 0.7, 1.5, 4.0})
    for (double x : {0.0, 0.13, 0.37, 0.5})
      for (int k = 0; k <= 4; ++k) {
        const CertifiedValue p = theta_deriv(c, x, k, false);
        const CertifiedValue d = theta_deriv(c, x, k, true);
        EXPECT_NEAR(p.value, d.value, p.tail + d.tail + 1e-11 * std::max(1.0, std::abs(p.value))) << c << " " << x << " " << k;
      }
}

TEST(ThetaDeriv, FirstOrderMatchesVG) {
  for (double c : {0.3, 2.0})
    for (double x : {0.1, 0.4}) EXPECT_NEAR(theta_deriv(c, x, 1, c < 1).value, theta_vg(c, x).dx, 1e-12);
  EXPECT_THROW(theta_deriv(1.0, 0.1, 13, false), Error);
}
