#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "plp/energy.hpp"
#include "plp/interpolants.hpp"

using namespace plp;

namespace {

constexpr double kPi = std::numbers::pi;
const double kS3 = std::sqrt(3.0);
const double kAGrid[] = {0.3, 1, 3, 9.6, 15, 21, 30, 60};

double falling(double lambda, int n) { return std::pow(lambda, n); }

// sum_i w_i e^{lambda_i t}: absolutely monotone with exact derivatives.
struct ExpSum {
  std::vector<double> w, lambda;
  double operator()(double t, int n) const {
    double s = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) s += w[i] * falling(lambda[i], n) * std::exp(lambda[i] * t);
    return s;
  }
};

// Direct sum of e^{-a (x+n)^2} and its t-derivative for the Z case.
double z_direct(double a, double x) {
  double s = 0.0;
  for (int n = -60; n <= 60; ++n) s += std::exp(-a * (x + n) * (x + n));
  return s;
}

double tri_t2_min(double t1) {
  // Image of the A2 fundamental triangle: x2 = x1 / sqrt3 edge.
  const double x1 = std::acos(t1) / (2 * kPi);
  return std::cos(2 * kPi * x1 / 3.0);
}

}  // namespace

TEST(DividedDifference, Square) {
  auto f = [](double t, int n) { return n == 0 ? t * t : (n == 1 ? 2 * t : (n == 2 ? 2.0 : 0.0)); };
  EXPECT_DOUBLE_EQ(divided_difference(f, {0.0, 1.0}), 1.0);
  EXPECT_DOUBLE_EQ(divided_difference(f, {0.3, 0.3, 0.3}), 1.0);
}

TEST(DividedDifference, ConfluentIsScaledDerivative) {
  ExpSum f{{1.0, 0.5}, {2.0, 0.7}};
  EXPECT_NEAR(divided_difference(f, {0.4, 0.4, 0.4}), f(0.4, 2) / 2.0, 1e-13);
  EXPECT_NEAR(divided_difference(f, {-0.2, -0.2, -0.2, -0.2}), f(-0.2, 3) / 6.0, 1e-13);
}

TEST(DividedDifference, MissingDerivativeThrows) {
  ExpSum f{{1.0}, {1.0}};
  try {
    divided_difference(f, {0.1, 0.1, 0.1}, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InsufficientDerivatives);
  }
}

TEST(DividedDifference, ThreeNodeF2Identity) {
  for (double a : {0.5, 3.0, 12.0, 40.0}) {
    FPair fp(a);
    auto f2 = [&](double t, int n) { return fp.f2(t, n); };
    const double slope = (fp.f2(0.5) - fp.f2(-1.0)) / 1.5;
    const double want = (fp.f2(0.5, 1) - slope) / 1.5;
    EXPECT_NEAR(divided_difference(f2, {-1.0, 0.5, 0.5}), want, 1e-12 * std::abs(want));
    EXPECT_GT(want, 0.0);
  }
}

TEST(Hermite, ReproducesPolynomials) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int trial = 0; trial < 30; ++trial) {
    const int m = 1 + trial % 6;
    Poly1 p;
    for (int k = 0; k <= m; ++k) p.c.push_back(u(rng));
    const Poly1 dp = p.derivative(), ddp = dp.derivative();
    auto f = [&](double t, int n) { return n == 0 ? p(t) : (n == 1 ? dp(t) : ddp(t)); };
    std::vector<double> nodes;
    for (int k = 0; k <= m; ++k) nodes.push_back(k % 2 == 0 ? -0.9 + 0.35 * k + 0.05 * u(rng) : nodes.back());
    HermiteInterpolant H(f, nodes, 2);
    for (int s = 0; s < 20; ++s) {
      const double t = u(rng);
      EXPECT_NEAR(H(t), p(t), 1e-9);
    }
    const Poly1 mono = H.monomial();
    for (int k = 0; k <= m; ++k) EXPECT_NEAR(mono.c[k], p.c[k], 1e-7);
  }
}

TEST(Hermite, ErrorSignFollowsNodeProduct) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> lam(0.1, 3.0), w(0.1, 2.0), u(-1, 1);
  std::uniform_int_distribution<int> pick(0, 8), count(1, 5);
  int compared = 0;
  for (int trial = 0; trial < 20; ++trial) {
    ExpSum f;
    for (int i = 0; i < 3; ++i) {
      f.w.push_back(w(rng));
      f.lambda.push_back(lam(rng));
    }
    std::vector<double> nodes;
    const int n = count(rng) + 1;
    for (int i = 0; i < n; ++i) nodes.push_back(-1.0 + 0.25 * pick(rng));
    HermiteInterpolant H(f, nodes, 8);
    for (int s = 0; s < 100; ++s) {
      const double t = u(rng);
      const double prod = H.node_product(t);
      if (std::abs(prod) < 1e-6) continue;
      const double err = f(t, 0) - H(t);
      EXPECT_EQ(err > 0, prod > 0) << "trial " << trial << " t=" << t;
      ++compared;
    }
  }
  EXPECT_GT(compared, 1500);
}

TEST(Hermite, MatchesDerivativesAtRepeatedNodes) {
  ExpSum f{{1.0, 2.0}, {1.5, 0.4}};
  HermiteInterpolant H(f, {-1.0, 0.5, 0.5, 0.9, 0.9, 0.9}, 8);
  const Poly1 p = H.monomial(), dp = p.derivative(), ddp = dp.derivative();
  EXPECT_NEAR(p(-1.0), f(-1.0, 0), 1e-12);
  EXPECT_NEAR(dp(0.5), f(0.5, 1), 1e-10);
  EXPECT_NEAR(ddp(0.9), f(0.9, 2), 1e-8);
}

TEST(Hermite, SignOnThreeNodeSet) {
  ExpSum f{{1.0}, {2.0}};
  HermiteInterpolant H(f, {-1.0, 0.5, 0.5}, 2);
  for (int i = 0; i <= 200; ++i) {
    const double t = -1.0 + 2.0 * i / 200;
    // (t+1)(t-1/2)^2 >= 0 on all of [-1,1].
    const double e = f(t, 0) - H(t);
    if (t > -1.0 + 1e-9 && std::abs(t - 0.5) > 1e-9) EXPECT_GT(e, 0.0);
  }
}

TEST(Chebyshev, RoundTrip) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1, 1);
  Poly1 p;
  for (int k = 0; k < 8; ++k) p.c.push_back(u(rng));
  const auto tc = to_chebyshev_t(p), uc = to_chebyshev_u(p);
  for (int s = 0; s < 20; ++s) {
    const double t = u(rng);
    double vt = 0, vu = 0;
    for (int k = 0; k < 8; ++k) {
      vt += tc[k] * std::cos(k * std::acos(t));
      vu += uc[k] * std::sin((k + 1) * std::acos(t)) / std::sin(std::acos(t));
    }
    EXPECT_NEAR(vt, p(t), 1e-12);
    EXPECT_NEAR(vu, p(t), 1e-12);
  }
}

TEST(GZ, SingleNodePairIsTangentLine) {
  const double a = 2.0;
  auto z = build_gZ(1, a);
  auto f = tilde_F_Z(a);
  EXPECT_EQ(z.H.monomial().degree(), 1);
  EXPECT_NEAR(z.H(0.3), f(-1.0, 0) + f(-1.0, 1) * 1.3, 1e-13);
  EXPECT_TRUE(z.psd);
}

TEST(GZ, DominatedByThetaAndTouchesAtNodes) {
  auto z = build_gZ(3, 2.0);
  auto f = tilde_F_Z(2.0);
  double worst = 1.0;
  for (int i = 0; i < 1000; ++i) {
    const double t = -1.0 + 2.0 * i / 999;
    worst = std::min(worst, f(t, 0) - z.H(t));
  }
  EXPECT_GE(worst, -1e-12);
  for (double t : z.H.nodes()) EXPECT_NEAR(z.H(t), f(t, 0), 1e-10);
  EXPECT_LE(z.H.monomial().degree(), 5);
  EXPECT_TRUE(z.psd);
}

TEST(GZ, ThetaIsTheGaussianPeriodization) {
  for (double a : {1.0, 4.0}) {
    auto f = tilde_F_Z(a);
    for (double x : {0.0, 0.1, 0.25, 0.4, 0.5}) EXPECT_NEAR(f(std::cos(2 * kPi * x), 0), z_direct(a, x), 1e-13);
  }
}

TEST(GZ, LPBoundIsSharpForEquallySpacedPoints) {
  for (int m = 2; m <= 4; ++m) {
    for (double a : {1.0, 4.0}) {
      auto z = build_gZ(m, a);
      EXPECT_TRUE(z.psd);
      double e = 0.0;
      const int n = 2 * m;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          if (i != j) e += z_direct(a, static_cast<double>(i - j) / n);
      EXPECT_NEAR(z.lp_bound(), e, 1e-8 * e) << "m=" << m << " a=" << a;
      EXPECT_NEAR(equally_spaced_energy(n, a), e, 1e-12 * e);
    }
  }
}

TEST(G4, PositiveCoefficientAndCPSD) {
  for (double a : kAGrid) {
    auto g = build_g4(a);
    EXPECT_GT(g.b1, 0.0) << a;
    auto ex = g.expansion();
    EXPECT_TRUE(ex.cpsd());
    EXPECT_LT(ex.residual, 1e-15 * g.c0);
    // Least-squares oracle; its accuracy is relative to the largest coefficient.
    auto ls = expand_in_Pv(g.poly(), Family2D::A2, 6);
    EXPECT_NEAR(ls.constant(), ex.constant(), 1e-12 * g.c0);
    EXPECT_NEAR(ls.coeff({1, 1}), ex.coeff({1, 1}), 1e-12 * g.c0);
    for (const auto& t : ls.terms)
      if (!(t.v == DualVector{0, 0}) && !(t.v == DualVector{1, 1})) EXPECT_LT(std::abs(t.coeff), 1e-12 * g.c0);
    EXPECT_NEAR(g(-1.0, 1.0), tilde_F(-1.0, 1.0, a, Family2D::A2), 1e-15 * g.c0);
  }
}

TEST(G4, BranchByThreshold) {
  auto left = build_g4(21.0), right = build_g4(std::nextafter(21.0, 30.0));
  EXPECT_FALSE(left.large_branch);
  EXPECT_TRUE(right.large_branch);
  EXPECT_EQ(left.regime(), "a<=21");
  EXPECT_EQ(right.regime(), "a>21");
  EXPECT_NE(left.b1, right.b1);
  auto ex = build_g4(5.0, true);
  EXPECT_EQ(ex.regime(), "experimental, uncertified");
  FPair fp(5.0);
  EXPECT_NEAR(ex.b1, fp.scale() * fp.FA2(-1, 1, 1, 0), 1e-15);
}

TEST(G4, DominatedOnTriangleAtTen) {
  const double a = 10.0;
  auto g = build_g4(a);
  FPair fp(a);
  double worst = 1e9;
  double w1 = 0, w2 = 0;
  const int N = 300;
  for (int i = 0; i <= N; ++i) {
    const double x1 = 0.5 * i / N;
    for (int j = 0; j <= N; ++j) {
      const double x2 = x1 / kS3 * j / N;
      const double t1 = std::cos(2 * kPi * x1), t2 = std::cos(2 * kPi * x2 / kS3);
      const double m = fp.scale() * fp.FA2(t1, t2) - g(t1, t2);
      if (m < worst) {
        worst = m;
        w1 = t1;
        w2 = t2;
      }
    }
  }
  EXPECT_NEAR(worst, 0.0, 1e-11);
  EXPECT_NEAR(w1, -1.0, 1e-9);
  EXPECT_NEAR(w2, 1.0, 1e-9);
  EXPECT_GE(tri_t2_min(-1.0), 0.5 - 1e-12);
}

TEST(G4, LPBoundMatchesEnergy) {
  const auto w = omega_star(4);
  for (double a : kAGrid) {
    GaussianPotential pot(a, Lattice::a2());
    const double e = periodic_energy(w, pot);
    EXPECT_NEAR(build_g4(a).lp_bound(), e, 1e-8 * e) << a;
  }
}

TEST(G6, CoefficientsPositive) {
  for (double a : {0.5, 2.0, 9.6, 30.0}) {
    auto g = build_g6(a);
    EXPECT_GT(g.a00, 0);
    EXPECT_GT(g.a01, 0);
    EXPECT_GT(g.a02, 0);
    EXPECT_GT(g.a10, 0);
    EXPECT_DOUBLE_EQ(g.b00, g.a00 + g.a02 / 4);
  }
}

TEST(G6, NodeEqualitiesAndDerivatives) {
  for (double a : kAGrid) {
    auto g = build_g6(a);
    FPair fp(a);
    const double s = fp.scale();
    for (auto [t1, t2] : {std::pair{-1.0, -1.0}, {1.0, -0.5}, {-1.0, 0.5}}) {
      const double F = s * fp.FL(t1, t2);
      EXPECT_NEAR(g(t1, t2), F, 1e-10 * std::max(1.0, F)) << a << " " << t1 << "," << t2;
    }
    for (auto [t1, t2] : {std::pair{-1.0, 0.5}, {1.0, -0.5}}) {
      const double dF = s * fp.FL(t1, t2, 0, 1);
      EXPECT_NEAR(g.d2(t1, t2), dF, 1e-9 * std::max(1.0, std::abs(dF))) << a;
    }
  }
}

TEST(G6, DerivativeEquality) {
  for (double a : kAGrid) {
    FPair fp(a);
    const double lhs = fp.f1(-1.0) * fp.f2(0.5, 1), rhs = fp.f1(1.0) * fp.f2(-0.5, 1);
    EXPECT_NEAR(lhs, rhs, 1e-10 * std::max(1.0, std::abs(rhs))) << a;
  }
}

// Independent construction from the Hermite form with the q-multiplier.
TEST(G6, MatchesHermiteConstruction) {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> ua(0.2, 60.0), u(-1, 1);
  for (int trial = 0; trial < 10; ++trial) {
    const double a = ua(rng);
    FPair fp(a);
    auto f2 = [&](double t, int n) { return fp.f2(t, n); };
    HermiteInterpolant H(f2, {-1.0, 0.5, 0.5}, 1);
    const double A = fp.f1(-1.0), B = fp.f1(1.0);
    const double c = 0.5 * A * divided_difference(f2, {-1.0, 0.5, 0.5}, 1);
    auto tg = [&](double t1, double t2) {
      return (1 - t1) / 2 * A * H(t2) + (1 + t1) / 2 * B * (fp.f2(-0.5) + fp.f2(-0.5, 1) * (t2 + 0.5)) +
             c * (1 + t1) * (t2 + 0.5) * (t2 + 0.5);
    };
    auto g = build_g6(a);
    EXPECT_NEAR(g.c, fp.scale() * c, 1e-14 * std::max(1.0, std::abs(g.c)));
    for (int s = 0; s < 20; ++s) {
      const double t1 = u(rng), t2 = u(rng);
      EXPECT_NEAR(g(t1, t2), fp.scale() * tg(t1, t2), 1e-11 * std::max(1.0, std::abs(g(t1, t2))));
    }
    // (1 + t1)(t2 + 1/2)^2 cancels the t1 t2^2 term.
    const auto hp = H.monomial();
    EXPECT_NEAR(-A * hp.c[2] / 2 + c, 0.0, 1e-12 * std::max(1.0, c));
  }
}

TEST(G6, ExpansionInLBasis) {
  for (double a : kAGrid) {
    auto g = build_g6(a);
    auto ex = g.expansion();
    EXPECT_TRUE(ex.cpsd());
    EXPECT_LT(ex.residual, 1e-14 * g.b00);
    auto ls = expand_in_Pv(g.poly(), Family2D::L, 4);
    for (const auto& t : ex.terms) EXPECT_NEAR(ls.coeff(t.v), t.coeff, 1e-12 * g.b00);
    const double tol = 1e-12 * std::max(1.0, g.b00);
    EXPECT_NEAR(ex.constant(), g.b00 + g.a02 / 2, tol);
    EXPECT_NEAR(ex.coeff({1, 0}), g.a10, tol);
    EXPECT_NEAR(ex.coeff({0, 1}), g.a01, tol);
    EXPECT_NEAR(ex.coeff({1, 1}), g.a02, tol);
    EXPECT_NEAR(ex.coeff({0, 2}), g.a02 / 2, tol);
  }
}

TEST(G6, LPBoundMatchesEnergy) {
  const auto w = omega_star(6);
  for (double a : kAGrid) {
    GaussianPotential pot(a, Lattice::rect_l());
    const double e = periodic_energy(w, pot);
    EXPECT_NEAR(build_g6(a).lp_bound(), e, 1e-8 * e) << a;
  }
}

TEST(G6, DominatedOnSquareAtFifty) {
  const double a = 50.0;
  auto g = build_g6(a);
  FPair fp(a);
  double worst = 1e9;
  const int N = 300;
  for (int i = 0; i <= N; ++i)
    for (int j = 0; j <= N; ++j) {
      const double t1 = -1 + 2.0 * i / N, t2 = -1 + 2.0 * j / N;
      worst = std::min(worst, fp.scale() * fp.FL(t1, t2) - g(t1, t2));
    }
  EXPECT_GE(worst, -1e-12);
}

TEST(Linearize, BilinearInequality) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int i = 0; i < 1000; ++i) {
    const double c = u(rng), d = u(rng), t1 = c + (1 - c) * std::abs(u(rng)), t2 = d - (d + 1) * std::abs(u(rng));
    EXPECT_LE(t1 * t2, c * t2 + d * t1 - c * d + 1e-15);
  }
}

namespace {

const double kC4 = std::cos(2 * kPi * std::sqrt(3.0) / 4);

void check_chain(const LinearizedInterpolant& L) {
  const Rect& r = L.rect();
  for (int i = 0; i <= 30; ++i)
    for (int j = 0; j <= 30; ++j) {
      const double t1 = r.t1lo + (r.t1hi - r.t1lo) * i / 30, t2 = r.t2lo + (r.t2hi - r.t2lo) * j / 30;
      const double g = L.base(t1, t2), gcd = L.g_cd(t1, t2), gs = L.g_star(t1, t2);
      const double scale = std::max(1e-300, std::abs(gs));
      EXPECT_LE(g, gcd + 1e-14 * scale);
      EXPECT_LE(gcd, gs + 1e-14 * scale);
      if (i == 0 || j == 30) EXPECT_NEAR(g, gcd, 1e-13 * scale);
      if (i > 0 && j < 30) EXPECT_LT(g, gcd);
    }
}

}  // namespace

TEST(Linearize, FourPointChain) {
  for (double a : {21.0 + 1e-9, 30.0, 60.0}) {
    auto g = build_g4(a);
    check_chain(linearize(g, -1.0, 1.0, {-1.0, kC4, 0.7, 1.0}));
    check_chain(linearize(g, -1.0, 0.7, {-1.0, kC4, 0.6, 0.7}));
    check_chain(linearize(g, -1.0, 0.6, {-1.0, kC4, 0.5, 0.6}));
  }
}

TEST(Linearize, SixPointChain) {
  const double s2 = std::sqrt(2.0) / 2;
  for (double a : {9.6, 15.0, 30.0}) {
    auto g = build_g6(a);
    check_chain(linearize(g, -1.0, 0.5, {-1.0, -s2, 0.25, 0.5}));
    check_chain(linearize(g, -1.0, 0.25, {-1.0, -s2, 0.0, 0.25}));
    check_chain(linearize(g, -s2, 0.0, {-s2, 0.0, -0.1, 0.0}));
    check_chain(linearize(g, -s2, -0.1, {-s2, 0.0, -0.2, -0.1}));
  }
}

TEST(Linearize, ScaledMajorantIsAffineInA) {
  auto L = linearize(build_g6(12.0), -1.0, 0.5, {-1.0, -std::sqrt(2.0) / 2, 0.25, 0.5});
  const auto [al, be] = L.star_affine(-0.8, 0.3);
  for (double a : {9.6, 13.0, 40.0}) EXPECT_NEAR(std::exp(a / 3) * L.g_star(-0.8, 0.3, a), al + be * a, 1e-12 * (al + be * a));
}

TEST(Linearize, FourPointDisplayedForm) {
  const double a = 21.0, e = 1e-3;
  auto L = linearize(build_g4(std::nextafter(a, 30.0)), -1.0, 1.0, {-1.0, kC4, 0.7, 1.0});
  const double bl = 3 * (2 - 4 * e) * a * std::exp(-a / 4) / (2 * kPi * kPi);
  const double bu = 3 * a * std::exp(-a / 4) / (kPi * kPi) * (1 + e);
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u1(-1.0, kC4), u2(0.7, 1.0);
  for (int i = 0; i < 20; ++i) {
    const double t1 = u1(rng), t2 = u2(rng);
    const double want = 2 * std::pow(1 + e, 3) * std::exp(-a / 4) + bl * t2 * (t2 - 1) + bl * t1 + bu;
    EXPECT_NEAR(L.g_star(t1, t2, a), want, 1e-14 * want);
  }
}

TEST(Linearize, BranchMismatch) {
  auto g4 = build_g4(30.0);
  EXPECT_THROW(linearize(g4, -1.0, 0.9, {-1.0, kC4, 0.7, 1.0}), Error);
  EXPECT_THROW(linearize(g4, -1.0, 1.0, {-1.0, 0.2, 0.7, 1.0}), Error);
  try {
    linearize(build_g4(10.0), -1.0, 1.0, {-1.0, kC4, 0.7, 1.0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::OutOfHypothesis);
  }
  try {
    linearize(build_g6(12.0), -0.5, 0.5, {-0.5, 0.5, 0.0, 0.5});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::BranchMismatch);
  }
}

TEST(Linearize, HessianDeterminantNegative) {
  const double a = 30.0;
  auto g = build_g4(a);
  FPair fp(a);
  const double s = fp.scale();
  for (int i = 0; i < 10; ++i)
    for (int j = 0; j < 10; ++j) {
      const double t1 = -1.0 + (kC4 + 1.0) * (i + 0.5) / 10, t2 = 0.5 + 0.5 * (j + 0.5) / 10;
      const double f11 = s * fp.FA2(t1, t2, 2, 0), f22 = s * fp.FA2(t1, t2, 0, 2), f12 = s * fp.FA2(t1, t2, 1, 1);
      EXPECT_LT(f11 * (f22 - 2 * g.b1) - f12 * f12, 0.0) << t1 << "," << t2;
    }
}
