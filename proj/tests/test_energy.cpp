#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "plp/energy.hpp"

using namespace plp;

namespace {

constexpr double kPi = std::numbers::pi;
const double kS3 = std::sqrt(3.0);

Vec vec2(double a, double b) {
  Vec v(2);
  v << a, b;
  return v;
}

// Fixed-box lattice sum with no radius logic at all.
double box_sum(const Lattice& lat, const Vec& x, double a, int box) {
  double s = 0.0;
  for (int i = -box; i <= box; ++i)
    for (int j = -box; j <= box; ++j) s += std::exp(-a * (x + lat.point(vec2(i, j))).squaredNorm());
  return s;
}

}  // namespace

TEST(Potential, DirectMatchesFixedBox) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-3, 3), la(std::log(0.3), std::log(60.0));
  for (const auto& lat : {Lattice::a2(), Lattice::rect_l(), Lattice::named("rect:1.3,0.4")}) {
    for (int i = 0; i < 40; ++i) {
      const double a = std::exp(la(rng));
      Vec x = vec2(u(rng), u(rng));
      GaussianPotential pot(a, lat);
      const double want = box_sum(lat, x, a, 40);
      EXPECT_NEAR(pot.direct(x), want, 1e-13 * std::max(1.0, want));
    }
  }
}

TEST(Potential, ThetaAgreesWithDirect) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(-2, 2), ua(0.3, 60.0);
  double worst = 0.0;
  for (Family2D phi : {Family2D::L, Family2D::A2}) {
    const Lattice lat = phi == Family2D::A2 ? Lattice::a2() : Lattice::rect_l();
    for (int i = 0; i < 500; ++i) {
      const double a = ua(rng);
      Vec x = vec2(u(rng), u(rng));
      GaussianPotential pot(a, lat);
      const double d = pot.direct(x);
      worst = std::max(worst, std::abs(F_theta(x, a, phi) - d) / std::max(1.0, d));
    }
  }
  EXPECT_LT(worst, 1e-10);
}

TEST(Potential, ThetaGradientMatchesDirect) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-2, 2), ua(0.3, 40.0);
  for (Family2D phi : {Family2D::L, Family2D::A2}) {
    const Lattice lat = phi == Family2D::A2 ? Lattice::a2() : Lattice::rect_l();
    for (int i = 0; i < 100; ++i) {
      const double a = ua(rng);
      Vec x = vec2(u(rng), u(rng));
      GaussianPotential pot(a, lat);
      Vec g;
      F_theta(x, a, phi, &g);
      const Vec gd = pot.direct_gradient(x);
      EXPECT_LT((g - gd).norm(), 1e-9 * std::max(1.0, gd.norm()));
    }
  }
}

TEST(Potential, SymmetryInvariance) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-1, 1);
  std::uniform_int_distribution<int> k(-3, 3);
  const Lattice lat = Lattice::a2();
  GaussianPotential pot(1.7, lat);
  auto g = point_group("A2");
  for (int i = 0; i < 30; ++i) {
    Vec x = vec2(u(rng), u(rng));
    const double f = pot.direct(x);
    for (const auto& s : g.elements) {
      Vec y = s * x + lat.point(vec2(k(rng), k(rng)));
      EXPECT_NEAR(pot.direct(y), f, 1e-13 * f);
    }
  }
}

TEST(Potential, DetectsFamilies) {
  EXPECT_EQ(detect_family(Lattice::a2()), Family2D::A2);
  Mat other(2, 2);
  other << 1, 1.5, 0, kS3 / 2;  // same A2 points, different basis
  EXPECT_EQ(detect_family(Lattice(other)), Family2D::A2);
  EXPECT_EQ(detect_family(Lattice::rect_l()), Family2D::L);
  EXPECT_FALSE(detect_family(Lattice::a2().scaled(2.0)).has_value());
  EXPECT_FALSE(detect_family(Lattice::a2().rotated(0.3)).has_value());
}

TEST(Potential, A2IsSumOverRectangularCosets) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1, 1);
  auto reps = coset_representatives(Lattice::rect_l(), Lattice::a2());
  ASSERT_EQ(reps.size(), 2u);
  for (double a : {0.5, 3.0, 20.0}) {
    GaussianPotential pa(a, Lattice::a2()), pl(a, Lattice::rect_l());
    for (int i = 0; i < 20; ++i) {
      Vec x = vec2(u(rng), u(rng));
      double s = 0.0;
      for (const auto& y : reps.points) s += pl.direct(x + y);
      EXPECT_NEAR(pa.direct(x), s, 1e-13 * std::max(1.0, s));
    }
  }
}

TEST(TildeF, MatchesPullback) {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> u(-1, 1), ua(0.3, 40.0);
  for (Family2D phi : {Family2D::L, Family2D::A2}) {
    const Lattice lat = phi == Family2D::A2 ? Lattice::a2() : Lattice::rect_l();
    for (int i = 0; i < 200; ++i) {
      const double a = ua(rng), t1 = u(rng), t2 = u(rng);
      Vec x = vec2(std::acos(t1) / (2 * kPi), kS3 * std::acos(t2) / (2 * kPi));
      const double d = GaussianPotential(a, lat).direct(x);
      EXPECT_NEAR(tilde_F(t1, t2, a, phi), d, 1e-10 * std::max(1.0, d));
    }
  }
}

TEST(TildeF, LCornerIsProduct) {
  for (double a : {1.0, 15.0}) {
    FPair fp(a);
    EXPECT_NEAR(tilde_F(1, 1, a, Family2D::L), fp.scale() * fp.f1(1) * fp.f2(1), 1e-14 * tilde_F(1, 1, a, Family2D::L));
  }
}

TEST(TildeF, EvenOrderPartialsPositive) {
  for (double a : {0.5, 2.0, 5.0, 12.0, 30.0}) {
    FPair fp(a);
    for (int d1 = 0; d1 <= 4; ++d1)
      for (int d2 = 0; d1 + d2 <= 4; ++d2) {
        if ((d1 + d2) % 2) continue;
        for (int i = 0; i <= 20; ++i)
          for (int j = 0; j <= 20; ++j) {
            const double t1 = -1 + i / 10.0, t2 = -1 + j / 10.0;
            EXPECT_GT(fp.FA2(t1, t2, d1, d2), 0.0) << a << " " << d1 << d2 << " " << t1 << "," << t2;
          }
      }
  }
}

TEST(TildeF, FirstPartialsOnUpperStrip) {
  for (double a : {0.5, 2.0, 5.0, 12.0, 30.0}) {
    FPair fp(a);
    const double ref = fp.FA2(1, 1);
    for (int i = 0; i <= 20; ++i)
      for (int j = 0; j <= 10; ++j) {
        const double t1 = -1 + i / 10.0, t2 = 0.5 + j / 20.0;
        EXPECT_GT(fp.FA2(t1, t2, 1, 0), 0.0);
        const double d2 = fp.FA2(t1, t2, 0, 1);
        if (i == 0 && j == 0)
          EXPECT_NEAR(d2, 0.0, 1e-12 * ref);
        else
          EXPECT_GT(d2, 0.0) << a << " " << t1 << "," << t2;
      }
  }
}

TEST(Energy, TwoPoints) {
  GaussianPotential pot(2.0, Lattice::a2());
  Vec x = vec2(0.3, 0.2);
  auto w = make_configuration({vec2(0, 0), x}, Lattice::a2());
  EXPECT_NEAR(periodic_energy(w, pot), 2 * pot.direct(x), 1e-13);
}

TEST(Energy, ThreePointHexagonal) {
  for (double a : {0.7, 4.0}) {
    GaussianPotential pot(a, Lattice::a2());
    EXPECT_NEAR(periodic_energy(omega_star(3), pot), 6 * pot.direct(vec2(0.5, kS3 / 6)), 1e-12);
  }
}

TEST(Energy, TranslationInvariant) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1, 1);
  GaussianPotential pot(3.0, Lattice::a2());
  std::vector<Vec> pts;
  for (int i = 0; i < 5; ++i) pts.push_back(vec2(u(rng), u(rng)));
  const double e = periodic_energy(make_configuration(pts, Lattice::a2()), pot);
  Vec c = vec2(0.37, -0.81);
  for (auto& p : pts) p += c;
  EXPECT_NEAR(periodic_energy(make_configuration(pts, Lattice::a2()), pot), e, 1e-12 * e);
}

TEST(LPBound, Constant) {
  PvExpansion g;
  g.terms = {{{0, 0}, 2.5}};
  EXPECT_DOUBLE_EQ(lp_bound(g, 4), 16 * 2.5 - 4 * 2.5);
  g.terms.push_back({{1, 1}, -0.1});
  EXPECT_THROW(lp_bound(g, 4), Error);
}

TEST(LPBound, HoldsForRandomCPSD) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(-1, 1), pos(0, 1);
  const auto basis = cone_basis(Family2D::A2, 6);
  for (int trial = 0; trial < 40; ++trial) {
    PvExpansion g;
    g.phi = Family2D::A2;
    g.terms.push_back({{0, 0}, u(rng)});
    for (const auto& v : basis)
      if (v.k1 + v.k2 > 0) g.terms.push_back({v, pos(rng)});
    std::vector<BivariatePolynomial> ps;
    for (const auto& t : g.terms) ps.push_back(P_v(t.v, Family2D::A2));
    auto geval = [&](const Vec& x) {
      Vec t = T_map(x);
      double s = 0.0;
      for (std::size_t k = 0; k < ps.size(); ++k) s += g.terms[k].coeff * ps[k](t(0), t(1));
      return s;
    };
    const int n = 2 + trial % 7;
    std::vector<Vec> pts;
    for (int i = 0; i < n; ++i) pts.push_back(vec2(u(rng), u(rng)));
    double e = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (i != j) e += geval(pts[i] - pts[j]);
    EXPECT_GE(e, lp_bound(g, n) - 1e-9);
  }
}

TEST(AverageEnergy, SinglePoint) {
  auto w = omega_star(1);
  const double a = 1.3;
  double s = 0.0;
  for (int i = -30; i <= 30; ++i)
    for (int j = -30; j <= 30; ++j)
      if (i || j) s += std::exp(-a * Lattice::a2().point(vec2(i, j)).squaredNorm());
  EXPECT_NEAR(average_energy(w, a), s, 1e-14);
}

TEST(AverageEnergy, WindowedSum) {
  // The windowed sum undercounts neighbours of points near the window boundary, a relative
  // error of order range/r; a = 20 keeps the interaction range short enough for r = 40.
  const double a = 20.0, r = 40.0;
  const Lattice half = Lattice::a2().scaled(0.5);
  std::vector<Vec> nbrs;
  for (int i = -10; i <= 10; ++i)
    for (int j = -10; j <= 10; ++j) {
      Vec v = half.point(vec2(i, j));
      if ((i || j) && v.norm() < 2.0) nbrs.push_back(v);
    }
  const int box = static_cast<int>(2 * r / 0.4);
  long count = 0;
  double total = 0.0;
  for (int i = -box; i <= box; ++i)
    for (int j = -box; j <= box; ++j) {
      Vec p = half.point(vec2(i, j));
      if (p.norm() > r) continue;
      ++count;
      for (const auto& v : nbrs)
        if ((p + v).norm() <= r) total += std::exp(-a * v.squaredNorm());
    }
  EXPECT_NEAR(average_energy(omega_star(4), a), total / count, 1e-3);
}

TEST(AverageEnergy, ScalingLatticeKeepsValue) {
  const Lattice a2 = Lattice::a2();
  const Lattice big = a2.scaled(2.0);
  auto w = omega_star(4);
  auto shifts = coset_representatives(big, a2);
  std::vector<Vec> pts;
  for (const auto& p : w.points)
    for (const auto& s : shifts.points) pts.push_back(p + s);
  auto w2 = make_configuration(pts, big);
  for (double a : {0.8, 6.0}) EXPECT_NEAR(average_energy(w2, a), average_energy(w, a), 1e-9);
}
