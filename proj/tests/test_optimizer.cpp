#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "plp/interpolants.hpp"
#include "plp/optimizer.hpp"

using namespace plp;

namespace {

double rel(double x, double y) { return std::abs(x - y) / std::abs(y); }

double star_energy(int n, const std::string& lat, double a) {
  return periodic_energy(omega_star(n), GaussianPotential(a, Lattice::named(lat)));
}

OptimizerConfig config(int n, const std::string& lat, double a, int restarts = 20) {
  OptimizerConfig c;
  c.n = n;
  c.lattice = lat;
  c.a = a;
  c.restarts = restarts;
  c.seed = 7;
  return c;
}

}  // namespace

TEST(ConfigurationEnergy, MatchesPeriodicEnergy) {
  const GaussianPotential pot(2.5, Lattice::a2());
  const Configuration w = omega_star(4);
  EXPECT_NEAR(configuration_energy(w.points, pot), periodic_energy(w, pot), 1e-12 * periodic_energy(w, pot));
}

TEST(ConfigurationEnergy, GradientMatchesCentralDifferences) {
  const GaussianPotential pot(4.0, Lattice::rect_l());
  const auto x = random_start(pot.lattice(), 5, 3, 0);
  std::vector<Vec> g;
  configuration_energy(x, pot, &g);
  EXPECT_EQ(g[0].norm(), 0.0);
  const double h = 1e-6;
  for (std::size_t i = 1; i < x.size(); ++i)
    for (int k = 0; k < 2; ++k) {
      auto xp = x, xm = x;
      xp[i](k) += h;
      xm[i](k) -= h;
      const double fd = (configuration_energy(xp, pot) - configuration_energy(xm, pot)) / (2 * h);
      EXPECT_NEAR(g[i](k), fd, 1e-7 * std::max(1.0, std::abs(fd)));
    }
}

TEST(Descend, EnergyNonIncreasingAndPinned) {
  const GaussianPotential pot(3.0, Lattice::a2());
  for (std::uint64_t k = 0; k < 5; ++k) {
    const DescentResult r = descend(pot, random_start(pot.lattice(), 4, 11, k), config(4, "A2", 3.0), true);
    EXPECT_TRUE(r.monotone);
    for (std::size_t i = 1; i < r.trace.size(); ++i) EXPECT_LE(r.trace[i], r.trace[i - 1]);
    EXPECT_EQ(r.points[0].norm(), 0.0);
  }
}

TEST(Descend, LatticeTranslationInvariant) {
  const GaussianPotential pot(5.0, Lattice::rect_l());
  const auto x = random_start(pot.lattice(), 6, 5, 2);
  auto y = x;
  for (std::size_t i = 1; i < y.size(); ++i) y[i] += pot.lattice().point(Vec::Constant(2, static_cast<double>(i) - 3.0));
  const OptimizerConfig cfg = config(6, "L", 5.0);
  EXPECT_NEAR(descend(pot, x, cfg).energy, descend(pot, y, cfg).energy, 1e-9);
}

TEST(RandomStart, DeterministicAndInCell) {
  const Lattice lat = Lattice::a2();
  const auto x = random_start(lat, 6, 42, 3);
  const auto y = random_start(lat, 6, 42, 3);
  const auto z = random_start(lat, 6, 42, 4);
  EXPECT_EQ(x[0].norm(), 0.0);
  for (std::size_t i = 0; i < x.size(); ++i) {
    EXPECT_EQ(x[i], y[i]);
    const Vec c = lat.coords(x[i]);
    EXPECT_TRUE(c.minCoeff() >= 0.0 && c.maxCoeff() < 1.0);
  }
  EXPECT_NE(x[1], z[1]);
}

TEST(Minimize, FourPointA2) {
  const OptimizationResult r = minimize(config(4, "A2", 3.0));
  EXPECT_LT(rel(r.best_energy, star_energy(4, "A2", 3.0)), 1e-6);
  ASSERT_TRUE(r.lp_bound.has_value());
  EXPECT_TRUE(r.above_lp_bound);
  const double gap = (r.best_energy - *r.lp_bound) / *r.lp_bound;
  EXPECT_GE(gap, -1e-9);
  EXPECT_LE(gap, 1e-5);
}

TEST(Minimize, SixPointL) {
  const OptimizationResult r = minimize(config(6, "L", 10.0));
  EXPECT_LT(rel(r.best_energy, star_energy(6, "L", 10.0)), 1e-6);
  ASSERT_TRUE(r.lp_bound.has_value());
  EXPECT_TRUE(r.above_lp_bound);
  EXPECT_EQ(r.best_energy, r.energies[r.best_restart]);
  for (double e : r.energies) EXPECT_GE(e, r.best_energy);
}

TEST(Minimize, TwoPointsOnL) {
  const OptimizationResult r = minimize(config(2, "L", 2.0, 10));
  const Lattice l = Lattice::rect_l();
  const Vec d = reduce(r.best_config.points[1] - r.best_config.points[0], l);
  Vec want(2);
  want << 0.5, std::numbers::sqrt3 / 2;
  EXPECT_LT((d - want).norm(), 1e-5);
}

TEST(Minimize, DeterministicAcrossThreadCounts) {
  OptimizerConfig c = config(5, "A2", 4.0, 8);
  c.threads = 1;
  const OptimizationResult x = minimize(c);
  c.threads = 3;
  const OptimizationResult y = minimize(c);
  EXPECT_EQ(x.energies, y.energies);
  EXPECT_EQ(x.best_restart, y.best_restart);
}

TEST(Minimize, Errors) {
  EXPECT_THROW(minimize(config(1, "A2", 1.0)), Error);
  EXPECT_THROW(minimize(config(4, "A2", -1.0)), Error);
  EXPECT_THROW(minimize(config(4, "A2", 1.0, 0)), Error);
}

TEST(CompareCandidates, OptimalBeatsPerturbed) {
  Configuration perturbed = omega_star(3);
  perturbed.points[1](0) += 0.05;
  for (double a : {1.0, 5.0}) {
    const auto rows = compare_candidates(3, "A2", a, {{"perturbed", perturbed}, {"omega3", omega_star(3)}});
    ASSERT_EQ(rows.size(), 2u);
    EXPECT_EQ(rows[0].label, "omega3");
    EXPECT_LT(rows[0].energy, rows[1].energy);
  }
}

TEST(CompareCandidates, SingleRow) {
  const auto rows = compare_candidates(4, "A2", 2.0, {{"omega4", omega_star(4)}});
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_DOUBLE_EQ(rows[0].energy, star_energy(4, "A2", 2.0));
  EXPECT_THROW(compare_candidates(3, "A2", 2.0, {{"omega4", omega_star(4)}}), Error);
}

TEST(CompareCandidates, EightPointsMatchOptimizer) {
  for (double a : {2.0, 10.0}) {
    const auto rows = compare_candidates(8, "L", a, {{"omega8", omega_star(8)}}, config(8, "L", a));
    ASSERT_EQ(rows.size(), 2u);
    EXPECT_LT(rel(rows[0].energy, rows[1].energy), 1e-5) << a;
  }
}
