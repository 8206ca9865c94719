#pragma once

#include <optional>
#include <vector>

#include "plp/lattice.hpp"
#include "plp/sympoly.hpp"
#include "plp/theta.hpp"

namespace plp {

// Which of the theta-factorized lattices (same point set, canonical coordinates) this is, if any.
std::optional<Family2D> detect_family(const Lattice& lat);

// f_a(r^2) = e^{-a r^2} periodized over a lattice.  The truncation radius is chosen so
// that the omitted Gaussian mass is below 1e-17 times the smallest possible value of F.
class GaussianPotential {
 public:
  GaussianPotential(double a, Lattice lattice);

  double a() const { return a_; }
  const Lattice& lattice() const { return lat_; }
  double truncation_radius() const { return radius_; }
  std::optional<Family2D> theta_family() const { return family_; }

  // Direct lattice sum.
  double direct(const Vec& x) const;
  Vec direct_gradient(const Vec& x) const;
  // Theta-factorized path when available, else direct.
  double operator()(const Vec& x) const;
  double value_and_gradient(const Vec& x, Vec& grad) const;

 private:
  double a_;
  Lattice lat_;
  double radius_;
  double min_value_;
  std::optional<Family2D> family_;
};

double F(const Vec& x, const GaussianPotential& pot);

// Theta forms in canonical coordinates: F_L(x) = pi/(sqrt3 a) theta(pi/a;x1) theta(pi/(3a); x2/sqrt3),
// F_A2(x) = F_L(x) + F_L(x + (1/2, sqrt3/2)).
double F_theta(const Vec& x, double a, Family2D phi, Vec* grad = nullptr);

// F in t-variables, true scale.
double tilde_F(double t1, double t2, double a, Family2D phi);

double periodic_energy(const Configuration& omega, const GaussianPotential& pot);

struct EnergyReport {
  double energy;
  double lp_bound;
  double gap;
};

// n^2 g_0 - n g(1,1) times scale.  Throws NotCPSD if a non-constant coefficient is negative.
double lp_bound(const PvExpansion& g, int n, double scale = 1.0);

// (1/N) (E_F(omega) + N sum_{0 != v in Lambda} e^{-a|v|^2}) for omega periodic over Lambda.
double average_energy(const Configuration& omega, double a);

// Sum over 0 != v in lat of e^{-a |v|^2}.
double lattice_gaussian_sum(const Lattice& lat, double a);

}  // namespace plp
