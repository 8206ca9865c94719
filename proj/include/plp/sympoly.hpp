#pragma once

#include <array>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "plp/lattice.hpp"

namespace plp {

// 2-D dual vectors in the rectangular basis of L* = {[k1, k2/sqrt3]}.
struct DualVector {
  int k1 = 0;
  int k2 = 0;
  Vec vec() const;
  static DualVector from_vec(const Vec& v);  // NotInDual unless v is in L* (within 1e-9)
  auto operator<=>(const DualVector&) const = default;
};

enum class Family2D { A2, L };
Family2D family_from_name(const std::string& name);
const char* family_name(Family2D f);

bool in_dual(DualVector v, Family2D phi);
bool in_cone(DualVector v, Family2D phi);  // W_Phi
DualVector cone_representative(DualVector v, Family2D phi);
std::vector<DualVector> orbit(DualVector v, Family2D phi);

class BivariatePolynomial {
 public:
  using Key = std::pair<int, int>;

  BivariatePolynomial() = default;
  static BivariatePolynomial constant(double c);
  static BivariatePolynomial monomial(int i, int j, double c = 1.0);
  static BivariatePolynomial chebyshev(int k, int var);  // T_k(t_var), var in {1,2}

  const std::map<Key, double>& coeffs() const { return c_; }
  double coeff(int i, int j) const;
  void add(int i, int j, double c);
  int total_degree() const;

  double operator()(double t1, double t2) const;
  BivariatePolynomial derivative(int var) const;

  BivariatePolynomial operator+(const BivariatePolynomial& o) const;
  BivariatePolynomial operator-(const BivariatePolynomial& o) const;
  BivariatePolynomial operator*(const BivariatePolynomial& o) const;
  BivariatePolynomial operator*(double s) const;

  void prune(double tol = 1e-15);
  bool approx_equal(const BivariatePolynomial& o, double tol) const;

 private:
  std::map<Key, double> c_;
};

// (1/|orbit|) sum over the orbit of v of cos(2 pi v'.x).
double C_v(const Vec& v, const PointGroup& group, const Vec& x);

// Image of C_v^{G_Phi} under t = (cos 2 pi x1, cos(2 pi x2 / sqrt3)).
BivariatePolynomial P_v(DualVector v, Family2D phi);

// 2 k0 + 3 k1 for v = k0 v' + k1 v'' in W_A2.
int a2_degree(DualVector v);

// Cone representatives of W_Phi with degree <= max_degree (A2-degree for A2, k1 + k2 for L).
std::vector<DualVector> cone_basis(Family2D phi, int max_degree);

struct PvTerm {
  DualVector v;
  double coeff;
};

struct PvExpansion {
  Family2D phi = Family2D::A2;
  std::vector<PvTerm> terms;
  double residual = 0.0;
  double constant() const;
  double coeff(DualVector v) const;
  bool cpsd(double tol = 1e-12) const;
};

PvExpansion expand_in_Pv(const BivariatePolynomial& p, Family2D phi, int max_degree = 12);

// Nearest p/q with q <= max_den when within tol, else x.
double snap_rational(double x, int max_den = 81, double tol = 1e-11);

Vec T_map(const Vec& x);  // (cos 2 pi x1, cos(2 pi x2 / sqrt3))

}  // namespace plp
