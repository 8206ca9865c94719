#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "plp/enclosures.hpp"
#include "plp/sympoly.hpp"
#include "plp/theta.hpp"

namespace plp {

// f(t, n) returns the n-th derivative at t.
using DerivFn = std::function<double(double, int)>;

// Monomial-basis univariate polynomial, c[k] multiplies t^k.
struct Poly1 {
  std::vector<double> c;

  int degree() const { return static_cast<int>(c.size()) - 1; }
  double operator()(double t) const;
  Poly1 derivative() const;
  Poly1 operator*(const Poly1& o) const;
  Poly1 operator+(const Poly1& o) const;
  Poly1 operator*(double s) const;
};

// Coefficients in T_k / U_k for a monomial polynomial, and back.
std::vector<double> to_chebyshev_t(const Poly1& p);
std::vector<double> to_chebyshev_u(const Poly1& p);
Poly1 chebyshev_t_poly(int k);
Poly1 chebyshev_u_poly(int k);

// f[t_0..t_m] over the sorted multiset; a run of r equal nodes uses f^{(r-1)}/(r-1)!.
// Throws InsufficientDerivatives if a run is longer than max_order + 1.
double divided_difference(const DerivFn& f, std::vector<double> nodes, int max_order = 8);

// Newton form H(t) = sum_k f[t_0..t_k] p_k(t), p_k = prod_{i<k} (t - t_i), nodes sorted.
class HermiteInterpolant {
 public:
  HermiteInterpolant(const DerivFn& f, std::vector<double> nodes, int max_order = 8);

  const std::vector<double>& nodes() const { return nodes_; }
  const std::vector<double>& newton_coeffs() const { return dd_; }
  double operator()(double t) const;
  double node_product(double t) const;  // prod_i (t - t_i)
  Poly1 partial_product(int k) const;
  Poly1 monomial() const;

 private:
  std::vector<double> nodes_;
  std::vector<double> dd_;
};

// sqrt(pi/a) tt(pi/a; t), i.e. sum_n e^{-a (n + x)^2} with t = cos 2 pi x.
DerivFn tilde_F_Z(double a);

struct ZInterpolant {
  int m;
  double a;
  HermiteInterpolant H;
  std::vector<double> t_coeffs;                  // H in the T_k basis
  std::vector<std::vector<double>> partial_u;    // each p_k in the U_k basis
  bool psd;                                      // all partial_u >= 0 and T_k >= 0 for k >= 1

  double lp_bound() const;  // n^2 c_0 - n H(1), n = 2m
};

ZInterpolant build_gZ(int m, double a);

// Energy of the 2m equally spaced points on R/Z under sum_n e^{-a (x+n)^2}.
double equally_spaced_energy(int n, double a);

// g(t1,t2) = c0 + b1 t2 (t1 + t2), true scale.
struct MagicInterpolant4 {
  double a;
  double c0;
  double b1;
  bool large_branch;  // a > 21: b1 = dF/dt2(-1,1)
  bool experimental;  // b1 = dF/dt1(-1,1)

  double operator()(double t1, double t2) const { return c0 + b1 * t2 * (t1 + t2); }
  double d1(double, double t2) const { return b1 * t2; }
  double d2(double t1, double t2) const { return b1 * (t1 + 2.0 * t2); }
  std::string regime() const;
  BivariatePolynomial poly() const;
  PvExpansion expansion() const;
  double lp_bound() const;  // n = 4
};

// Both branch values at the threshold are available by calling with a = 21 and a = nextafter(21, inf).
MagicInterpolant4 build_g4(double a, bool experimental = false);

// g = a00 + a10 t1 + a01 t2 + a02 (t1 t2 + t2^2 + 1/4) = b00 + a10 t1 + a01 t2 + a02 (t1 t2 + t2^2).
struct MagicInterpolant6 {
  double a;
  double a00, a10, a01, a02, b00;
  double c;  // multiplier of (1 + t1)(t2 + 1/2)^2 in the Hermite form

  double operator()(double t1, double t2) const {
    return b00 + a10 * t1 + a01 * t2 + a02 * (t1 * t2 + t2 * t2);
  }
  double d1(double, double t2) const { return a10 + a02 * t2; }
  double d2(double t1, double t2) const { return a01 + a02 * (t1 + 2.0 * t2); }
  BivariatePolynomial poly() const;
  PvExpansion expansion() const;
  double lp_bound() const;  // n = 6
};

MagicInterpolant6 build_g6(double a);

// The sharp LP bound for (n, lattice) when a magic interpolant exists: n = 4 over A2, n = 6 over L.
std::optional<double> magic_lp_bound(int n, const Lattice& lattice, double a);

struct Rect {
  double t1lo, t1hi, t2lo, t2hi;
  bool contains(double t1, double t2, double tol = 0.0) const {
    return t1 >= t1lo - tol && t1 <= t1hi + tol && t2 >= t2lo - tol && t2 <= t2hi + tol;
  }
};

enum class InterpCase { FourPoint, SixPoint };

// g_{c,d} = g - k t1 t2 + k (c t2 + d t1 - c d), k = b1 (4pt) or a02 (6pt), and the closed-form
// majorant g*_{c,d}, whose e^{a/m1} multiple is affine in a.
class LinearizedInterpolant {
 public:
  InterpCase kind() const { return kind_; }
  double a() const { return a_; }
  double c() const { return c_; }
  double d() const { return d_; }
  const Rect& rect() const { return rect_; }
  int m1() const { return kind_ == InterpCase::FourPoint ? 4 : 3; }

  double base(double t1, double t2) const;
  double g_cd(double t1, double t2) const;
  // e^{a/m1} g* = alpha + beta a.
  std::pair<double, double> star_affine(double t1, double t2) const;
  double g_star(double t1, double t2, double a) const;
  double g_star(double t1, double t2) const { return g_star(t1, t2, a_); }

  friend LinearizedInterpolant linearize(const MagicInterpolant4&, double, double, const Rect&);
  friend LinearizedInterpolant linearize(const MagicInterpolant6&, double, double, const Rect&);

 private:
  InterpCase kind_ = InterpCase::FourPoint;
  double a_ = 0, c_ = 0, d_ = 0;
  Rect rect_{};
  double k_ = 0;
  MagicInterpolant4 g4_{};
  MagicInterpolant6 g6_{};
};

// Throws BranchMismatch unless (c,d) is the upper-left corner of rect and the majorant's
// sign conditions hold on rect; OutOfHypothesis when a is below the enclosure range (21 / 9.6).
LinearizedInterpolant linearize(const MagicInterpolant4& g, double c, double d, const Rect& rect);
LinearizedInterpolant linearize(const MagicInterpolant6& g, double c, double d, const Rect& rect);

// Closed-form enclosures of e^{a/3} times the 6-pt coefficients, a >= 9.6 (rescaled convention).
struct CoefficientBounds6 {
  Interval a00, a10, a01, a02, b00;
};
CoefficientBounds6 coefficient_bounds6(double a);

// e^{a/4} times the bounds on dF/dt2(-1,1), a >= 21.
Interval b1_bounds4(double a);

}  // namespace plp
