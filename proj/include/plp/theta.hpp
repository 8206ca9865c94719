#pragma once

#include <vector>

#include "plp/error.hpp"

namespace plp {

struct CertifiedValue {
  double value = 0.0;
  double tail = 0.0;  // |value - exact| <= tail
};

inline constexpr double kDefaultTol = 1e-14;
inline constexpr double kEps = 1e-3;
inline constexpr double kEps2 = 1e-2;
inline constexpr double kLargeA = 9.6;

// Re-checks the inequalities that justify kEps and kEps2 at a = kLargeA.
// Throws AssumptionSpotCheck if any fails.
void verify_epsilon_constants();

// theta(c;x) = 1 + 2 sum_k e^{-pi k^2 c} cos(2 pi k x)
CertifiedValue theta(double c, double x, double tol = kDefaultTol);
// c^{-1/2} sum_k e^{-pi (k+x)^2 / c}
CertifiedValue theta_dual(double c, double x, double tol = kDefaultTol);
// order-th x-derivative of theta(c;x) from either series; order <= 12.
CertifiedValue theta_deriv(double c, double x, int order, bool dual, double tol = kDefaultTol);

// Value and x-derivative of theta(c;x), picking the faster series.
struct ThetaVG {
  double value;
  double dx;
};
ThetaVG theta_vg(double c, double x);

// T_k^{(n)}(t) via the derivative recurrence.
double chebyshev_t(int k, double t, int order = 0);

// tilde-theta(c;t) = theta(c; arccos(t)/(2 pi)), evaluated from the Jacobi product
//   prod_r (1-q^{2r}) [ (1-q^{2r-1})^2 + 2 q^{2r-1} (1+t) ],  q = e^{-pi c}.
// Every factor is linear in t, so derivatives are n! * value * e_n(y) with
// y_r = 2 q^{2r-1} / factor_r, all positive on [-1,1].
class ThetaTilde {
 public:
  explicit ThetaTilde(double c, int min_factors = 0);

  double c() const { return c_; }
  int factors() const { return static_cast<int>(a_.size()); }
  CertifiedValue deriv(double t, int order, double tol = kDefaultTol) const;
  double operator()(double t, int order = 0) const { return deriv(t, order).value; }

 private:
  CertifiedValue eval(double t, int order) const;

  double c_;
  double q_;
  double prefactor_;
  std::vector<double> a_;  // (1-q^{2r-1})^2
  std::vector<double> b_;  // 2 q^{2r-1}
};

CertifiedValue tilde_theta_deriv(double c, double t, int order, double tol = kDefaultTol);

// The cosine series differentiated termwise at t = sign (+1 or -1), using
// T_k^{(n)}(+-1) = (+-1)^{k+n} prod_{j<n} (k^2 - j^2)/(2j+1).
CertifiedValue tilde_theta_limit(double c, int sign, int order, double tol = kDefaultTol);

// Partial Jacobi product with n_factors factors.
double triple_product(double c, double t, int n_factors);

enum class Regime { Small, Large };

struct ThetaRegime {
  double a;
  Regime regime;
  static ThetaRegime of(double a);
};

// Small: f1 = tt(pi/a), f2 = tt(pi/(3a)).  Rescaled: both multiplied by sqrt(c).
// Auto picks Small when a <= pi^2.
enum class Convention { Auto, Small, Rescaled };

CertifiedValue f1f2(const ThetaRegime& regime, int which, double t, int order = 0,
                    double tol = kDefaultTol);

// The pair (f1, f2) for one a in one convention.  F_L = scale * f1(t1) f2(t2),
// F_A2 = scale * [f1(t1) f2(t2) + f1(-t1) f2(-t2)].
class FPair {
 public:
  FPair(double a, Convention conv = Convention::Auto);

  double a() const { return a_; }
  Convention convention() const { return conv_; }
  double scale() const { return scale_; }

  double f1(double t, int order = 0) const { return m1_ * t1_(t, order); }
  double f2(double t, int order = 0) const { return m2_ * t2_(t, order); }
  double f(int which, double t, int order = 0) const {
    return which == 1 ? f1(t, order) : f2(t, order);
  }

  // Convention units (without scale).
  double FL(double t1, double t2, int d1 = 0, int d2 = 0) const;
  double FA2(double t1, double t2, int d1 = 0, int d2 = 0) const;

 private:
  double a_;
  Convention conv_;
  double scale_;
  double m1_;
  double m2_;
  ThetaTilde t1_;
  ThetaTilde t2_;
};

}  // namespace plp
