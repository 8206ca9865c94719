#include "plp/theta.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace plp {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kMaxTerms = 1000000;

void require_positive_c(double c) {
  if (!(c > 0.0) || !std::isfinite(c)) {
    throw Error(ErrorCode::InvalidArgument, "theta: c must be positive, got " + std::to_string(c));
  }
}

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

}  // namespace

void verify_epsilon_constants() {
  const double a = kLargeA;
  double s1 = 0.0;
  double s2 = 0.0;
  for (int n = 1; n < 60; ++n) {
    s1 += std::exp(-a * n);
    s2 += std::exp(-2.0 * a * n / 3.0);
  }
  const bool ok = kEps > 2.0 * s1 && kEps > 5.0 * std::exp(-a) &&
                  kEps2 > 4.0 * (1 + kEps) * (1 + kEps) * s2;
  if (!ok) throw Error(ErrorCode::AssumptionSpotCheck, "epsilon constants fail at a=9.6");
}

CertifiedValue theta(double c, double x, double tol) {
  require_positive_c(c);
  double sum = 1.0;
  for (int k = 1; k <= kMaxTerms; ++k) {
    const double lead = 2.0 * std::exp(-kPi * k * k * c);
    const double bound = lead / -std::expm1(-kPi * (2 * k + 1) * c);
    if (bound < tol) return {sum, bound};
    sum += lead * std::cos(2.0 * kPi * k * x);
  }
  throw Error(ErrorCode::ToleranceUnreachable, "theta: too many terms");
}

CertifiedValue theta_dual(double c, double x, double tol) {
  require_positive_c(c);
  const double xr = x - std::round(x);
  const double pref = 1.0 / std::sqrt(c);
  double sum = std::exp(-kPi * xr * xr / c);
  for (int k = 0; k <= kMaxTerms; ++k) {
    if (k > 0) {
      const double up = k + xr;
      const double dn = -k + xr;
      sum += std::exp(-kPi * up * up / c) + std::exp(-kPi * dn * dn / c);
    }
    const double h = k + 0.5;
    const double tail =
        2.0 * pref * std::exp(-kPi * h * h / c) / -std::expm1(-kPi * (2 * k + 1) / c);
    if (tail < tol) return {pref * sum, tail};
  }
  throw Error(ErrorCode::ToleranceUnreachable, "theta_dual: too many terms");
}

CertifiedValue theta_deriv(double c, double x, int order, bool dual, double tol) {
  require_positive_c(c);
  if (order < 0 || order > 12) throw Error(ErrorCode::InvalidArgument, "theta_deriv: order must be in [0, 12]");
  if (order == 0) return dual ? theta_dual(c, x, tol) : theta(c, x, tol);
  if (!dual) {
    // 2 (2 pi k)^n e^{-pi k^2 c} bounds the k-th term; the term ratio decreases in k.
    double sum = 0.0;
    for (int k = 1; k <= kMaxTerms; ++k) {
      const double w = 2.0 * kPi * k;
      const double lead = 2.0 * std::pow(w, order) * std::exp(-kPi * k * k * c);
      const double ratio = std::pow((k + 1.0) / k, order) * std::exp(-kPi * (2 * k + 1) * c);
      if (ratio < 1.0 && lead / (1.0 - ratio) < tol) return {sum, lead / (1.0 - ratio)};
      // d^n/dx^n cos(w x) = w^n cos(w x + n pi / 2)
      sum += 2.0 * std::pow(w, order) * std::exp(-kPi * k * k * c) * std::cos(w * x + order * kPi / 2.0);
    }
    throw Error(ErrorCode::ToleranceUnreachable, "theta_deriv: too many terms");
  }
  // g(y) = e^{-s^2 y^2}, s = sqrt(pi/c): g^{(n)}(y) = (-s)^n H_n(s y) g(y) and |H_n(z)| <= (2|z| + sqrt n)^n.
  const double s = std::sqrt(kPi / c);
  const double xr = x - std::round(x);
  const double pref = 1.0 / std::sqrt(c);
  auto term = [&](double y) {
    const double z = s * y;
    double h0 = 1.0, h1 = 2.0 * z;
    for (int k = 1; k < order; ++k) {
      const double h2 = 2.0 * z * h1 - 2.0 * k * h0;
      h0 = h1;
      h1 = h2;
    }
    return std::pow(-s, order) * h1 * std::exp(-z * z);
  };
  auto bound = [&](double y) { return std::pow(s, order) * std::pow(2.0 * s * y + std::sqrt(order), order) * std::exp(-s * s * y * y); };
  double sum = term(xr);
  for (int k = 1; k <= kMaxTerms; ++k) {
    sum += term(k + xr) + term(-k + xr);
    // Remaining |y| >= k + 1/2 on both sides.
    const double y = k + 0.5;
    const double ratio = bound(y + 1.0) / bound(y);
    if (ratio < 1.0 && s * y > std::sqrt(order)) {
      const double tail = 2.0 * pref * bound(y) / (1.0 - ratio);
      if (tail < tol) return {pref * sum, tail};
    }
  }
  throw Error(ErrorCode::ToleranceUnreachable, "theta_deriv: too many terms");
}

ThetaVG theta_vg(double c, double x) {
  require_positive_c(c);
  if (c >= 1.0) {
    double v = 1.0;
    double d = 0.0;
    for (int k = 1;; ++k) {
      const double e = std::exp(-kPi * k * k * c);
      if (e < 1e-19) break;
      const double w = 2.0 * kPi * k * x;
      v += 2.0 * e * std::cos(w);
      d -= 4.0 * kPi * k * e * std::sin(w);
    }
    return {v, d};
  }
  const double xr = x - std::round(x);
  const double pref = 1.0 / std::sqrt(c);
  const double cutoff = kPi / (4.0 * c) + 44.0;
  double v = 0.0;
  double d = 0.0;
  for (int k = 0;; ++k) {
    const double h = k - 0.5;
    if (k > 0 && kPi * h * h / c > cutoff) break;
    for (int s : {1, -1}) {
      if (k == 0 && s == -1) continue;
      const double y = s * k + xr;
      const double e = std::exp(-kPi * y * y / c);
      v += e;
      d += -2.0 * kPi * y / c * e;
    }
  }
  return {pref * v, pref * d};
}

double chebyshev_t(int k, double t, int order) {
  if (k < 0 || order < 0) throw Error(ErrorCode::InvalidArgument, "chebyshev_t: negative index");
  // d[n] holds T_j^{(n)}; prev holds T_{j-1}^{(n)}.
  std::vector<double> prev(order + 1, 0.0);
  std::vector<double> cur(order + 1, 0.0);
  prev[0] = 1.0;
  if (k == 0) return order == 0 ? 1.0 : 0.0;
  cur[0] = t;
  if (order >= 1) cur[1] = 1.0;
  for (int j = 1; j < k; ++j) {
    std::vector<double> next(order + 1, 0.0);
    for (int n = 0; n <= order; ++n) {
      next[n] = 2.0 * t * cur[n] - prev[n];
      if (n > 0) next[n] += 2.0 * n * cur[n - 1];
    }
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur[order];
}

ThetaTilde::ThetaTilde(double c, int min_factors) : c_(c) {
  require_positive_c(c);
  q_ = std::exp(-kPi * c);
  prefactor_ = 1.0;
  for (int r = 1;; ++r) {
    const double odd = -kPi * c * (2 * r - 1);
    const double em = std::expm1(odd);
    a_.push_back(em * em);
    b_.push_back(2.0 * std::exp(odd));
    prefactor_ *= -std::expm1(-2.0 * kPi * r * c);
    const double next = std::exp(-kPi * c * (2 * r + 1));
    if (r >= 10 && r >= min_factors && next < 1e-22 * -std::expm1(-2.0 * kPi * c)) break;
    if (r > kMaxTerms) throw Error(ErrorCode::ToleranceUnreachable, "ThetaTilde: too many factors");
  }
}

CertifiedValue ThetaTilde::eval(double t, int order) const {
  const int n = order;
  double v = prefactor_;
  std::vector<double> e(n + 1, 0.0);
  e[0] = 1.0;
  for (std::size_t r = 0; r < a_.size(); ++r) {
    const double lin = a_[r] + b_[r] * (1.0 + t);
    v *= lin;
    const double y = b_[r] / lin;
    for (int j = n; j >= 1; --j) e[j] += e[j - 1] * y;
  }
  const double nf = factorial(n);
  const double value = nf * v * e[n];

  const int R = factors();
  const double q2R1 = std::exp(-kPi * c_ * (2 * R + 1));
  const double q2 = -std::expm1(-2.0 * kPi * c_);
  const double one_m = -std::expm1(-kPi * c_ * (2 * R + 1));
  const double delta = (q2R1 * q_ + 2.0 * q2R1) / (one_m * q2);
  const double s = 2.0 * q2R1 / (one_m * one_m * q2);
  double de = 0.0;
  double sj = 1.0;
  for (int j = 1; j <= n; ++j) {
    sj *= s / j;
    de += e[n - j] * sj;
  }
  const double tail = nf * v * (std::expm1(delta) * (e[n] + de) + de);
  return {value, tail};
}

CertifiedValue ThetaTilde::deriv(double t, int order, double tol) const {
  if (order < 0 || order > 8) throw Error(ErrorCode::InvalidArgument, "ThetaTilde: order out of range");
  if (!(t >= -1.0 && t <= 1.0)) throw Error(ErrorCode::InvalidArgument, "ThetaTilde: t outside [-1,1]");
  CertifiedValue r = eval(t, order);
  int nf = factors();
  while (r.tail > tol) {
    nf *= 2;
    if (nf > kMaxTerms) throw Error(ErrorCode::ToleranceUnreachable, "ThetaTilde: tolerance unreachable");
    r = ThetaTilde(c_, nf).eval(t, order);
  }
  return r;
}

CertifiedValue tilde_theta_deriv(double c, double t, int order, double tol) {
  return ThetaTilde(c).deriv(t, order, tol);
}

CertifiedValue tilde_theta_limit(double c, int sign, int order, double tol) {
  require_positive_c(c);
  if (sign != 1 && sign != -1) throw Error(ErrorCode::InvalidArgument, "tilde_theta_limit: sign must be +-1");
  if (order < 0) throw Error(ErrorCode::InvalidArgument, "tilde_theta_limit: negative order");
  const int n = order;
  double denom = 1.0;
  for (int j = 0; j < n; ++j) denom *= 2 * j + 1;
  auto coef = [&](int k) {
    double p = 1.0;
    for (int j = 0; j < n; ++j) p *= static_cast<double>(k) * k - static_cast<double>(j) * j;
    const int parity = (k + n) % 2 == 0 ? 1 : sign;
    return parity * p / denom;
  };
  auto mag_bound = [&](int k) {
    return 2.0 * std::exp(-kPi * static_cast<double>(k) * k * c) * std::pow(k, 2.0 * n) / denom;
  };
  auto ratio = [&](int k) {
    return std::exp(-kPi * c * (2 * k + 1)) * std::pow((k + 1.0) / k, 2.0 * n);
  };
  double sum = n == 0 ? 1.0 : 0.0;
  for (int k = 1; k <= kMaxTerms; ++k) {
    sum += 2.0 * std::exp(-kPi * static_cast<double>(k) * k * c) * coef(k);
    const int nk = k + 1;
    const double r = ratio(nk);
    if (r < 1.0) {
      const double tail = mag_bound(nk) / (1.0 - r);
      if (tail < tol) return {sum, tail};
    }
  }
  throw Error(ErrorCode::ToleranceUnreachable, "tilde_theta_limit: too many terms");
}

double triple_product(double c, double t, int n_factors) {
  require_positive_c(c);
  if (n_factors < 1) throw Error(ErrorCode::InvalidArgument, "triple_product: n_factors must be >= 1");
  double p = 1.0;
  for (int r = 1; r <= n_factors; ++r) {
    const double odd = std::exp(-(2 * r - 1) * kPi * c);
    p *= -std::expm1(-2.0 * kPi * r * c) * (1.0 + 2.0 * odd * t + odd * odd);
  }
  return p;
}

ThetaRegime ThetaRegime::of(double a) {
  if (!(a > 0.0)) throw Error(ErrorCode::InvalidArgument, "a must be positive");
  return {a, a <= kPi * kPi ? Regime::Small : Regime::Large};
}

CertifiedValue f1f2(const ThetaRegime& regime, int which, double t, int order, double tol) {
  if (which != 1 && which != 2) throw Error(ErrorCode::InvalidArgument, "f1f2: which must be 1 or 2");
  const double c = which == 1 ? kPi / regime.a : kPi / (3.0 * regime.a);
  if (regime.regime == Regime::Small) return tilde_theta_deriv(c, t, order, tol);
  const double m = std::sqrt(c);
  CertifiedValue v = tilde_theta_deriv(c, t, order, tol / m);
  return {m * v.value, m * v.tail};
}

namespace {

Convention resolve(double a, Convention conv) {
  if (!(a > 0.0)) throw Error(ErrorCode::InvalidArgument, "a must be positive");
  if (conv != Convention::Auto) return conv;
  return a <= kPi * kPi ? Convention::Small : Convention::Rescaled;
}

}  // namespace

FPair::FPair(double a, Convention conv)
    : a_(a),
      conv_(resolve(a, conv)),
      scale_(conv_ == Convention::Small ? kPi / (std::sqrt(3.0) * a) : 1.0),
      m1_(conv_ == Convention::Small ? 1.0 : std::sqrt(kPi / a)),
      m2_(conv_ == Convention::Small ? 1.0 : std::sqrt(kPi / (3.0 * a))),
      t1_(kPi / a),
      t2_(kPi / (3.0 * a)) {}

double FPair::FL(double t1, double t2, int d1, int d2) const { return f1(t1, d1) * f2(t2, d2); }

double FPair::FA2(double t1, double t2, int d1, int d2) const {
  const double sgn = (d1 + d2) % 2 == 0 ? 1.0 : -1.0;
  return f1(t1, d1) * f2(t2, d2) + sgn * f1(-t1, d1) * f2(-t2, d2);
}

}  // namespace plp
