#include "plp/interpolants.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>

#include "plp/energy.hpp"
#include "plp/enclosures.hpp"

namespace plp {

namespace {

constexpr double kPi = std::numbers::pi;
const double kSqrt3 = std::sqrt(3.0);

double factorial(int n) {
  double r = 1.0;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

// Express p in a basis whose k-th element has degree k, by peeling leading terms.
std::vector<double> to_graded_basis(const Poly1& p, Poly1 (*basis)(int)) {
  std::vector<double> rem = p.c;
  const int n = p.degree();
  std::vector<double> out(std::max(n + 1, 1), 0.0);
  for (int k = n; k >= 0; --k) {
    const Poly1 b = basis(k);
    const double coef = rem[k] / b.c[k];
    out[k] = coef;
    for (int i = 0; i <= k; ++i) rem[i] -= coef * b.c[i];
  }
  return out;
}

}  // namespace

double Poly1::operator()(double t) const {
  double v = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * t + *it;
  return v;
}

Poly1 Poly1::derivative() const {
  Poly1 d;
  for (std::size_t k = 1; k < c.size(); ++k) d.c.push_back(k * c[k]);
  if (d.c.empty()) d.c.push_back(0.0);
  return d;
}

Poly1 Poly1::operator*(const Poly1& o) const {
  Poly1 r;
  r.c.assign(c.size() + o.c.size() - 1, 0.0);
  for (std::size_t i = 0; i < c.size(); ++i)
    for (std::size_t j = 0; j < o.c.size(); ++j) r.c[i + j] += c[i] * o.c[j];
  return r;
}

Poly1 Poly1::operator+(const Poly1& o) const {
  Poly1 r;
  r.c.assign(std::max(c.size(), o.c.size()), 0.0);
  for (std::size_t i = 0; i < c.size(); ++i) r.c[i] += c[i];
  for (std::size_t i = 0; i < o.c.size(); ++i) r.c[i] += o.c[i];
  return r;
}

Poly1 Poly1::operator*(double s) const {
  Poly1 r = *this;
  for (double& x : r.c) x *= s;
  return r;
}

Poly1 chebyshev_t_poly(int k) {
  Poly1 a{{1.0}}, b{{0.0, 1.0}};
  if (k == 0) return a;
  for (int i = 1; i < k; ++i) {
    Poly1 n = b * Poly1{{0.0, 2.0}} + a * -1.0;
    a = b;
    b = n;
  }
  return b;
}

Poly1 chebyshev_u_poly(int k) {
  Poly1 a{{1.0}}, b{{0.0, 2.0}};
  if (k == 0) return a;
  for (int i = 1; i < k; ++i) {
    Poly1 n = b * Poly1{{0.0, 2.0}} + a * -1.0;
    a = b;
    b = n;
  }
  return b;
}

std::vector<double> to_chebyshev_t(const Poly1& p) { return to_graded_basis(p, chebyshev_t_poly); }
std::vector<double> to_chebyshev_u(const Poly1& p) { return to_graded_basis(p, chebyshev_u_poly); }

namespace {

std::vector<double> newton_table(const DerivFn& f, std::vector<double>& nodes, int max_order) {
  if (nodes.empty()) throw Error(ErrorCode::InvalidArgument, "divided_difference: empty node set");
  std::sort(nodes.begin(), nodes.end());
  const std::size_t n = nodes.size();
  // col[i] holds f[t_i..t_{i+k}] after pass k.
  std::vector<double> col(n);
  for (std::size_t i = 0; i < n; ++i) col[i] = f(nodes[i], 0);
  std::vector<double> top{col[0]};
  for (std::size_t k = 1; k < n; ++k) {
    for (std::size_t i = 0; i + k < n; ++i) {
      if (nodes[i + k] == nodes[i]) {
        if (static_cast<int>(k) > max_order)
          throw Error(ErrorCode::InsufficientDerivatives, "divided_difference: node repeated beyond available derivatives");
        col[i] = f(nodes[i], static_cast<int>(k)) / factorial(static_cast<int>(k));
      } else {
        col[i] = (col[i + 1] - col[i]) / (nodes[i + k] - nodes[i]);
      }
    }
    top.push_back(col[0]);
  }
  return top;
}

}  // namespace

double divided_difference(const DerivFn& f, std::vector<double> nodes, int max_order) {
  return newton_table(f, nodes, max_order).back();
}

HermiteInterpolant::HermiteInterpolant(const DerivFn& f, std::vector<double> nodes, int max_order)
    : nodes_(std::move(nodes)) {
  dd_ = newton_table(f, nodes_, max_order);
}

double HermiteInterpolant::operator()(double t) const {
  double v = dd_.back();
  for (int k = static_cast<int>(dd_.size()) - 2; k >= 0; --k) v = v * (t - nodes_[k]) + dd_[k];
  return v;
}

double HermiteInterpolant::node_product(double t) const {
  double p = 1.0;
  for (double x : nodes_) p *= t - x;
  return p;
}

Poly1 HermiteInterpolant::partial_product(int k) const {
  Poly1 p{{1.0}};
  for (int i = 0; i < k; ++i) p = p * Poly1{{-nodes_[i], 1.0}};
  return p;
}

Poly1 HermiteInterpolant::monomial() const {
  Poly1 h{{0.0}};
  for (std::size_t k = 0; k < dd_.size(); ++k) h = h + partial_product(static_cast<int>(k)) * dd_[k];
  return h;
}

DerivFn tilde_F_Z(double a) {
  if (!(a > 0.0)) throw Error(ErrorCode::InvalidArgument, "tilde_F_Z: a must be positive");
  auto tt = std::make_shared<ThetaTilde>(kPi / a);
  const double s = std::sqrt(kPi / a);
  return [tt, s](double t, int n) { return s * (*tt)(t, n); };
}

double ZInterpolant::lp_bound() const {
  const double n = 2.0 * m;
  return n * n * t_coeffs[0] - n * H(1.0);
}

ZInterpolant build_gZ(int m, double a) {
  if (m < 1) throw Error(ErrorCode::InvalidArgument, "build_gZ: m must be >= 1");
  std::vector<double> nodes;
  for (int j = 0; j < m; ++j) {
    const double t = j == 0 ? -1.0 : std::cos(kPi * (m - j) / m);
    nodes.push_back(t);
    nodes.push_back(t);
  }
  HermiteInterpolant H(tilde_F_Z(a), nodes, 1);
  ZInterpolant z{m, a, H, to_chebyshev_t(H.monomial()), {}, true};
  double scale = 0.0;
  for (double v : z.t_coeffs) scale = std::max(scale, std::abs(v));
  for (std::size_t k = 1; k < z.t_coeffs.size(); ++k) z.psd = z.psd && z.t_coeffs[k] >= -1e-12 * scale;
  for (int k = 0; k < 2 * m; ++k) {
    auto u = to_chebyshev_u(H.partial_product(k));
    double us = 0.0;
    for (double v : u) us = std::max(us, std::abs(v));
    for (double v : u) z.psd = z.psd && v >= -1e-12 * us;
    z.partial_u.push_back(std::move(u));
  }
  return z;
}

double equally_spaced_energy(int n, double a) {
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "equally_spaced_energy: n must be >= 2");
  const int reach = static_cast<int>(std::ceil(std::sqrt(800.0 / a))) + 2;
  double e = 0.0;
  for (int k = 1; k < n; ++k) {
    const double x = static_cast<double>(k) / n;
    double f = 0.0;
    for (int j = -reach; j <= reach; ++j) f += std::exp(-a * (x + j) * (x + j));
    e += f;
  }
  return n * e;
}

std::string MagicInterpolant4::regime() const {
  if (experimental) return "experimental, uncertified";
  return large_branch ? "a>21" : "a<=21";
}

BivariatePolynomial MagicInterpolant4::poly() const {
  BivariatePolynomial p = BivariatePolynomial::constant(c0);
  p.add(1, 1, b1);
  p.add(0, 2, b1);
  return p;
}

namespace {

PvExpansion exact_expansion(Family2D phi, std::vector<PvTerm> terms, const BivariatePolynomial& target) {
  PvExpansion ex;
  ex.phi = phi;
  ex.terms = std::move(terms);
  BivariatePolynomial sum;
  for (const auto& t : ex.terms) sum = sum + P_v(t.v, phi) * t.coeff;
  const BivariatePolynomial diff = sum - target;
  for (const auto& [k, v] : diff.coeffs()) ex.residual = std::max(ex.residual, std::abs(v));
  return ex;
}

}  // namespace

PvExpansion MagicInterpolant4::expansion() const {
  return exact_expansion(Family2D::A2, {{{0, 0}, c0 + b1 / 2}, {{1, 1}, 1.5 * b1}}, poly());
}

double MagicInterpolant4::lp_bound() const { return plp::lp_bound(expansion(), 4); }

MagicInterpolant4 build_g4(double a, bool experimental) {
  if (!(a > 0.0) || !std::isfinite(a)) throw Error(ErrorCode::InvalidArgument, "build_g4: a must be positive");
  FPair fp(a);
  const double s = fp.scale();
  MagicInterpolant4 g{a, s * fp.FA2(-1.0, 1.0), 0.0, a > 21.0, experimental};
  if (experimental) {
    g.b1 = s * fp.FA2(-1.0, 1.0, 1, 0);
  } else if (g.large_branch) {
    g.b1 = s * fp.FA2(-1.0, 1.0, 0, 1);
  } else {
    g.b1 = 2.0 * s * fp.FA2(-1.0, 0.5, 1, 0);
  }
  return g;
}

BivariatePolynomial MagicInterpolant6::poly() const {
  BivariatePolynomial p = BivariatePolynomial::constant(b00);
  p.add(1, 0, a10);
  p.add(0, 1, a01);
  p.add(1, 1, a02);
  p.add(0, 2, a02);
  return p;
}

PvExpansion MagicInterpolant6::expansion() const {
  return exact_expansion(Family2D::L,
                         {{{0, 0}, b00 + a02 / 2}, {{1, 0}, a10}, {{0, 1}, a01}, {{1, 1}, a02}, {{0, 2}, a02 / 2}},
                         poly());
}

double MagicInterpolant6::lp_bound() const { return plp::lp_bound(expansion(), 6); }

MagicInterpolant6 build_g6(double a) {
  if (!(a > 0.0) || !std::isfinite(a)) throw Error(ErrorCode::InvalidArgument, "build_g6: a must be positive");
  FPair fp(a);
  const double s = fp.scale();
  const double A = fp.f1(-1.0), B = fp.f1(1.0);
  const double f2h = fp.f2(0.5), f2mh = fp.f2(-0.5);
  const double a01 = B * fp.f2(-0.5, 1);
  const double a00 = (B * f2mh + A * f2h) / 2.0;
  const double a10 = (B * f2mh - A * f2h) / 2.0 + a01 / 2.0;
  const double dd = divided_difference([&](double t, int n) { return fp.f2(t, n); }, {-1.0, 0.5, 0.5}, 1);
  const double a02 = A * dd;
  MagicInterpolant6 g{a, s * a00, s * a10, s * a01, s * a02, 0.0, 0.0};
  g.b00 = g.a00 + g.a02 / 4.0;
  g.c = g.a02 / 2.0;
  return g;
}

namespace {

CoefficientBounds6 raw_bounds6(double a) {
  constexpr double e = kEps, e2 = kEps2;
  const double s = kPi * kSqrt3;
  CoefficientBounds6 b;
  b.a01 = {2 * (1 - e) * a / s, 2 * (1 + e) * a / s};
  b.a10 = {0.5 * (-1 - 6 * e) + (1 - e) * a / s, 0.5 * (-1 + 3 * e) + (1 + e) * a / s};
  b.a00 = {1.5, 1.5 * (1 + 3 * e)};
  b.a02 = {8.0 / 9 * (-(1 + e) + kSqrt3 * a * (1 - e) / (2 * kPi)),
           8.0 / 9 * (9.0 / 8 * e2 - (1 + e) + kSqrt3 * a * (1 + e) / (2 * kPi))};
  b.b00 = {1.5 - 2.0 / 9 * (1 + e) + kSqrt3 * a * (1 - e) / (9 * kPi),
           1.5 * (1 + 3 * e) + e2 / 4 - 2.0 / 9 * (1 + e) + kSqrt3 * a * (1 + e) / (9 * kPi)};
  return b;
}

Interval raw_b1_bounds4(double a) {
  return {3 * (2 - 4 * kEps) * a / (2 * kPi * kPi), 3 * a * (1 + kEps) / (kPi * kPi)};
}

double star_scaled(const LinearizedInterpolant& L, double t1, double t2, double a) {
  const double c = L.c(), d = L.d();
  if (L.kind() == InterpCase::FourPoint) {
    const Interval b = raw_b1_bounds4(a);
    return 2 * std::pow(1 + kEps, 3) + b.lo * t2 * (t2 + c) + b.lo * d * t1 - c * d * b.hi;
  }
  const CoefficientBounds6 b = raw_bounds6(a);
  const double br = d * t1 + c * t2 - c * d;
  return b.b00.hi + b.a10.lo * t1 + (t2 >= 0 ? b.a01.hi : b.a01.lo) * t2 + b.a02.hi * t2 * t2 +
         (br <= 0 ? b.a02.lo : b.a02.hi) * br;
}

void check_corner(double c, double d, const Rect& r) {
  const bool ok = r.t1lo >= -1.0 && r.t1hi <= 1.0 && r.t2lo >= -1.0 && r.t2hi <= 1.0 && r.t1lo <= r.t1hi &&
                  r.t2lo <= r.t2hi && c == r.t1lo && d == r.t2hi;
  if (!ok) throw Error(ErrorCode::BranchMismatch, "linearize: (c,d) must be the upper-left corner of a rectangle in [-1,1]^2");
}

}  // namespace

CoefficientBounds6 coefficient_bounds6(double a) {
  if (a < kLargeA) throw Error(ErrorCode::OutOfHypothesis, "coefficient_bounds6: requires a >= 9.6");
  return raw_bounds6(a);
}

Interval b1_bounds4(double a) {
  if (a < 21.0) throw Error(ErrorCode::OutOfHypothesis, "b1_bounds4: requires a >= 21");
  return raw_b1_bounds4(a);
}

double LinearizedInterpolant::base(double t1, double t2) const {
  return kind_ == InterpCase::FourPoint ? g4_(t1, t2) : g6_(t1, t2);
}

double LinearizedInterpolant::g_cd(double t1, double t2) const {
  return base(t1, t2) + k_ * (-t1 * t2 + c_ * t2 + d_ * t1 - c_ * d_);
}

std::pair<double, double> LinearizedInterpolant::star_affine(double t1, double t2) const {
  const double v0 = star_scaled(*this, t1, t2, 0.0);
  return {v0, star_scaled(*this, t1, t2, 1.0) - v0};
}

double LinearizedInterpolant::g_star(double t1, double t2, double a) const {
  return std::exp(-a / m1()) * star_scaled(*this, t1, t2, a);
}

LinearizedInterpolant linearize(const MagicInterpolant4& g, double c, double d, const Rect& rect) {
  check_corner(c, d, rect);
  if (g.a < 21.0) throw Error(ErrorCode::OutOfHypothesis, "linearize: 4-pt majorant requires a >= 21");
  const Interval b = raw_b1_bounds4(g.a);
  const double s = std::exp(g.a / 4.0);
  const bool signs = rect.t1hi <= 0.0 && rect.t2lo >= 0.0 && rect.t2hi + c <= 0.0 && d >= 0.0;
  if (!signs || !(g.b1 > 0.0) || !b.contains(g.b1 * s))
    throw Error(ErrorCode::BranchMismatch, "linearize: 4-pt sign conditions (c<t1<0, 0<t2<d, t2+c<0) or b1 enclosure fail");
  LinearizedInterpolant L;
  L.kind_ = InterpCase::FourPoint;
  L.a_ = g.a;
  L.c_ = c;
  L.d_ = d;
  L.rect_ = rect;
  L.k_ = g.b1;
  L.g4_ = g;
  return L;
}

LinearizedInterpolant linearize(const MagicInterpolant6& g, double c, double d, const Rect& rect) {
  check_corner(c, d, rect);
  if (g.a < kLargeA) throw Error(ErrorCode::OutOfHypothesis, "linearize: 6-pt majorant requires a >= 9.6");
  if (rect.t1hi > 0.0 || !(g.a02 > 0.0))
    throw Error(ErrorCode::BranchMismatch, "linearize: 6-pt majorant needs t1 <= 0 and a02 > 0");
  LinearizedInterpolant L;
  L.kind_ = InterpCase::SixPoint;
  L.a_ = g.a;
  L.c_ = c;
  L.d_ = d;
  L.rect_ = rect;
  L.k_ = g.a02;
  L.g6_ = g;
  return L;
}

std::optional<double> magic_lp_bound(int n, const Lattice& lattice, double a) {
  const std::optional<Family2D> fam = detect_family(lattice);
  if (!fam) return std::nullopt;
  if (n == 4 && *fam == Family2D::A2) return build_g4(a).lp_bound();
  if (n == 6 && *fam == Family2D::L) return build_g6(a).lp_bound();
  return std::nullopt;
}

}  // namespace plp
