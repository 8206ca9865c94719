#include "plp/sympoly.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace plp {

namespace {

constexpr double kPi = std::numbers::pi;
const double kSqrt3 = std::sqrt(3.0);

const PointGroup& group_of(Family2D phi) {
  static const PointGroup a2 = point_group("A2");
  static const PointGroup l = point_group("L");
  return phi == Family2D::A2 ? a2 : l;
}

}  // namespace

Vec DualVector::vec() const {
  Vec v(2);
  v << k1, k2 / kSqrt3;
  return v;
}

DualVector DualVector::from_vec(const Vec& v) {
  const double a = v(0);
  const double b = v(1) * kSqrt3;
  if (std::abs(a - std::round(a)) > 1e-9 || std::abs(b - std::round(b)) > 1e-9) {
    throw Error(ErrorCode::NotInDual, "vector is not in L*");
  }
  return {static_cast<int>(std::lround(a)), static_cast<int>(std::lround(b))};
}

Family2D family_from_name(const std::string& name) {
  if (name == "A2") return Family2D::A2;
  if (name == "L") return Family2D::L;
  throw Error(ErrorCode::UnsupportedLattice, "expected A2 or L, got " + name);
}

const char* family_name(Family2D f) { return f == Family2D::A2 ? "A2" : "L"; }

bool in_dual(DualVector v, Family2D phi) {
  return phi == Family2D::L || (v.k1 - v.k2) % 2 == 0;
}

bool in_cone(DualVector v, Family2D phi) {
  if (phi == Family2D::L) return v.k1 >= 0 && v.k2 >= 0;
  return 0 <= v.k2 && v.k2 <= v.k1 && (v.k1 - v.k2) % 2 == 0;
}

std::vector<DualVector> orbit(DualVector v, Family2D phi) {
  std::vector<DualVector> out;
  const Vec x = v.vec();
  for (const auto& m : group_of(phi).elements) {
    DualVector w = DualVector::from_vec(m * x);
    if (std::find(out.begin(), out.end(), w) == out.end()) out.push_back(w);
  }
  std::sort(out.begin(), out.end());
  return out;
}

DualVector cone_representative(DualVector v, Family2D phi) {
  if (!in_dual(v, phi)) throw Error(ErrorCode::NotInDual, "vector not in the dual lattice");
  for (const auto& w : orbit(v, phi)) {
    if (in_cone(w, phi)) return w;
  }
  throw Error(ErrorCode::NotInCone, "orbit misses the fundamental cone");
}

BivariatePolynomial BivariatePolynomial::constant(double c) { return monomial(0, 0, c); }

BivariatePolynomial BivariatePolynomial::monomial(int i, int j, double c) {
  BivariatePolynomial p;
  p.add(i, j, c);
  return p;
}

BivariatePolynomial BivariatePolynomial::chebyshev(int k, int var) {
  if (k < 0) throw Error(ErrorCode::InvalidArgument, "chebyshev: negative degree");
  std::vector<double> prev{1.0};
  std::vector<double> cur{0.0, 1.0};
  if (k == 0) cur = prev;
  for (int j = 1; j < k; ++j) {
    std::vector<double> next(cur.size() + 1, 0.0);
    for (std::size_t i = 0; i < cur.size(); ++i) next[i + 1] += 2.0 * cur[i];
    for (std::size_t i = 0; i < prev.size(); ++i) next[i] -= prev[i];
    prev = std::move(cur);
    cur = std::move(next);
  }
  BivariatePolynomial p;
  for (std::size_t i = 0; i < cur.size(); ++i) {
    if (cur[i] != 0.0) p.add(var == 1 ? static_cast<int>(i) : 0, var == 1 ? 0 : static_cast<int>(i), cur[i]);
  }
  return p;
}

double BivariatePolynomial::coeff(int i, int j) const {
  auto it = c_.find({i, j});
  return it == c_.end() ? 0.0 : it->second;
}

void BivariatePolynomial::add(int i, int j, double c) {
  if (i < 0 || j < 0) throw Error(ErrorCode::InvalidArgument, "negative exponent");
  c_[{i, j}] += c;
}

int BivariatePolynomial::total_degree() const {
  int d = 0;
  for (const auto& [k, v] : c_) {
    if (v != 0.0) d = std::max(d, k.first + k.second);
  }
  return d;
}

double BivariatePolynomial::operator()(double t1, double t2) const {
  double s = 0.0;
  for (const auto& [k, v] : c_) s += v * std::pow(t1, k.first) * std::pow(t2, k.second);
  return s;
}

BivariatePolynomial BivariatePolynomial::derivative(int var) const {
  BivariatePolynomial p;
  for (const auto& [k, v] : c_) {
    const int e = var == 1 ? k.first : k.second;
    if (e == 0) continue;
    if (var == 1) {
      p.add(k.first - 1, k.second, v * e);
    } else {
      p.add(k.first, k.second - 1, v * e);
    }
  }
  return p;
}

BivariatePolynomial BivariatePolynomial::operator+(const BivariatePolynomial& o) const {
  BivariatePolynomial p = *this;
  for (const auto& [k, v] : o.c_) p.c_[k] += v;
  return p;
}

BivariatePolynomial BivariatePolynomial::operator-(const BivariatePolynomial& o) const {
  return *this + o * -1.0;
}

BivariatePolynomial BivariatePolynomial::operator*(const BivariatePolynomial& o) const {
  BivariatePolynomial p;
  for (const auto& [k1, v1] : c_) {
    for (const auto& [k2, v2] : o.c_) p.c_[{k1.first + k2.first, k1.second + k2.second}] += v1 * v2;
  }
  return p;
}

BivariatePolynomial BivariatePolynomial::operator*(double s) const {
  BivariatePolynomial p = *this;
  for (auto& [k, v] : p.c_) v *= s;
  return p;
}

void BivariatePolynomial::prune(double tol) {
  std::erase_if(c_, [tol](const auto& kv) { return std::abs(kv.second) <= tol; });
}

bool BivariatePolynomial::approx_equal(const BivariatePolynomial& o, double tol) const {
  BivariatePolynomial d = *this - o;
  for (const auto& [k, v] : d.c_) {
    if (std::abs(v) > tol) return false;
  }
  return true;
}

double C_v(const Vec& v, const PointGroup& group, const Vec& x) {
  std::vector<Vec> seen;
  double s = 0.0;
  for (const auto& m : group.elements) {
    Vec w = m * v;
    bool dup = false;
    for (const auto& u : seen) dup = dup || (u - w).norm() < 1e-9;
    if (dup) continue;
    seen.push_back(w);
    s += std::cos(2.0 * kPi * w.dot(x));
  }
  return s / static_cast<double>(seen.size());
}

double snap_rational(double x, int max_den, double tol) {
  for (int q = 1; q <= max_den; ++q) {
    const double p = std::round(x * q);
    if (std::abs(x - p / q) <= tol) return p / q;
  }
  return x;
}

BivariatePolynomial P_v(DualVector v, Family2D phi) {
  if (!in_dual(v, phi)) throw Error(ErrorCode::NotInDual, "P_v: vector not in the dual lattice");
  if (phi == Family2D::L) {
    return BivariatePolynomial::chebyshev(std::abs(v.k1), 1) * BivariatePolynomial::chebyshev(std::abs(v.k2), 2);
  }
  // Rotations by 0, 2pi/3, 4pi/3 represent G_A2 / H.
  BivariatePolynomial p;
  const Vec x = v.vec();
  for (int r = 0; r < 3; ++r) {
    const double ang = 2.0 * kPi * r / 3.0;
    Mat rot(2, 2);
    rot << std::cos(ang), -std::sin(ang), std::sin(ang), std::cos(ang);
    const DualVector w = DualVector::from_vec(rot * x);
    p = p + BivariatePolynomial::chebyshev(std::abs(w.k1), 1) * BivariatePolynomial::chebyshev(std::abs(w.k2), 2);
  }
  p = p * (1.0 / 3.0);
  BivariatePolynomial out;
  for (const auto& [k, c] : p.coeffs()) out.add(k.first, k.second, snap_rational(c));
  out.prune();
  return out;
}

int a2_degree(DualVector v) {
  if (!in_cone(v, Family2D::A2)) throw Error(ErrorCode::NotInCone, "a2_degree: v not in W_A2");
  return 2 * v.k2 + 3 * (v.k1 - v.k2) / 2;
}

std::vector<DualVector> cone_basis(Family2D phi, int max_degree) {
  std::vector<DualVector> out;
  if (phi == Family2D::L) {
    for (int s = 0; s <= max_degree; ++s)
      for (int k1 = s; k1 >= 0; --k1) out.push_back({k1, s - k1});
    return out;
  }
  for (int d = 0; d <= max_degree; ++d) {
    for (int k1c = 0; 3 * k1c <= d; ++k1c) {
      const int rest = d - 3 * k1c;
      if (rest % 2 != 0) continue;
      const int k0 = rest / 2;
      out.push_back({k0 + 2 * k1c, k0});
    }
  }
  return out;
}

double PvExpansion::constant() const { return coeff({0, 0}); }

double PvExpansion::coeff(DualVector v) const {
  for (const auto& t : terms) {
    if (t.v == v) return t.coeff;
  }
  return 0.0;
}

bool PvExpansion::cpsd(double tol) const {
  for (const auto& t : terms) {
    if (!(t.v == DualVector{0, 0}) && t.coeff < -tol) return false;
  }
  return true;
}

PvExpansion expand_in_Pv(const BivariatePolynomial& p, Family2D phi, int max_degree) {
  const auto basis = cone_basis(phi, max_degree);
  std::vector<BivariatePolynomial> polys;
  for (const auto& v : basis) polys.push_back(P_v(v, phi));

  // Gauss-Chebyshev nodes in each variable; the P_v are orthogonal for this product measure.
  const int n = 64;
  std::vector<double> nodes(n);
  for (int i = 0; i < n; ++i) nodes[i] = std::cos(kPi * (i + 0.5) / n);
  Mat A(n * n, static_cast<int>(basis.size()));
  Vec b(n * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const int row = i * n + j;
      b(row) = p(nodes[i], nodes[j]);
      for (std::size_t c = 0; c < polys.size(); ++c) A(row, static_cast<int>(c)) = polys[c](nodes[i], nodes[j]);
    }
  }
  Vec sol = A.colPivHouseholderQr().solve(b);

  double scale = 0.0;
  for (const auto& [k, v] : p.coeffs()) scale = std::max(scale, std::abs(v));
  PvExpansion out;
  out.phi = phi;
  for (std::size_t c = 0; c < basis.size(); ++c) {
    double v = sol(static_cast<int>(c));
    if (std::abs(v) < 1e-12 * scale) continue;
    out.terms.push_back({basis[c], v});
  }
  double res = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double t1 = -1.0 + 2.0 * i / (n - 1);
      const double t2 = -1.0 + 2.0 * j / (n - 1);
      double g = 0.0;
      for (std::size_t c = 0; c < basis.size(); ++c) g += sol(static_cast<int>(c)) * polys[c](t1, t2);
      res = std::max(res, std::abs(g - p(t1, t2)));
    }
  }
  out.residual = res;
  if (res > 1e-9 * std::max(scale, 1e-300)) throw Error(ErrorCode::NotInSpan, "polynomial is not in the span of P_v (residual " + std::to_string(res) + ")");
  return out;
}

Vec T_map(const Vec& x) {
  Vec t(2);
  t << std::cos(2.0 * kPi * x(0)), std::cos(2.0 * kPi * x(1) / kSqrt3);
  return t;
}

}  // namespace plp
