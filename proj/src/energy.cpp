#include "plp/energy.hpp"

#include <cmath>
#include <numbers>

namespace plp {

namespace {

constexpr double kPi = std::numbers::pi;
const double kSqrt3 = std::sqrt(3.0);

struct Kahan {
  double sum = 0.0;
  double c = 0.0;
  void add(double x) {
    const double y = x - c;
    const double t = sum + y;
    c = (t - sum) - y;
    sum = t;
  }
};

bool same_point_set(const Lattice& x, const Lattice& y) {
  if (x.dim() != 2 || y.dim() != 2) return false;
  try {
    const IMat w = sublattice_matrix(x, y);
    return std::llround(std::abs(w.cast<double>().determinant())) == 1;
  } catch (const Error&) {
    return false;
  }
}

// Upper bound for sum_{v in lat, |x+v| >= r} e^{-a|x+v|^2}, counting lattice points
// in unit-width shells via the area of the shell dilated by the cell diameter.
double shell_tail(double a, double r, double cell_diam, double covol) {
  double total = 0.0;
  for (int k = 0; k < 100000; ++k) {
    const double lo = r + k;
    const double outer = lo + 1.0 + cell_diam;
    const double inner = std::max(0.0, lo - cell_diam);
    const double term = kPi * (outer * outer - inner * inner) / covol * std::exp(-a * lo * lo);
    total += term;
    if (term < 1e-30 * total || term == 0.0) break;
  }
  return total;
}

Vec reduce_floor(const Vec& x, const Lattice& lat) {
  Vec k = lat.coords(x);
  for (int i = 0; i < k.size(); ++i) k(i) -= std::floor(k(i));
  return lat.point(k);
}

template <class Fn>
void for_each_shifted(const Lattice& lat, const Vec& x, double radius, bool skip_zero, Fn&& fn) {
  const Mat& inv = lat.inverse();
  const double reach = radius + x.norm();
  const int d = lat.dim();
  std::vector<long> bound(d);
  for (int i = 0; i < d; ++i) bound[i] = static_cast<long>(std::ceil(inv.row(i).norm() * reach)) + 1;
  std::vector<long> k(d);
  for (int i = 0; i < d; ++i) k[i] = -bound[i];
  const double r2 = radius * radius;
  Vec kv(d);
  while (true) {
    bool zero = true;
    for (int i = 0; i < d; ++i) {
      kv(i) = static_cast<double>(k[i]);
      zero = zero && k[i] == 0;
    }
    if (!(skip_zero && zero)) {
      const Vec y = x + lat.point(kv);
      if (y.squaredNorm() <= r2) fn(y);
    }
    int i = 0;
    while (i < d && ++k[i] > bound[i]) {
      k[i] = -bound[i];
      ++i;
    }
    if (i == d) break;
  }
}

double cell_diameter(const Lattice& lat) {
  double s = 0.0;
  for (int i = 0; i < lat.dim(); ++i) s += lat.generator().col(i).norm();
  return s;
}

double choose_radius(double a, const Lattice& lat, double target) {
  const double diam = cell_diameter(lat);
  double r = diam;
  const double step = 0.25 / std::sqrt(a) + 1e-3;
  while (shell_tail(a, r, diam, lat.covolume()) >= target) r += step;
  return r;
}

}  // namespace

std::optional<Family2D> detect_family(const Lattice& lat) {
  if (lat.dim() != 2) return std::nullopt;
  if (same_point_set(lat, Lattice::a2())) return Family2D::A2;
  if (same_point_set(lat, Lattice::rect_l())) return Family2D::L;
  return std::nullopt;
}

GaussianPotential::GaussianPotential(double a, Lattice lattice) : a_(a), lat_(std::move(lattice)) {
  if (!(a > 0.0) || !std::isfinite(a)) throw Error(ErrorCode::InvalidArgument, "GaussianPotential: a must be positive");
  const double rho = cell_diameter(lat_) / 2.0;
  min_value_ = std::max(std::exp(-a_ * rho * rho), 1e-280);
  radius_ = choose_radius(a_, lat_, 1e-17 * min_value_);
  family_ = detect_family(lat_);
}

double GaussianPotential::direct(const Vec& x) const {
  if (x.size() != lat_.dim()) throw Error(ErrorCode::InvalidArgument, "F: dimension mismatch");
  Kahan s;
  for_each_shifted(lat_, reduce_floor(x, lat_), radius_, false,
                   [&](const Vec& y) { s.add(std::exp(-a_ * y.squaredNorm())); });
  return s.sum;
}

Vec GaussianPotential::direct_gradient(const Vec& x) const {
  Vec g = Vec::Zero(lat_.dim());
  for_each_shifted(lat_, reduce_floor(x, lat_), radius_, false,
                   [&](const Vec& y) { g += -2.0 * a_ * std::exp(-a_ * y.squaredNorm()) * y; });
  return g;
}

double GaussianPotential::operator()(const Vec& x) const {
  if (family_) return F_theta(x, a_, *family_);
  return direct(x);
}

double GaussianPotential::value_and_gradient(const Vec& x, Vec& grad) const {
  if (family_) return F_theta(x, a_, *family_, &grad);
  grad = direct_gradient(x);
  return direct(x);
}

double F(const Vec& x, const GaussianPotential& pot) { return pot.direct(x); }

double F_theta(const Vec& x, double a, Family2D phi, Vec* grad) {
  if (x.size() != 2) throw Error(ErrorCode::InvalidArgument, "F_theta: x must be 2-D");
  if (!(a > 0.0)) throw Error(ErrorCode::InvalidArgument, "F_theta: a must be positive");
  const double c1 = kPi / a;
  const double c2 = kPi / (3.0 * a);
  const double scale = kPi / (kSqrt3 * a);
  auto fl = [&](double x1, double x2, double& g1, double& g2) {
    const ThetaVG u = theta_vg(c1, x1);
    const ThetaVG w = theta_vg(c2, x2 / kSqrt3);
    g1 = scale * u.dx * w.value;
    g2 = scale * u.value * w.dx / kSqrt3;
    return scale * u.value * w.value;
  };
  double g1 = 0, g2 = 0;
  double v = fl(x(0), x(1), g1, g2);
  if (phi == Family2D::A2) {
    double h1 = 0, h2 = 0;
    v += fl(x(0) + 0.5, x(1) + kSqrt3 / 2.0, h1, h2);
    g1 += h1;
    g2 += h2;
  }
  if (grad) {
    grad->resize(2);
    (*grad) << g1, g2;
  }
  return v;
}

double tilde_F(double t1, double t2, double a, Family2D phi) {
  if (std::abs(t1) > 1.0 || std::abs(t2) > 1.0) throw Error(ErrorCode::InvalidArgument, "tilde_F: t outside [-1,1]^2");
  FPair fp(a);
  return fp.scale() * (phi == Family2D::A2 ? fp.FA2(t1, t2) : fp.FL(t1, t2));
}

double periodic_energy(const Configuration& omega, const GaussianPotential& pot) {
  const std::size_t n = omega.size();
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "periodic_energy: need at least 2 points");
  Kahan s;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) s.add(pot(omega.points[i] - omega.points[j]));
  return s.sum;
}

double lp_bound(const PvExpansion& g, int n, double scale) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "lp_bound: n must be positive");
  if (!g.cpsd()) throw Error(ErrorCode::NotCPSD, "lp_bound: expansion has a negative non-constant coefficient");
  double at_one = 0.0;
  for (const auto& t : g.terms) at_one += t.coeff;
  const double nn = static_cast<double>(n);
  return scale * (nn * nn * g.constant() - nn * at_one);
}

double lattice_gaussian_sum(const Lattice& lat, double a) {
  GaussianPotential pot(a, lat);
  Kahan s;
  for_each_shifted(lat, Vec::Zero(lat.dim()), pot.truncation_radius(), true,
                   [&](const Vec& y) { s.add(std::exp(-a * y.squaredNorm())); });
  return s.sum;
}

double average_energy(const Configuration& omega, double a) {
  const double n = static_cast<double>(omega.size());
  if (omega.size() == 0) throw Error(ErrorCode::InvalidArgument, "average_energy: empty configuration");
  const double self = lattice_gaussian_sum(omega.ambient, a);
  if (omega.size() == 1) return self;
  GaussianPotential pot(a, omega.ambient);
  return (periodic_energy(omega, pot) + n * self) / n;
}

}  // namespace plp
