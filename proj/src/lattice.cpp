#include "plp/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace plp {

namespace {

constexpr double kSnap = 1e-12;

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw Error(ErrorCode::Overflow, "integer overflow in Smith normal form");
  return r;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw Error(ErrorCode::Overflow, "integer overflow in Smith normal form");
  return r;
}

std::int64_t floordiv(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

// Invariant maintained throughout: source == S * W * T.
struct SnfState {
  IMat W, S, T;
  int n;

  // row i += k * row j
  void row_add(int i, int j, std::int64_t k) {
    if (k == 0) return;
    for (int c = 0; c < n; ++c) W(i, c) = checked_add(W(i, c), checked_mul(k, W(j, c)));
    for (int r = 0; r < n; ++r) S(r, j) = checked_add(S(r, j), checked_mul(-k, S(r, i)));
  }
  // col j += k * col i
  void col_add(int j, int i, std::int64_t k) {
    if (k == 0) return;
    for (int r = 0; r < n; ++r) W(r, j) = checked_add(W(r, j), checked_mul(k, W(r, i)));
    for (int c = 0; c < n; ++c) T(i, c) = checked_add(T(i, c), checked_mul(-k, T(j, c)));
  }
  void row_swap(int i, int j) {
    if (i == j) return;
    W.row(i).swap(W.row(j));
    S.col(i).swap(S.col(j));
  }
  void col_swap(int i, int j) {
    if (i == j) return;
    W.col(i).swap(W.col(j));
    T.row(i).swap(T.row(j));
  }
  void row_negate(int i) {
    W.row(i) *= -1;
    S.col(i) *= -1;
  }
};

}  // namespace

Lattice::Lattice(Mat generator) : v_(std::move(generator)) {
  if (v_.rows() != v_.cols() || v_.rows() == 0) throw Error(ErrorCode::InvalidArgument, "generator must be square");
  double det = v_.determinant();
  if (!(std::abs(det) > 1e-300)) throw Error(ErrorCode::SingularMatrix, "lattice generator is singular");
  vinv_ = v_.inverse();
  covol_ = std::abs(det);
}

Lattice Lattice::named(const std::string& key) {
  const double s3 = std::numbers::sqrt3;
  if (key == "A2") {
    Mat v(2, 2);
    v << 1.0, 0.5, 0.0, s3 / 2;
    return Lattice(v);
  }
  if (key == "L") {
    Mat v(2, 2);
    v << 1.0, 0.0, 0.0, s3;
    return Lattice(v);
  }
  if (key == "Z") return Lattice(Mat::Identity(1, 1));
  if (key.size() == 2 && key[0] == 'Z' && key[1] >= '1' && key[1] <= '4') return Lattice(Mat::Identity(key[1] - '0', key[1] - '0'));
  if (key.rfind("rect:", 0) == 0) {
    std::vector<double> sides;
    std::stringstream ss(key.substr(5));
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      try {
        sides.push_back(std::stod(tok));
      } catch (const std::exception&) {
        throw Error(ErrorCode::UnsupportedLattice, "bad rect side '" + tok + "'");
      }
    }
    if (sides.empty() || sides.size() > 4) throw Error(ErrorCode::UnsupportedLattice, "rect needs 1..4 sides");
    Mat v = Mat::Zero(sides.size(), sides.size());
    for (std::size_t i = 0; i < sides.size(); ++i) v(i, i) = sides[i];
    return Lattice(v);
  }
  throw Error(ErrorCode::UnsupportedLattice, "unknown lattice '" + key + "'");
}

Lattice Lattice::rotated(double angle) const {
  if (dim() != 2) throw Error(ErrorCode::InvalidArgument, "rotation only in dimension 2");
  Mat r(2, 2);
  r << std::cos(angle), -std::sin(angle), std::sin(angle), std::cos(angle);
  return Lattice(r * v_);
}

bool Lattice::contains(const Vec& x, double tol) const {
  Vec k = coords(x);
  for (int i = 0; i < k.size(); ++i)
    if (std::abs(k(i) - std::round(k(i))) > tol) return false;
  return true;
}

Lattice dual(const Lattice& lat) { return Lattice(lat.inverse().transpose()); }

SmithDecomposition smith_normal_form(const IMat& w) {
  const int n = static_cast<int>(w.rows());
  if (w.cols() != n || n == 0) throw Error(ErrorCode::InvalidArgument, "Smith normal form needs a square matrix");
  if (std::llround(w.cast<double>().determinant()) == 0 && w.cast<double>().fullPivLu().rank() < n)
    throw Error(ErrorCode::SingularMatrix, "Smith normal form of a singular matrix");
  SnfState st{w, IMat::Identity(n, n), IMat::Identity(n, n), n};

  for (int p = 0; p < n; ++p) {
    for (;;) {
      // smallest nonzero entry of the trailing block becomes the pivot
      int bi = -1, bj = -1;
      std::int64_t best = 0;
      for (int i = p; i < n; ++i)
        for (int j = p; j < n; ++j) {
          std::int64_t v = st.W(i, j);
          if (v != 0 && (bi < 0 || std::llabs(v) < best)) {
            best = std::llabs(v);
            bi = i;
            bj = j;
          }
        }
      if (bi < 0) throw Error(ErrorCode::SingularMatrix, "Smith normal form of a singular matrix");
      st.row_swap(p, bi);
      st.col_swap(p, bj);
      std::int64_t piv = st.W(p, p);
      bool clean = true;
      for (int i = p + 1; i < n; ++i) {
        st.row_add(i, p, -floordiv(st.W(i, p), piv));
        if (st.W(i, p) != 0) clean = false;
      }
      for (int j = p + 1; j < n; ++j) {
        st.col_add(j, p, -floordiv(st.W(p, j), piv));
        if (st.W(p, j) != 0) clean = false;
      }
      if (!clean) continue;
      int bad = -1;
      for (int i = p + 1; i < n && bad < 0; ++i)
        for (int j = p + 1; j < n; ++j)
          if (st.W(i, j) % piv != 0) {
            bad = i;
            break;
          }
      if (bad < 0) break;
      st.row_add(p, bad, 1);
    }
    if (st.W(p, p) < 0) st.row_negate(p);
  }
  return {w, st.S, st.W, st.T};
}

IMat sublattice_matrix(const Lattice& phi, const Lattice& lambda) {
  if (phi.dim() != lambda.dim()) throw Error(ErrorCode::NotSublattice, "dimension mismatch");
  Mat w = lambda.inverse() * phi.generator();
  IMat out(w.rows(), w.cols());
  for (int i = 0; i < w.rows(); ++i)
    for (int j = 0; j < w.cols(); ++j) {
      double r = std::round(w(i, j));
      if (std::abs(w(i, j) - r) > 1e-9) throw Error(ErrorCode::NotSublattice, "Phi is not a sublattice of Lambda");
      if (std::abs(r) > 2147483647.0) throw Error(ErrorCode::Overflow, "sublattice index too large");
      out(i, j) = static_cast<std::int64_t>(r);
    }
  return out;
}

PointGroup point_group(const std::string& name, int d) {
  PointGroup g;
  if (name == "A2") {
    for (int k = 0; k < 6; ++k) {
      double th = k * std::numbers::pi / 3;
      Mat r(2, 2), f(2, 2);
      r << std::cos(th), -std::sin(th), std::sin(th), std::cos(th);
      f << std::cos(th), std::sin(th), std::sin(th), -std::cos(th);
      g.elements.push_back(r);
      g.elements.push_back(f);
    }
    return g;
  }
  if (name == "L") return point_group("rect", 2);
  if (name == "rect") {
    if (d < 1 || d > 4) throw Error(ErrorCode::UnsupportedLattice, "rect dimension must be 1..4");
    for (int mask = 0; mask < (1 << d); ++mask) {
      Mat m = Mat::Identity(d, d);
      for (int i = 0; i < d; ++i)
        if (mask & (1 << i)) m(i, i) = -1;
      g.elements.push_back(m);
    }
    return g;
  }
  if (name == "Zd" || name == "Z") {
    if (d < 1 || d > 4) throw Error(ErrorCode::UnsupportedLattice, "Zd dimension must be 1..4");
    std::vector<int> perm(d);
    for (int i = 0; i < d; ++i) perm[i] = i;
    do {
      for (int mask = 0; mask < (1 << d); ++mask) {
        Mat m = Mat::Zero(d, d);
        for (int i = 0; i < d; ++i) m(i, perm[i]) = (mask & (1 << i)) ? -1.0 : 1.0;
        g.elements.push_back(m);
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return g;
  }
  throw Error(ErrorCode::UnsupportedLattice, "no point group for '" + name + "'");
}

Vec reduce(const Vec& x, const Lattice& lat) {
  Vec k = lat.coords(x);
  for (int i = 0; i < k.size(); ++i) {
    k(i) -= std::floor(k(i));
    if (k(i) < kSnap || k(i) > 1.0 - kSnap) k(i) = 0.0;
  }
  return lat.point(k);
}

Configuration make_configuration(std::vector<Vec> pts, const Lattice& ambient) {
  for (auto& p : pts) {
    if (p.size() != ambient.dim()) throw Error(ErrorCode::InvalidArgument, "point dimension mismatch");
    p = reduce(p, ambient);
  }
  return Configuration{std::move(pts), ambient};
}

Configuration coset_representatives(const Lattice& phi, const Lattice& lambda) {
  IMat w = sublattice_matrix(phi, lambda);
  SmithDecomposition snf = smith_normal_form(w);
  const int d = phi.dim();
  std::int64_t kappa = 1;
  for (int i = 0; i < d; ++i) {
    kappa *= snf.D(i, i);
    if (kappa > 2147483647) throw Error(ErrorCode::Overflow, "sublattice index too large");
  }
  // Lambda = Vt Z^d and Phi = Vt D Z^d with Vt = V_Lambda S.
  Mat vt = lambda.generator() * snf.S.cast<double>();
  std::vector<Vec> pts;
  pts.reserve(static_cast<std::size_t>(kappa));
  std::vector<std::int64_t> j(d, 0);
  for (std::int64_t idx = 0; idx < kappa; ++idx) {
    Vec jv(d);
    for (int i = 0; i < d; ++i) jv(i) = static_cast<double>(j[i]);
    pts.push_back(vt * jv);
    for (int i = 0; i < d; ++i) {
      if (++j[i] < snf.D(i, i)) break;
      j[i] = 0;
    }
  }
  return make_configuration(std::move(pts), phi);
}

Configuration omega_star(int n) {
  const Lattice a2 = Lattice::a2();
  const Lattice l = Lattice::rect_l();
  const Lattice hex = a2.rotated(std::numbers::pi / 6).scaled(1.0 / std::numbers::sqrt3);
  switch (n) {
    case 1: return coset_representatives(a2, a2);
    case 2: return coset_representatives(l, a2);
    case 3: return coset_representatives(a2, hex);
    case 4: return coset_representatives(a2, a2.scaled(0.5));
    case 6: return coset_representatives(l, hex);
    case 8: return coset_representatives(l, a2.scaled(0.5));
    default: throw Error(ErrorCode::InvalidArgument, "no named optimal configuration for n=" + std::to_string(n));
  }
}

Mat reduced_gram(const Lattice& lat) {
  Mat b = lat.generator();
  const int d = lat.dim();
  bool changed = true;
  for (int iter = 0; changed && iter < 1000; ++iter) {
    changed = false;
    std::vector<int> order(d);
    for (int i = 0; i < d; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](int x, int y) { return b.col(x).squaredNorm() < b.col(y).squaredNorm(); });
    Mat sorted(d, d);
    for (int i = 0; i < d; ++i) sorted.col(i) = b.col(order[i]);
    b = sorted;
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        if (i == j) continue;
        double mu = std::round(b.col(j).dot(b.col(i)) / b.col(i).squaredNorm());
        if (mu != 0.0 && (b.col(j) - mu * b.col(i)).squaredNorm() < b.col(j).squaredNorm() - 1e-12) {
          b.col(j) -= mu * b.col(i);
          changed = true;
        }
      }
  }
  Mat g = b.transpose() * b;
  // fix signs so off-diagonal entries against the first vector are nonpositive
  for (int j = 1; j < d; ++j)
    if (g(0, j) > 1e-12) {
      b.col(j) *= -1;
      g = b.transpose() * b;
    }
  return g;
}

}  // namespace plp
