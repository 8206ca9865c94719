#include "plp/moments.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace plp {

namespace {

constexpr double kPi = std::numbers::pi;
const double kSqrt3 = std::sqrt(3.0);

void require_m(int m) {
  if (m < 1) throw Error(ErrorCode::InvalidArgument, "m must be >= 1");
}

// Membership of an L*-vector in Lambda* for Lambda in {A2, hex}.
bool in_lambda_dual(int k1, int k2, NodeFamily f) {
  if ((k1 - k2) % 2 != 0) return false;
  if (f == NodeFamily::ThreeM2 || f == NodeFamily::SixM2) return k2 % 3 == 0;
  return true;
}

}  // namespace

std::complex<double> moment(const Vec& v, const Configuration& omega) {
  std::complex<double> s = 0.0;
  for (const auto& x : omega.points) s += std::polar(1.0, 2.0 * kPi * v.dot(x));
  return s;
}

int structured_moment(const Lattice& phi, const Lattice& lambda, const Vec& v) {
  const IMat w = sublattice_matrix(phi, lambda);
  if (!dual(phi).contains(v)) throw Error(ErrorCode::NotInDual, "structured_moment: v not in Phi*");
  const int kappa = static_cast<int>(std::llround(std::abs(w.cast<double>().determinant())));
  return dual(lambda).contains(v) ? kappa : 0;
}

NodeFamily node_family_from_name(const std::string& name) {
  if (name == "m2") return NodeFamily::M2;
  if (name == "2m2") return NodeFamily::TwoM2;
  if (name == "3m2") return NodeFamily::ThreeM2;
  if (name == "6m2") return NodeFamily::SixM2;
  throw Error(ErrorCode::InvalidArgument, "unknown family " + name + " (expected m2, 2m2, 3m2, 6m2)");
}

const char* node_family_name(NodeFamily f) {
  switch (f) {
    case NodeFamily::M2: return "m2";
    case NodeFamily::TwoM2: return "2m2";
    case NodeFamily::ThreeM2: return "3m2";
    case NodeFamily::SixM2: return "6m2";
  }
  return "?";
}

Lattice hex_lattice() { return Lattice::a2().rotated(kPi / 6).scaled(1.0 / kSqrt3); }

FamilyLattices family_lattices(NodeFamily f) {
  switch (f) {
    case NodeFamily::M2: return {Lattice::a2(), Lattice::a2(), Family2D::A2, 1};
    case NodeFamily::TwoM2: return {Lattice::rect_l(), Lattice::a2(), Family2D::L, 2};
    case NodeFamily::ThreeM2: return {Lattice::a2(), hex_lattice(), Family2D::A2, 3};
    case NodeFamily::SixM2: return {Lattice::rect_l(), hex_lattice(), Family2D::L, 6};
  }
  throw Error(ErrorCode::InvalidArgument, "bad family");
}

Configuration family_configuration(NodeFamily f, int m) {
  require_m(m);
  const auto fl = family_lattices(f);
  return coset_representatives(fl.phi, fl.lambda.scaled(1.0 / m));
}

MomentIndexSet::MomentIndexSet(NodeFamily f, int m) : family_(f), m_(m), phi_(family_lattices(f).phi_kind) {
  require_m(m);
}

bool MomentIndexSet::contains(DualVector v) const {
  if (!in_cone(v, phi_)) return false;
  if (v.k1 % m_ != 0 || v.k2 % m_ != 0) return true;
  return !in_lambda_dual(v.k1 / m_, v.k2 / m_, family_);
}

std::vector<DualVector> MomentIndexSet::enumerate(int bound) const {
  std::vector<DualVector> out;
  for (int k1 = 0; k1 <= bound; ++k1) {
    for (int k2 = 0; k2 <= bound; ++k2) {
      if (contains({k1, k2})) out.push_back({k1, k2});
    }
  }
  return out;
}

MomentIndexSet index_set(NodeFamily f, int m) { return MomentIndexSet(f, m); }

NodeSet node_set(NodeFamily f, int m) {
  require_m(m);
  NodeSet ns{f, m, {}, {}};
  auto push = [&](int k1, int k2, int den2) {
    // t1 = cos(pi k1 / m), t2 = cos(pi k2 / den2); x1 = k1/(2m), x2 = sqrt3 k2/(2 den2).
    const double t1 = std::cos(kPi * k1 / m);
    const double t2 = std::cos(kPi * k2 / den2);
    for (const auto& [a, b] : ns.nodes) {
      if (std::abs(a - t1) < 1e-12 && std::abs(b - t2) < 1e-12) return;
    }
    ns.nodes.emplace_back(t1, t2);
    Vec x(2);
    x << k1 / (2.0 * m), kSqrt3 * k2 / (2.0 * den2);
    ns.preimages.push_back(x);
  };
  switch (f) {
    case NodeFamily::M2:
      for (int k1 = 0; k1 <= m; ++k1)
        for (int k2 = 0; 3 * k2 <= k1; ++k2)
          if ((k1 - k2) % 2 == 0) push(k1, k2, m);
      break;
    case NodeFamily::TwoM2:
      for (int k1 = 0; k1 <= m; ++k1)
        for (int k2 = 0; k2 <= m; ++k2)
          if ((k1 - k2) % 2 == 0) push(k1, k2, m);
      break;
    case NodeFamily::ThreeM2:
      for (int k1 = 0; k1 <= m; ++k1)
        for (int k2 = 0; k2 <= k1; ++k2)
          if ((k1 - k2) % 2 == 0) push(k1, k2, 3 * m);
      break;
    case NodeFamily::SixM2:
      for (int k1 = 0; k1 <= m; ++k1)
        for (int k2 = 0; k2 <= 3 * m; ++k2)
          if ((k1 - k2) % 2 == 0) push(k1, k2, 3 * m);
      break;
  }
  return ns;
}

}  // namespace plp
