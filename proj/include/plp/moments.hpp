#pragma once

#include <complex>
#include <string>
#include <utility>
#include <vector>

#include "plp/lattice.hpp"
#include "plp/sympoly.hpp"

namespace plp {

std::complex<double> moment(const Vec& v, const Configuration& omega);

// kappa if v is in Lambda*, 0 otherwise (v must lie in Phi*).
int structured_moment(const Lattice& phi, const Lattice& lambda, const Vec& v);

// The four families omega(Phi, Lambda/m) with kappa = [Lambda : Phi] in {1, 2, 3, 6}.
enum class NodeFamily { M2, TwoM2, ThreeM2, SixM2 };
NodeFamily node_family_from_name(const std::string& name);  // "m2", "2m2", "3m2", "6m2"
const char* node_family_name(NodeFamily f);

struct FamilyLattices {
  Lattice phi;
  Lattice lambda;
  Family2D phi_kind;
  int kappa;
};
FamilyLattices family_lattices(NodeFamily f);
Lattice hex_lattice();  // A2 rotated by pi/6 and scaled by 1/sqrt3
Configuration family_configuration(NodeFamily f, int m);

// W_Phi minus m Lambda*: the cone vectors at which the family's moments vanish.
class MomentIndexSet {
 public:
  MomentIndexSet(NodeFamily f, int m);

  NodeFamily family() const { return family_; }
  int m() const { return m_; }
  bool contains(DualVector v) const;
  // Members with max(|k1|, |k2|) <= bound.
  std::vector<DualVector> enumerate(int bound) const;

 private:
  NodeFamily family_;
  int m_;
  Family2D phi_;
};

MomentIndexSet index_set(NodeFamily f, int m);

struct NodeSet {
  NodeFamily family;
  int m;
  std::vector<std::pair<double, double>> nodes;
  std::vector<Vec> preimages;  // x with T(x) = node, x in (1/m) Lambda within the fundamental domain
};

NodeSet node_set(NodeFamily f, int m);

}  // namespace plp
