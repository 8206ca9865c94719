#pragma once

#include <Eigen/Dense>
#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "plp/error.hpp"

namespace plp {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using IMat = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;

// Columns of the generator are the basis vectors.
class Lattice {
 public:
  explicit Lattice(Mat generator);

  static Lattice named(const std::string& key);  // "A2", "L", "Z", "Z2", "rect:a1,a2"
  static Lattice a2() { return named("A2"); }
  static Lattice rect_l() { return named("L"); }

  int dim() const { return static_cast<int>(v_.rows()); }
  const Mat& generator() const { return v_; }
  const Mat& inverse() const { return vinv_; }
  double covolume() const { return covol_; }

  Lattice scaled(double s) const { return Lattice(v_ * s); }
  Lattice rotated(double angle) const;
  Vec point(const Vec& coords) const { return v_ * coords; }
  Vec coords(const Vec& x) const { return vinv_ * x; }
  bool contains(const Vec& x, double tol = 1e-9) const;

 private:
  Mat v_;
  Mat vinv_;
  double covol_;
};

Lattice dual(const Lattice& lat);

struct SmithDecomposition {
  IMat source;
  IMat S;
  IMat D;
  IMat T;
};

SmithDecomposition smith_normal_form(const IMat& w);

// Integer matrix W with V_phi = V_lambda * W, or NotSublattice.
IMat sublattice_matrix(const Lattice& phi, const Lattice& lambda);

struct PointGroup {
  std::vector<Mat> elements;
  std::size_t order() const { return elements.size(); }
};

// "A2", "L", "rect" (dimension d), "Zd" (dimension d).
PointGroup point_group(const std::string& name, int d = 2);

struct Configuration {
  std::vector<Vec> points;
  Lattice ambient;
  std::size_t size() const { return points.size(); }
};

Vec reduce(const Vec& x, const Lattice& lat);
Configuration make_configuration(std::vector<Vec> pts, const Lattice& ambient);

Configuration coset_representatives(const Lattice& phi, const Lattice& lambda);

// The named optimal configurations: omega(Phi, Lambda) for the families used in the tests.
Configuration omega_star(int n);

// Gram matrix in Hermite-reduced form, used for comparing lattices up to unimodular change of basis.
Mat reduced_gram(const Lattice& lat);

}  // namespace plp
