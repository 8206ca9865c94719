#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "plp/interpolants.hpp"

namespace plp {

using Fn1 = std::function<double(double)>;
using Fn2 = std::function<double(double, double)>;

struct Region {
  enum class Kind { Rectangle, TriangleA2 };
  Kind kind = Kind::Rectangle;
  Rect rect{-1, 1, -1, 1};

  static Region rectangle(double t1lo, double t1hi, double t2lo, double t2hi);
  // T-image of {0 <= x1 <= 1/2, 0 <= x2 <= x1/sqrt3}.
  static Region triangle_a2();
  bool contains(double t1, double t2) const;
  Rect bounding_box() const;
};

struct CheckReport {
  std::string name;
  bool passed = true;
  double min_margin = 0.0;
  std::pair<double, double> worst_point{0.0, 0.0};
  long points_evaluated = 0;
  double a_lo = 0.0;
  double a_hi = 0.0;
  double tolerance = 0.0;
  bool strict = false;  // passed <=> min_margin > tolerance, else min_margin >= -tolerance
  int n_used = 0;       // partition size for monotone checks
  std::string detail;
  std::vector<CheckReport> children;

  void settle();  // sets passed from min_margin
  void absorb(CheckReport child);
};

inline constexpr double kGridTol = 1e-12;
inline constexpr double kNodeTol = 1e-9;
inline constexpr double kNodeRadius = 1e-6;

// min over the grid of F - g; near equality nodes |F - g| <= 1e-9 is required instead.
// n_grid <= 0 picks 300 for rectangles and 400 for the triangle's bounding box.
CheckReport grid_dominate(const Fn2& F, const Fn2& g, const Region& region, int n_grid = 0,
                          const std::vector<std::pair<double, double>>& equality_nodes = {},
                          const std::string& name = "grid_dominate");

// Fixed n: h1(alpha + k delta) < h2(alpha + (k-1) delta), k = 1..n.  Throws MonotonicitySpotCheck
// when either function fails a 20-point monotonicity spot test.
CheckReport monotone_point_check(const Fn1& h1, const Fn1& h2, double alpha, double beta, int n,
                                 const std::string& name = "linecheck");
// Doubles n from n0 until pass or n = 2^16.
CheckReport monotone_point_check_adaptive(const Fn1& h1, const Fn1& h2, double alpha, double beta,
                                          const std::string& name = "linecheck", int n0 = 16);

struct Segment {
  double t1a, t2a, t1b, t2b;  // axis aligned
};

// F_T = sum_i e^{-a Q_i(t1,t2)}.
struct LinearizationSpec {
  std::string name;
  InterpCase kind;
  double c, d;
  Rect rect;
  double a_prime;
  std::vector<Segment> segments;
  std::vector<Fn2> Q;
};

// Q_i for the truncated lower bounds of F in the two cases.
std::vector<Fn2> truncation_exponents(InterpCase kind);

CheckReport linearization_check(const LinearizationSpec& spec);

// h(d) = sum_i a_i e^{c_i d}; certifies h > 0 on [1, inf) via h(1) > 0.
// Throws SignPattern unless c_i strictly increase and the a_i are nonpositive then nonnegative.
CheckReport exp_positivity(const std::vector<std::pair<double, double>>& terms, const std::string& name = "exp_positivity");

enum class ConvexKind { Linear, QuadraticConvex, ConvexVerified };

// expr(a') >= 0 and expr'(a') >= 0 with convexity (declared, spot-checked) certify expr >= 0 on [a', inf).
CheckReport convexity_reduction(const Fn1& expr, double a_prime, ConvexKind kind,
                                const std::string& name = "convexity_reduction");

struct CertificateInfo {
  std::string id;
  std::string lemma;
  double a_lo;
  double a_hi;  // inf for unbounded
  bool lo_open;
  std::vector<double> default_samples;
  InterpCase kind;
};

const std::vector<CertificateInfo>& certificate_registry();
const CertificateInfo& certificate_info(const std::string& id);

// Runs the proof steps and a dense numeric confirmation of the target at each sample.
// Throws OutOfRange for samples outside the declared range; empty samples use the defaults.
CheckReport run_certificate(const std::string& id, const std::vector<double>& a_samples = {});

struct CaseRow {
  std::string case_name;
  double a;
  CheckReport report;
};

// For each a: domination of the magic interpolant, LP sharpness, and every certificate of the
// case whose range contains a (run at that single sample).
std::vector<CaseRow> verify_case(InterpCase kind, const std::vector<double>& a_grid);

}  // namespace plp
