#include "plp/enclosures.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace plp {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();
const double kPi2 = kPi * kPi;
const double kSqrt3 = std::sqrt(3.0);

double x_of(double t) { return std::acos(std::clamp(t, -1.0, 1.0)) / (2.0 * kPi); }

std::vector<EnclosureSpec> build_registry() {
  using C = Convention;
  using E = EnclosureId;
  const double S = kPi2;
  const double L = kLargeA;
  return {
      {E::SmallF1Value, "small_f1_value", C::Small, 1, 0, 0.0, S, -1, 1, {}},
      {E::SmallF2Value, "small_f2_value", C::Small, 2, 0, 0.0, S, -1, 1, {}},
      {E::SmallF1DerivPm1, "small_f1_deriv_pm1", C::Small, 1, 1, 0.0, S, -1, 1, {-1.0, 1.0}},
      {E::SmallF2Deriv, "small_f2_deriv", C::Small, 2, 1, 0.0, S, -1, 1, {-1.0, -0.5, 0.5, 1.0}},
      {E::SmallF2Second, "small_f2_second", C::Small, 2, 2, 0.0, S, -1, 1, {-0.5, 0.5}},
      {E::LargeF1Value, "large_f1_value", C::Rescaled, 1, 0, L, kInf, -1, 1, {}},
      {E::LargeF1ValueSeries, "large_f1_value_series", C::Rescaled, 1, 0, L, kInf, -1, 1, {}},
      {E::LargeF2Value, "large_f2_value", C::Rescaled, 2, 0, L, kInf, -0.5, 1, {}},
      {E::LargeF1At1, "large_f1_at1", C::Rescaled, 1, 0, L, kInf, 1, 1, {1.0}},
      {E::LargeF2At1, "large_f2_at1", C::Rescaled, 2, 0, L, kInf, 1, 1, {1.0}},
      {E::LargeF1AtM1, "large_f1_atm1", C::Rescaled, 1, 0, L, kInf, -1, -1, {-1.0}},
      {E::LargeF2AtM1, "large_f2_atm1", C::Rescaled, 2, 0, L, kInf, -1, -1, {-1.0}},
      {E::LargeF1Deriv, "large_f1_deriv", C::Rescaled, 1, 1, L, kInf, -0.999999, 0.999999, {}},
      {E::LargeF2Deriv, "large_f2_deriv", C::Rescaled, 2, 1, L, kInf, -0.5, 0.5, {}},
      {E::LargeF2DerivHalf, "large_f2_deriv_half", C::Rescaled, 2, 1, L, kInf, 0.5, 0.5, {0.5}},
      {E::LargeF2DerivMHalf, "large_f2_deriv_mhalf", C::Rescaled, 2, 1, L, kInf, -0.5, -0.5, {-0.5}},
      {E::LargeF1DerivM1, "large_f1_deriv_m1", C::Rescaled, 1, 1, L, kInf, -1, -1, {-1.0}},
      {E::LargeF1Deriv1, "large_f1_deriv_1", C::Rescaled, 1, 1, L, kInf, 1, 1, {1.0}},
      {E::LargeF1Deriv1A21, "large_f1_deriv_1_a21", C::Rescaled, 1, 1, 21.0, kInf, 1, 1, {1.0}},
      {E::LargeF2SecondHalf, "large_f2_second_half", C::Rescaled, 2, 2, L, kInf, 0.5, 0.5, {0.5}},
      {E::LargeF2SecondMHalf, "large_f2_second_mhalf", C::Rescaled, 2, 2, L, kInf, -0.5, -0.5, {-0.5}},
  };
}

// k = 0 term of the dual-series derivative: m a y e^{-m a y^2} / (pi sin 2 pi y), m = 1 or 3.
double lead_deriv(double a, double m, double y) {
  return m * a * y * std::exp(-m * a * y * y) / (kPi * std::sin(2.0 * kPi * y));
}

}  // namespace

const std::vector<EnclosureSpec>& enclosure_registry() {
  static const std::vector<EnclosureSpec> reg = build_registry();
  return reg;
}

const EnclosureSpec& enclosure_spec(EnclosureId id) {
  for (const auto& s : enclosure_registry()) {
    if (s.id == id) return s;
  }
  throw Error(ErrorCode::InvalidArgument, "unknown enclosure id");
}

EnclosureId enclosure_id(const std::string& name) {
  for (const auto& s : enclosure_registry()) {
    if (name == s.name) return s.id;
  }
  throw Error(ErrorCode::InvalidArgument, "unknown enclosure: " + name);
}

bool enclosure_admits(const EnclosureSpec& spec, double a, double t) {
  if (!(a > spec.a_min || (spec.a_min > 0 && a == spec.a_min)) || a > spec.a_max) return false;
  if (!spec.points.empty()) {
    for (double p : spec.points) {
      if (t == p) return true;
    }
    return false;
  }
  return t >= spec.t_lo && t <= spec.t_hi;
}

double small_truncation(double a, int which, int K, double t, int order) {
  const double d = kPi2 / a / (which == 1 ? 1.0 : 3.0);
  double s = order == 0 ? 1.0 : 0.0;
  for (int k = 1; k <= K; ++k) s += 2.0 * std::exp(-d * k * k) * chebyshev_t(k, t, order);
  return s;
}

Interval enclosure(EnclosureId id, double a, double t) {
  const EnclosureSpec& spec = enclosure_spec(id);
  if (!enclosure_admits(spec, a, t)) {
    throw Error(ErrorCode::OutOfHypothesis, std::string("enclosure ") + spec.name +
                                                 ": (a, t) outside hypothesis");
  }
  const double d = kPi2 / a;
  const double eps = kEps;
  using E = EnclosureId;
  switch (id) {
    case E::SmallF1Value: {
      const double v = small_truncation(a, 1, 2, t, 0);
      const double r = std::exp(-4.0 * d) / 50.0;
      return {v - r, v + r};
    }
    case E::SmallF2Value: {
      const double v = small_truncation(a, 2, 4, t, 0);
      const double r = std::exp(-16.0 * d / 3.0) / 5.0;
      return {v - r, v + r};
    }
    case E::SmallF1DerivPm1: {
      const double v = small_truncation(a, 1, 2, t, 1);
      const double r = std::exp(-4.0 * d) / 8.0;
      return {v - r, v + r};
    }
    case E::SmallF2Deriv: {
      const double v = small_truncation(a, 2, 5, t, 1);
      const double r = 4.0 * std::exp(-25.0 * d / 3.0);
      return {v - r, v + r};
    }
    case E::SmallF2Second: {
      const double v = small_truncation(a, 2, 5, t, 2);
      const double r = 5.0 * std::exp(-25.0 * d / 3.0);
      return {v - r, v + r};
    }
    case E::LargeF1Value: {
      const double x = x_of(t);
      const double g = std::exp(-a * x * x);
      return {g + std::exp(-a * (x - 1) * (x - 1)), (1 + eps) * g * (1 + std::exp(-a * (1 - 2 * x)))};
    }
    case E::LargeF1ValueSeries: {
      const double x = x_of(t);
      const double g = std::exp(-a * x * x);
      double s = 0.0;
      for (int n = 1; n < 1000; ++n) {
        const double term = std::exp(-a * (n * n - 2.0 * n * x));
        s += term;
        if (term < 1e-18 * s) break;
      }
      return {g, g * (1 + 2 * s)};
    }
    case E::LargeF2Value: {
      const double u = x_of(t);
      const double g = std::exp(-3 * a * u * u);
      return {g, (1 + eps) * g};
    }
    case E::LargeF1At1:
    case E::LargeF2At1:
      return {1.0, 1.0 + eps};
    case E::LargeF1AtM1:
      return {2 * std::exp(-a / 4), 2 * (1 + eps) * std::exp(-a / 4)};
    case E::LargeF2AtM1:
      return {2 * std::exp(-3 * a / 4), 2 * (1 + eps) * std::exp(-3 * a / 4)};
    case E::LargeF1Deriv: {
      const double x = x_of(t);
      const double s = kPi * std::sin(2 * kPi * x);
      const double g = a * std::exp(-a * x * x);
      return {g * (x - (1 - x) * std::exp(-a * (1 - 2 * x))) / s, g * x / s};
    }
    case E::LargeF2Deriv: {
      const double u = x_of(t);
      const double lead = lead_deriv(a, 3.0, u);
      return {lead * (1 - eps), lead};
    }
    case E::LargeF2DerivHalf: {
      const double lead = a * std::exp(-a / 12) / (kSqrt3 * kPi);
      return {(1 - eps) * lead, lead};
    }
    case E::LargeF2DerivMHalf: {
      const double lead = 2 * a * std::exp(-a / 3) / (kSqrt3 * kPi);
      return {(1 - eps) * lead, lead};
    }
    case E::LargeF1DerivM1: {
      const double f = a * std::exp(-a / 4) / (2 * kPi2);
      return {f * (a - 2), f * (a - 2 + eps)};
    }
    case E::LargeF1Deriv1:
      return {(1 - kEps2) * a / (2 * kPi2), a / (2 * kPi2)};
    case E::LargeF1Deriv1A21:
      return {(1 - eps) * a / (2 * kPi2), a / (2 * kPi2)};
    case E::LargeF2SecondHalf:
      return {4 * a / kPi2 * std::exp(-a / 12) * (-0.5 + kPi / (6 * kSqrt3) + a / 12), kInf};
    case E::LargeF2SecondMHalf:
      return {-kInf, 4 * a / kPi2 * std::exp(-a / 3) * (0.5 - kPi / (3 * kSqrt3) + a / 3)};
  }
  throw Error(ErrorCode::InvalidArgument, "unhandled enclosure");
}

}  // namespace plp
