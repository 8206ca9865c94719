#pragma once

#include <string>
#include <vector>

#include "plp/theta.hpp"

namespace plp {

struct Interval {
  double lo;
  double hi;
  bool contains(double v) const { return lo <= v && v <= hi; }
};

// Closed-form bounds on f1, f2 and their t-derivatives.  Small-a entries use the
// Small convention with d = pi^2/a >= 1; large-a entries use the Rescaled convention.
// One-sided bounds report -inf/+inf on the missing side.
enum class EnclosureId {
  SmallF1Value,
  SmallF2Value,
  SmallF1DerivPm1,
  SmallF2Deriv,
  SmallF2Second,
  LargeF1Value,
  LargeF1ValueSeries,
  LargeF2Value,
  LargeF1At1,
  LargeF2At1,
  LargeF1AtM1,
  LargeF2AtM1,
  LargeF1Deriv,
  LargeF2Deriv,
  LargeF2DerivHalf,
  LargeF2DerivMHalf,
  LargeF1DerivM1,
  LargeF1Deriv1,
  LargeF1Deriv1A21,
  LargeF2SecondHalf,
  LargeF2SecondMHalf,
};

struct EnclosureSpec {
  EnclosureId id;
  const char* name;
  Convention convention;
  int which;  // f1 or f2
  int order;  // t-derivative order
  double a_min;
  double a_max;
  double t_lo;
  double t_hi;
  std::vector<double> points;  // nonempty: only these t are admissible
};

const std::vector<EnclosureSpec>& enclosure_registry();
const EnclosureSpec& enclosure_spec(EnclosureId id);
EnclosureId enclosure_id(const std::string& name);

bool enclosure_admits(const EnclosureSpec& spec, double a, double t);

// Throws OutOfHypothesis when (a, t) is outside the bound's hypothesis.
Interval enclosure(EnclosureId id, double a, double t);

// 1 + sum_{k<=K} 2 e^{-d k^2 / div} T_k^{(order)}(t) with d = pi^2/a (the small-a truncations).
double small_truncation(double a, int which, int K, double t, int order);

}  // namespace plp
