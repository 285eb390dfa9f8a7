#pragma once

// Worst-case pinching envelope at normalized scalar curvature R = 1.
//
// With l1,2 = (1 - eta)/4 -+ x and l3,4 = (1 + eta)/4 -+ y, and the largest
// Weyl sectional term the pinching allows,
//   W = (gamma / (2 sqrt 3)) | sqrt(eta^2/4 + 2x^2 + 2y^2) - 1/(2 sqrt 3) |,
// the envelope is
//   I = (1 + eta)(l3^2 + l4^2) - (1 - eta)(l1^2 + l2^2) - 2 eta / 3 - 2 eta W.
// The square root is |Ric0| / R, so the two sign regions of the absolute value
// are exactly the cases |Ric0| >= R/(2 sqrt 3) and |Ric0| < R/(2 sqrt 3).
//
// envelope_value evaluates the expanded form
//   I = eta (3 eta^2 + 1) / 12 + 2 (1 + eta) y^2 - 2 (1 - eta) x^2 - 2 eta W,
// which is algebraically identical and has fewer repeated occurrences of each
// variable, so its interval extension is tighter.

#include <optional>

#include "pinchlab/errors.hpp"
#include "pinchlab/interval.hpp"

namespace pinchlab {

template <typename T>
T envelope_value(const T& eta, const T& x, const T& y, double gamma) {
  using std::abs;
  using std::sqrt;
  const T one(1.0);
  const T two(2.0);
  const T sqrt3 = sqrt(T(3.0));
  const T ricci0 = sqrt(sqr(eta) / T(4.0) + two * sqr(x) + two * sqr(y));
  const T gap = abs(ricci0 - one / (two * sqrt3));
  const T poly = eta * (T(3.0) * sqr(eta) + one) / T(12.0);
  return poly + two * (one + eta) * sqr(y) - two * (one - eta) * sqr(x) - T(gamma) * eta * gap / sqrt3;
}

/// Admissible-domain sub-box, R normalized to 1.
struct Box {
  Interval eta;
  Interval x;
  Interval y;
};

/// Shrinks a box to the bounding box of its intersection with
/// D(eta_lo) = { eta_lo <= eta <= 1, 0 <= x <= (1 - eta)/4, 0 <= y, x + y <= eta/2 }.
/// Returns nullopt when the intersection is empty. Bounds are rounded
/// outward, so no domain point is ever removed.
std::optional<Box> contract_to_domain(const Box& b, double eta_lo);

/// Membership of a point in D(eta_lo), decided rigorously (no slack).
bool in_domain(double eta, double x, double y, double eta_lo);

/// Point envelope with a domain check against D(0) (slack 1e-12 for
/// roundoff on the boundary). Throws DomainViolation.
double envelope_I(double eta, double x, double y, double gamma);

/// Interval enclosure over a box; throws DomainViolation when the box lies
/// wholly outside D(0). The box itself is evaluated, not its contraction.
Interval envelope_I(const Box& box, double gamma);

enum class PinchCase { Case1, Case2 };

/// Case1 iff |Ric0|^2 / R^2 = eta^2/4 + 2x^2 + 2y^2 >= 1/12.
PinchCase classify_case(double eta, double x, double y);

}  // namespace pinchlab
