#include "pinchlab/envelope.hpp"

#include <algorithm>
#include <string>

namespace pinchlab {

std::optional<Box> contract_to_domain(const Box& b, double eta_lo) {
  double el = std::max(b.eta.lo(), eta_lo);
  double eh = std::min(b.eta.hi(), 1.0);
  double xl = std::max(b.x.lo(), 0.0);
  double xh = b.x.hi();
  double yl = std::max(b.y.lo(), 0.0);
  double yh = b.y.hi();
  for (int pass = 0; pass < 2; ++pass) {
    if (el > eh || xl > xh || yl > yh) return std::nullopt;
    const Interval half_eta = Interval(eh) / Interval(2.0);
    // x <= (1 - eta)/4 and x + y <= eta/2
    xh = std::min({xh, ((Interval(1.0) - Interval(el)) / Interval(4.0)).hi(), (half_eta - Interval(yl)).hi()});
    yh = std::min(yh, (half_eta - Interval(xl)).hi());
    // eta >= 2(x + y) and eta <= 1 - 4x
    el = std::max(el, (Interval(2.0) * (Interval(xl) + Interval(yl))).lo());
    eh = std::min(eh, (Interval(1.0) - Interval(4.0) * Interval(xl)).hi());
  }
  if (el > eh || xl > xh || yl > yh) return std::nullopt;
  return Box{Interval(el, eh), Interval(xl, xh), Interval(yl, yh)};
}

namespace {

// Exact test of a + b <= c via the rounding error of a + b.
bool sum_le(double a, double b, double c) {
  const double s = a + b;
  const double bb = s - a;
  const double err = (a - (s - bb)) + (b - bb);
  return s < c || (s == c && err <= 0.0);
}

}  // namespace

bool in_domain(double eta, double x, double y, double eta_lo) {
  if (!(eta >= eta_lo && eta <= 1.0 && x >= 0.0 && y >= 0.0)) return false;
  // 4x and eta/2 are exact scalings.
  return sum_le(4.0 * x, eta, 1.0) && sum_le(x, y, eta / 2.0);
}

double envelope_I(double eta, double x, double y, double gamma) {
  constexpr double s = 1e-12;
  const bool inside = eta >= -s && eta <= 1.0 + s && x >= -s && y >= -s && x <= (1.0 - eta) / 4.0 + s &&
                      x + y <= eta / 2.0 + s;
  if (!inside) {
    throw DomainViolation("point (" + std::to_string(eta) + ", " + std::to_string(x) + ", " +
                          std::to_string(y) + ") lies outside the admissible domain");
  }
  return envelope_value(eta, x, y, gamma);
}

Interval envelope_I(const Box& box, double gamma) {
  if (!contract_to_domain(box, 0.0)) {
    throw DomainViolation("box lies wholly outside the admissible domain");
  }
  return envelope_value(box.eta, box.x, box.y, gamma);
}

PinchCase classify_case(double eta, double x, double y) {
  const double q = eta * eta / 4.0 + 2.0 * x * x + 2.0 * y * y;
  // A few ulps of slack so that the boundary eta = 1/sqrt 3 lands in Case1.
  return q >= 1.0 / 12.0 - 4e-16 ? PinchCase::Case1 : PinchCase::Case2;
}

}  // namespace pinchlab
