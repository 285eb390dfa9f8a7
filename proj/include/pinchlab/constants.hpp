#pragma once

#include <cstddef>
#include <limits>
#include <queue>
#include <vector>

#include "pinchlab/check.hpp"
#include "pinchlab/interval.hpp"

namespace pinchlab {

/// Radical constants of the pinching problem.
struct Constants {
  double c_tilde;         ///< (sqrt(5 + 4 sqrt 3) - (1 + sqrt 3)) / sqrt 3
  double c0;              ///< ((1 + 2 sqrt 3) - sqrt(5 + 4 sqrt 3)) / (2 sqrt 3)
  double gamma_star;      ///< 1 + sqrt 3
  double gamma_starstar;  ///< (1 + sqrt 3) / sqrt 3
};

const Constants& constants();

/// Interval enclosures of the same constants.
struct ConstantEnclosures {
  Interval c_tilde;
  Interval c0;
  Interval gamma_star;
  Interval gamma_starstar;
};

ConstantEnclosures constant_enclosures();

/// Evaluates the constants, compares c0 and c_tilde with their five-digit
/// values 0.29167 and 0.41666 at the given tolerance, and checks
/// 2 c0 + c_tilde = 1 and 3 c^2 + (6 + 2 sqrt 3) c - (1 + 2 sqrt 3) = 0 at c_tilde.
CheckReport constants_eval(double digits_tolerance = 5e-6);

/// Auxiliary one-dimensional inequalities behind the envelope estimates, each
/// certified with interval arithmetic.
CheckReport aux_checks();

/// (3 eta^2 + 1) + 2 gamma (sqrt 3 eta - 1), the bracket of the Case 2 bound at x = y = 0.
template <typename T>
T case2_bracket(const T& eta, const T& gamma) {
  using std::sqrt;
  return T(3.0) * sqr(eta) + T(1.0) + T(2.0) * gamma * (sqrt(T(3.0)) * eta - T(1.0));
}

struct Minimum1D {
  double lower;   ///< rigorous lower bound of the minimum
  double upper;   ///< rigorous upper bound of the minimum (at argmin)
  double argmin;
  std::size_t boxes;
};

/// Best-first interval minimization of f over [lo, hi]. f maps an Interval to
/// an enclosure of its image. Stops once upper - lower <= tol.
template <typename F>
Minimum1D minimize_1d(F&& f, double lo, double hi, double tol = 1e-9, std::size_t max_boxes = 1'000'000) {
  struct Node {
    double bound;
    double a;
    double b;
    bool operator>(const Node& o) const { return bound > o.bound; }
  };
  std::priority_queue<Node, std::vector<Node>, std::greater<Node>> heap;
  Minimum1D m{-std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity(), lo, 0};
  auto probe = [&](double v) {
    const double u = f(Interval(v)).hi();
    if (u < m.upper) {
      m.upper = u;
      m.argmin = v;
    }
  };
  probe(lo);
  probe(hi);
  heap.push({f(Interval(lo, hi)).lo(), lo, hi});
  while (!heap.empty()) {
    const Node n = heap.top();
    m.lower = n.bound;
    if (m.upper - n.bound <= tol || m.boxes >= max_boxes) break;
    heap.pop();
    ++m.boxes;
    const double mid = 0.5 * (n.a + n.b);
    if (!(mid > n.a && mid < n.b)) {
      heap.push({n.bound, n.a, n.b});
      break;
    }
    probe(mid);
    heap.push({f(Interval(n.a, mid)).lo(), n.a, mid});
    heap.push({f(Interval(mid, n.b)).lo(), mid, n.b});
  }
  return m;
}

}  // namespace pinchlab
