#pragma once

// Closed intervals with outward rounding.
//
// Every elementary result is computed in round-to-nearest and then widened by
// one unit in the last place on each side. IEEE 754 +, -, *, / and sqrt are
// correctly rounded, so the widened interval contains the exact image. No
// rounding-mode state is touched, which keeps the type safe across threads.

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace pinchlab {

namespace detail {
inline double round_down(double v) { return std::nextafter(v, -std::numeric_limits<double>::infinity()); }
inline double round_up(double v) { return std::nextafter(v, std::numeric_limits<double>::infinity()); }
}  // namespace detail

class Interval {
 public:
  constexpr Interval() = default;
  /// Degenerate interval; exact for any representable value.
  constexpr Interval(double v) : lo_(v), hi_(v) {}  // NOLINT(google-explicit-constructor)
  Interval(double lo, double hi) : lo_(lo), hi_(hi) {
    if (!(lo <= hi)) throw std::invalid_argument("interval requires lo <= hi");
  }

  double lo() const { return lo_; }
  double hi() const { return hi_; }
  double width() const { return hi_ - lo_; }
  double mid() const { return lo_ + 0.5 * (hi_ - lo_); }
  bool contains(double v) const { return lo_ <= v && v <= hi_; }
  bool contains(const Interval& o) const { return lo_ <= o.lo_ && o.hi_ <= hi_; }
  bool is_point() const { return lo_ == hi_; }

  friend Interval operator+(const Interval& a, const Interval& b) {
    return raw(detail::round_down(a.lo_ + b.lo_), detail::round_up(a.hi_ + b.hi_));
  }
  friend Interval operator-(const Interval& a, const Interval& b) {
    return raw(detail::round_down(a.lo_ - b.hi_), detail::round_up(a.hi_ - b.lo_));
  }
  friend Interval operator-(const Interval& a) { return raw(-a.hi_, -a.lo_); }
  friend Interval operator*(const Interval& a, const Interval& b) {
    const double p1 = a.lo_ * b.lo_;
    const double p2 = a.lo_ * b.hi_;
    const double p3 = a.hi_ * b.lo_;
    const double p4 = a.hi_ * b.hi_;
    return raw(detail::round_down(std::min({p1, p2, p3, p4})), detail::round_up(std::max({p1, p2, p3, p4})));
  }
  friend Interval operator/(const Interval& a, const Interval& b) {
    if (b.lo_ <= 0.0 && b.hi_ >= 0.0) throw std::domain_error("interval division by an interval containing 0");
    const double q1 = a.lo_ / b.lo_;
    const double q2 = a.lo_ / b.hi_;
    const double q3 = a.hi_ / b.lo_;
    const double q4 = a.hi_ / b.hi_;
    return raw(detail::round_down(std::min({q1, q2, q3, q4})), detail::round_up(std::max({q1, q2, q3, q4})));
  }
  Interval& operator+=(const Interval& o) { return *this = *this + o; }
  Interval& operator-=(const Interval& o) { return *this = *this - o; }
  Interval& operator*=(const Interval& o) { return *this = *this * o; }

  /// Tight square: [0, max^2] when the interval straddles zero.
  friend Interval sqr(const Interval& a) {
    const double l = std::abs(a.lo_);
    const double h = std::abs(a.hi_);
    if (a.lo_ <= 0.0 && a.hi_ >= 0.0) return raw(0.0, detail::round_up(std::max(l, h) * std::max(l, h)));
    const double m = std::min(l, h);
    const double M = std::max(l, h);
    return raw(std::max(0.0, detail::round_down(m * m)), detail::round_up(M * M));
  }
  /// Square root restricted to the nonnegative part of the argument.
  friend Interval sqrt(const Interval& a) {
    if (a.hi_ < 0.0) throw std::domain_error("interval sqrt of a negative interval");
    const double l = a.lo_ <= 0.0 ? 0.0 : std::max(0.0, detail::round_down(std::sqrt(a.lo_)));
    return raw(l, detail::round_up(std::sqrt(a.hi_)));
  }
  friend Interval abs(const Interval& a) {
    if (a.lo_ >= 0.0) return a;
    if (a.hi_ <= 0.0) return -a;
    return raw(0.0, std::max(-a.lo_, a.hi_));
  }
  friend Interval hull(const Interval& a, const Interval& b) {
    return raw(std::min(a.lo_, b.lo_), std::max(a.hi_, b.hi_));
  }

  friend bool operator==(const Interval&, const Interval&) = default;
  friend std::ostream& operator<<(std::ostream& os, const Interval& a) {
    return os << '[' << a.lo_ << ", " << a.hi_ << ']';
  }

 private:
  static Interval raw(double lo, double hi) {
    Interval r;
    r.lo_ = lo;
    r.hi_ = hi;
    return r;
  }

  double lo_ = 0.0;
  double hi_ = 0.0;
};

inline double sqr(double v) { return v * v; }

}  // namespace pinchlab
