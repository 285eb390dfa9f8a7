#include "pinchlab/constants.hpp"

#include <algorithm>
#include <cmath>

namespace pinchlab {

namespace {

template <typename T>
struct Radicals {
  T c_tilde, c0, gamma_star, gamma_starstar;
};

template <typename T>
Radicals<T> radicals() {
  using std::sqrt;
  const T s3 = sqrt(T(3.0));
  const T root = sqrt(T(5.0) + T(4.0) * s3);
  return {(root - (T(1.0) + s3)) / s3, ((T(1.0) + T(2.0) * s3) - root) / (T(2.0) * s3), T(1.0) + s3,
          (T(1.0) + s3) / s3};
}

}  // namespace

const Constants& constants() {
  static const Constants c = [] {
    const Radicals<double> r = radicals<double>();
    return Constants{r.c_tilde, r.c0, r.gamma_star, r.gamma_starstar};
  }();
  return c;
}

ConstantEnclosures constant_enclosures() {
  const Radicals<Interval> r = radicals<Interval>();
  return {r.c_tilde, r.c0, r.gamma_star, r.gamma_starstar};
}

CheckReport constants_eval(double digits_tolerance) {
  const Constants& c = constants();
  const ConstantEnclosures e = constant_enclosures();
  const double s3 = std::sqrt(3.0);

  CheckReport rep;
  rep.title = "constants";
  rep.expect_near("c_tilde", c.c_tilde, 0.41666, digits_tolerance, "(sqrt(5+4 sqrt3) - (1+sqrt3))/sqrt3");
  rep.expect_near("c0", c.c0, 0.29167, digits_tolerance, "((1+2 sqrt3) - sqrt(5+4 sqrt3))/(2 sqrt3)");
  rep.expect_near("gamma_star", c.gamma_star, 1.0 + s3, 0.0, "1 + sqrt3");
  rep.expect_near("gamma_starstar", c.gamma_starstar, (1.0 + s3) / s3, 0.0, "(1 + sqrt3)/sqrt3");
  rep.expect_near("2*c0 + c_tilde", 2.0 * c.c0 + c.c_tilde, 1.0, 1e-14, "identity");
  rep.expect_near("3*c_tilde^2 + (6+2 sqrt3)*c_tilde - (1+2 sqrt3)",
                  3.0 * c.c_tilde * c.c_tilde + (6.0 + 2.0 * s3) * c.c_tilde - (1.0 + 2.0 * s3), 0.0, 1e-13,
                  "c_tilde is a root");
  const Interval ident = Interval(2.0) * e.c0 + e.c_tilde;
  rep.expect_true("enclosure of 2*c0 + c_tilde contains 1", ident.contains(1.0), ident.width(), 0.0,
                  "width of the enclosure");
  rep.expect_true("c_tilde > 1/3", e.c_tilde.lo() > (Interval(1.0) / Interval(3.0)).hi(), c.c_tilde, 1.0 / 3.0);
  return rep;
}

CheckReport aux_checks() {
  using I = Interval;
  const I third = I(1.0) / I(3.0);
  const I s3 = sqrt(I(3.0));
  const ConstantEnclosures e = constant_enclosures();

  CheckReport rep;
  rep.title = "auxiliary inequalities";

  // (a) 12 (sqrt3 - 1) > (1 + sqrt3)^2
  {
    const I lhs = I(12.0) * (s3 - I(1.0));
    const I rhs = sqr(I(1.0) + s3);
    rep.expect_true("(a) 12(sqrt3-1) > (1+sqrt3)^2", lhs.lo() > rhs.hi(), lhs.lo(), rhs.hi());
  }

  // (b) min over [1/3, 1] of ((1+eta)/eta) sqrt(3 eta^2 - 2 eta + 1) >= 2 sqrt(2 sqrt3 - 2)
  const auto ratio = [](const I& eta) {
    return (I(1.0) + eta) / eta * sqrt(I(3.0) * sqr(eta) - I(2.0) * eta + I(1.0));
  };
  const Minimum1D mb = minimize_1d(ratio, third.lo(), 1.0, 1e-9);
  {
    const I threshold = I(2.0) * sqrt(I(2.0) * s3 - I(2.0));
    rep.expect_true("(b) min ((1+eta)/eta) sqrt(3eta^2-2eta+1) >= 2 sqrt(2 sqrt3 - 2)", mb.lower >= threshold.hi(),
                    mb.lower, threshold.hi(), "certified 1D minimum on [1/3, 1]");
    // What the t-monotonicity step actually uses: 2(1+eta) t > gamma eta / sqrt3
    // with t >= sqrt(3eta^2-2eta+1)/(2 sqrt2), i.e. min ratio > sqrt(2/3) gamma.
    const I needed = sqrt(I(2.0) / I(3.0)) * e.gamma_star;
    rep.expect_true("(b') min ratio > sqrt(2/3) (1+sqrt3)", mb.lower > needed.hi(), mb.lower, needed.hi(),
                    "premise holds for every gamma < 1+sqrt3");
  }

  // (c) II = (1-eta) K(eta) >= 0 on [1/3, 1]; certify K > 0.
  {
    const auto k_factor = [&](const I& eta) {
      const I d = eta - third;
      const I s = sqrt(I(1.0) + I(4.5) * sqr(d));
      return (I(1.0) + eta) - I(2.0) * eta * d * I(1.5) * (I(1.0) + I(3.0) * eta) / ((s + I(1.0)) * (s3 + s));
    };
    const Minimum1D mc = minimize_1d(k_factor, third.lo(), 1.0, 1e-9);
    rep.expect_true("(c) Case 1 bracket II >= 0 on [1/3, 1]", mc.lower > 0.0, mc.lower, 0.0,
                    "II = (1-eta) K(eta); certified min K");
    const I lower_k = I(1.0) + I(1.0) - I(4.0) / (I(1.0) + s3);
    rep.expect_true("(c') 1 + eta - 4 eta/(1+sqrt3) > 0 at eta = 1", lower_k.lo() > 0.0, lower_k.lo(), 0.0);
  }

  // (d) (eta - 1/3)((3 eta - 1)^2 + 8) >= 0 on [1/3, 1]
  {
    const auto second = [](const I& eta) { return sqr(I(3.0) * eta - I(1.0)) + I(8.0); };
    const Minimum1D md = minimize_1d(second, third.lo(), 1.0, 1e-9);
    rep.expect_true("(d) (eta-1/3)((3eta-1)^2+8) >= 0 on [1/3, 1]", md.lower > 0.0, md.lower, 0.0,
                    "first factor >= 0 on the interval; certified min of the second");
    double worst = 0.0;
    for (int i = 0; i <= 1000; ++i) {
      const double eta = 1.0 / 3.0 + (2.0 / 3.0) * i / 1000.0;
      const double lhs = 2.0 * eta * (3.0 * eta * eta + 1.0) - 3.0 * std::pow(1.0 - eta, 3);
      const double rhs = (eta - 1.0 / 3.0) * (std::pow(3.0 * eta - 1.0, 2) + 8.0);
      worst = std::max(worst, std::abs(lhs - rhs));
    }
    rep.expect_near("(d') 2eta(3eta^2+1) - 3(1-eta)^3 = (eta-1/3)((3eta-1)^2+8)", worst, 0.0, 1e-13,
                    "max deviation on a 1001-point grid");
  }

  // (e) the Case 2 bracket at the two critical gammas
  {
    const Constants& c = constants();
    const I at_ct = case2_bracket(e.c_tilde, e.gamma_star);
    rep.expect_true("(e) bracket(c_tilde, 1+sqrt3) encloses 0", at_ct.contains(0.0), at_ct.width(), 0.0);
    rep.expect_near("(e) bracket(c_tilde, 1+sqrt3)", case2_bracket(c.c_tilde, c.gamma_star), 0.0, 1e-13);
    rep.expect_near("(e) bracket(1/3, (1+sqrt3)/sqrt3)", case2_bracket(1.0 / 3.0, c.gamma_starstar), 0.0, 1e-13);
    const I at_third = case2_bracket(third, e.gamma_starstar);
    rep.expect_true("(e) bracket(1/3, (1+sqrt3)/sqrt3) encloses 0", at_third.contains(0.0), at_third.width(), 0.0);
    double worst = 0.0;
    for (int i = 0; i <= 1000; ++i) {
      const double eta = i / 1000.0;
      const double f = 3.0 * (eta - 1.0 / 3.0) * (eta + (2.0 + std::sqrt(3.0)) / std::sqrt(3.0));
      worst = std::max(worst, std::abs(case2_bracket(eta, c.gamma_starstar) - f));
    }
    rep.expect_near("(e) bracket(eta, (1+sqrt3)/sqrt3) = 3(eta-1/3)(eta+(2+sqrt3)/sqrt3)", worst, 0.0, 1e-13,
                    "max deviation on [0, 1]");
  }
  return rep;
}

}  // namespace pinchlab
