#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "pinchlab/constants.hpp"
#include "pinchlab/envelope.hpp"

using namespace pinchlab;

namespace {

const double kSqrt3 = std::sqrt(3.0);
const double kGammaStar = 1.0 + kSqrt3;
const double kGammaStarStar = (1.0 + kSqrt3) / kSqrt3;

struct Point {
  double eta, x, y;
};

Point random_point(std::mt19937_64& rng, double eta_lo = 0.0) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double eta = eta_lo + (1.0 - eta_lo) * u(rng);
  const double x = std::min((1.0 - eta) / 4.0, eta / 2.0) * u(rng);
  const double y = std::max(0.0, eta / 2.0 - x) * u(rng);
  return {eta, x, y};
}

// Un-normalized quantity at scalar curvature r and absolute x, y.
double envelope_scaled(double eta, double x, double y, double r, double gamma) {
  const double l1 = (1.0 - eta) * r / 4.0 - x;
  const double l2 = (1.0 - eta) * r / 4.0 + x;
  const double l3 = (1.0 + eta) * r / 4.0 - y;
  const double l4 = (1.0 + eta) * r / 4.0 + y;
  double ric0 = 0.0;
  for (double l : {l1, l2, l3, l4}) ric0 += (l - r / 4.0) * (l - r / 4.0);
  const double w = gamma / (2.0 * kSqrt3) * std::abs(std::sqrt(ric0) - r / (2.0 * kSqrt3));
  return (1.0 + eta) * (l3 * l3 + l4 * l4) - (1.0 - eta) * (l1 * l1 + l2 * l2) - 2.0 * eta * r * (r / 3.0 + w);
}

// Lower bound in the region |Ric0| >= R/(2 sqrt 3) that drops the lambda1 lambda2 terms.
double relaxed_case1(double eta, double y, double gamma) {
  const double t = std::sqrt((3.0 * eta * eta - 2.0 * eta + 1.0) / 8.0 + 2.0 * y * y);
  return (-3.0 + 11.0 * eta - 9.0 * eta * eta + 9.0 * eta * eta * eta) / 24.0 + 2.0 * (1.0 + eta) * y * y -
         gamma * eta / kSqrt3 * (t - 1.0 / (2.0 * kSqrt3));
}

}  // namespace

TEST_CASE("expanded form equals the eigenvalue form") {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> g(0.0, 4.0);
  for (int n = 0; n < 20000; ++n) {
    const Point p = random_point(rng);
    const double gamma = g(rng);
    CHECK(envelope_I(p.eta, p.x, p.y, gamma) ==
          doctest::Approx(oracle::envelope_lambda_form(p.eta, p.x, p.y, gamma)).epsilon(1e-12).scale(1.0));
  }
}

TEST_CASE("envelope examples") {
  CHECK(std::abs(envelope_I(1.0, 0.0, 0.0, kGammaStar)) <= 1e-12);
  CHECK(envelope_I(1.0, 0.0, 0.0, 2.0) == doctest::Approx((2.0 - kSqrt3) / 3.0).epsilon(1e-14));
  CHECK(std::abs(envelope_I(1.0 / 3.0, 0.0, 0.0, kGammaStarStar)) <= 1e-12);

  // At x = y = 0 and eta < 1/sqrt 3 the envelope is (eta/12) times the bracket.
  const double v = envelope_I(0.42, 0.0, 0.0, 3.0);
  CHECK(v == doctest::Approx(0.42 / 12.0 * case2_bracket(0.42, 3.0)).epsilon(1e-13));
  CHECK(v == doctest::Approx(-0.00373).epsilon(0.01));
  CHECK(v < 0.0);

  for (double gamma : {0.0, 1.0, 2.0, 2.5, 3.5}) {
    CHECK(envelope_I(1.0, 0.0, 0.0, gamma) == doctest::Approx(1.0 / 3.0 - gamma * (kSqrt3 - 1.0) / 6.0));
  }
}

TEST_CASE("domain checks") {
  CHECK_THROWS_AS(envelope_I(1.2, 0.0, 0.0, 1.0), DomainViolation);
  CHECK_THROWS_AS(envelope_I(0.5, 0.2, 0.0, 1.0), DomainViolation);
  CHECK_THROWS_AS(envelope_I(0.5, 0.1, 0.2, 1.0), DomainViolation);
  CHECK_THROWS_AS(envelope_I(0.5, -0.1, 0.0, 1.0), DomainViolation);
  CHECK_NOTHROW(envelope_I(0.5, 0.125, 0.125, 1.0));
  CHECK_THROWS_AS(envelope_I(Box{Interval(0.5, 0.6), Interval(0.3, 0.4), Interval(0.0, 0.1)}, 1.0), DomainViolation);
  CHECK_NOTHROW(envelope_I(Box{Interval(0.5, 0.6), Interval(0.0, 0.1), Interval(0.0, 0.1)}, 1.0));

  CHECK(in_domain(1.0, 0.0, 0.5, 0.0));
  CHECK_FALSE(in_domain(0.3, 0.0, 0.0, 0.4));
  CHECK_FALSE(in_domain(0.5, 0.2, 0.0, 0.0));
  CHECK_FALSE(contract_to_domain(Box{Interval(0.0, 0.2), Interval(0.0, 0.1), Interval(0.0, 0.1)}, 0.5));
}

TEST_CASE("contraction keeps every domain point") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int n = 0; n < 20000; ++n) {
    double e0 = u(rng), e1 = u(rng), x0 = 0.3 * u(rng), x1 = 0.3 * u(rng), y0 = 0.6 * u(rng), y1 = 0.6 * u(rng);
    if (e0 > e1) std::swap(e0, e1);
    if (x0 > x1) std::swap(x0, x1);
    if (y0 > y1) std::swap(y0, y1);
    const Box b{Interval(e0, e1), Interval(x0, x1), Interval(y0, y1)};
    const double pe = e0 + (e1 - e0) * u(rng), px = x0 + (x1 - x0) * u(rng), py = y0 + (y1 - y0) * u(rng);
    const auto c = contract_to_domain(b, 0.2);
    if (in_domain(pe, px, py, 0.2)) {
      REQUIRE(c.has_value());
      CHECK(c->eta.contains(pe));
      CHECK(c->x.contains(px));
      CHECK(c->y.contains(py));
    }
  }
}

TEST_CASE("interval enclosure of the envelope") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int n = 0; n < 100000; ++n) {
    const Point a = random_point(rng);
    const double h = std::pow(10.0, -4.0 * u(rng));
    const Box box{Interval(a.eta, std::min(1.0, a.eta + h)), Interval(a.x, a.x + h * u(rng)),
                  Interval(a.y, a.y + h * u(rng))};
    const Point p{box.eta.lo() + box.eta.width() * u(rng), box.x.lo() + box.x.width() * u(rng),
                  box.y.lo() + box.y.width() * u(rng)};
    const double gamma = 3.0 * u(rng);
    const Interval enc = envelope_value(box.eta, box.x, box.y, gamma);
    CHECK(enc.contains(envelope_value(p.eta, p.x, p.y, gamma)));
  }
}

TEST_CASE("homogeneity of degree two") {
  std::mt19937_64 rng(19);
  for (int n = 0; n < 2000; ++n) {
    const Point p = random_point(rng);
    const double base = envelope_value(p.eta, p.x, p.y, 2.0);
    for (double s : {0.5, 2.0, 10.0}) {
      CHECK(envelope_scaled(p.eta, s * p.x, s * p.y, s, 2.0) == doctest::Approx(s * s * base).scale(s * s).epsilon(1e-12));
    }
  }
}

TEST_CASE("the relaxed bound lies below the envelope where |Ric0| >= R/(2 sqrt 3)") {
  const int n = 50;
  int tested = 0;
  for (double gamma : {1.0, 2.0, 2.7, kGammaStar}) {
    for (int i = 0; i < n; ++i) {
      const double eta = i / double(n - 1);
      for (int j = 0; j < n; ++j) {
        const double x = std::min((1.0 - eta) / 4.0, eta / 2.0) * j / double(n - 1);
        for (int k = 0; k < n; ++k) {
          const double y = std::max(0.0, eta / 2.0 - x) * k / double(n - 1);
          if (classify_case(eta, x, y) != PinchCase::Case1) continue;
          REQUIRE((1.0 - eta) / 4.0 - x >= -1e-15);  // lambda1 >= 0 throughout D(0)
          ++tested;
          CHECK(relaxed_case1(eta, y, gamma) <= envelope_value(eta, x, y, gamma) + 1e-14);
        }
      }
    }
  }
  CHECK(tested > 10000);
}

TEST_CASE("envelope is nonincreasing in gamma") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(0.0, 4.0);
  for (int n = 0; n < 20000; ++n) {
    const Point p = random_point(rng);
    double g1 = u(rng), g2 = u(rng);
    if (g1 > g2) std::swap(g1, g2);
    CHECK(envelope_value(p.eta, p.x, p.y, g2) <= envelope_value(p.eta, p.x, p.y, g1));
  }
}

TEST_CASE("sharpness pair") {
  for (double gamma = 0.0; gamma < kGammaStar - 1e-6; gamma += 0.01) CHECK(envelope_value(1.0, 0.0, 0.0, gamma) > 0.0);
  CHECK(std::abs(envelope_value(1.0, 0.0, 0.0, kGammaStar)) < 1e-15);
  CHECK(envelope_value(1.0, 0.0, 0.0, kGammaStar + 1e-6) < 0.0);

  // bracket(1/3, gamma) = 4/3 - 2 gamma (1 - 1/sqrt3) is >= 0 exactly when
  // gamma <= gamma**, and its eta-derivative 6 eta + 2 sqrt3 gamma is positive,
  // so the sign carries over to eta slightly above 1/3.
  CHECK(std::abs(case2_bracket(1.0 / 3.0, kGammaStarStar)) < 1e-14);
  const double h = 1e-6;
  for (double gamma : {kGammaStarStar - 0.1, kGammaStarStar}) {
    const double slope = (case2_bracket(1.0 / 3.0 + h, gamma) - case2_bracket(1.0 / 3.0, gamma)) / h;
    CHECK(slope == doctest::Approx(2.0 + 2.0 * kSqrt3 * gamma).epsilon(1e-5));
    CHECK(case2_bracket(1.0 / 3.0 + h, gamma) >= 0.0);
  }
  CHECK(case2_bracket(1.0 / 3.0 + h, kGammaStarStar + 0.1) < 0.0);
  CHECK(case2_bracket(1.0 / 3.0, kGammaStarStar + 0.1) < 0.0);
}

TEST_CASE("case classification") {
  CHECK(classify_case(1.0, 0.0, 0.0) == PinchCase::Case1);
  CHECK(classify_case(1.0 / 3.0, 0.0, 0.0) == PinchCase::Case2);
  CHECK(classify_case(1.0 / kSqrt3, 0.0, 0.0) == PinchCase::Case1);
  CHECK(classify_case(0.5, 0.1, 0.1) == PinchCase::Case1);
  CHECK(classify_case(0.5, 0.0, 0.05) == PinchCase::Case2);
}
