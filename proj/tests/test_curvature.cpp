#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "pinchlab/curvature.hpp"
#include "pinchlab/model_spaces.hpp"

using namespace pinchlab;

namespace {

const double kSqrt3 = std::sqrt(3.0);

double sqr(double v) { return v * v; }

CurvatureTensord from_sectional(std::initializer_list<std::pair<int, double>> diag) {
  Matrix6<double> m = Matrix6<double>::Zero();
  for (auto [p, v] : diag) m(p, p) = v;
  return CurvatureTensord::from_pair_operator(m);
}

CurvatureTensord s2xr2() { return from_sectional({{0, 1.0}}); }
CurvatureTensord s3xr() { return from_sectional({{0, 1.0}, {1, 1.0}, {3, 1.0}}); }

// Full component map of t, rotated by q with the oracle, re-validated.
CurvatureTensord rotate_oracle(const CurvatureTensord& t, const oracle::Mat4& q) {
  std::array<double, 256> full;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int c = 0; c < 4; ++c)
        for (int d = 0; d < 4; ++d) full[CurvatureTensord::index(a, b, c, d)] = oracle::rotated(t, q, a, b, c, d);
  return CurvatureTensord::from_components(std::span<const double, 256>(full));
}

}  // namespace

TEST_CASE("build from independent components") {
  std::array<double, 20> zero{};
  const CurvatureTensord z = CurvatureTensord::from_independent(std::span<const double, 20>(zero));
  CHECK(z.max_abs() == 0.0);

  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::array<double, 20> v;
  for (double& c : v) c = u(rng);
  const CurvatureTensord t = CurvatureTensord::from_independent(std::span<const double, 20>(v));
  CHECK(t.independent() == v);
  // Every symmetry holds on the full map, so validation accepts it.
  CHECK_NOTHROW(CurvatureTensord::from_components(std::span<const double, 256>(t.data())));
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k)
        for (int l = 0; l < 4; ++l) {
          CHECK(t(i, j, k, l) == -t(j, i, k, l));
          CHECK(t(i, j, k, l) == t(k, l, i, j));
          CHECK(std::abs(t(i, j, k, l) + t(i, k, l, j) + t(i, l, j, k)) < 1e-15);
        }
}

TEST_CASE("build from a full map") {
  SUBCASE("S2 x R2 is valid") {
    std::array<double, 256> full{};
    full[CurvatureTensord::index(0, 1, 0, 1)] = 1.0;
    full[CurvatureTensord::index(1, 0, 1, 0)] = 1.0;
    full[CurvatureTensord::index(1, 0, 0, 1)] = -1.0;
    full[CurvatureTensord::index(0, 1, 1, 0)] = -1.0;
    const CurvatureTensord t = CurvatureTensord::from_components(std::span<const double, 256>(full));
    CHECK(t == model_curvature({ModelKind::S2xR2, 1.0}));
  }
  SUBCASE("antisymmetry violation is named") {
    std::array<double, 256> full{};
    full[CurvatureTensord::index(0, 1, 0, 1)] = 1.0;
    full[CurvatureTensord::index(1, 0, 0, 1)] = 1.0;
    CHECK_THROWS_AS(CurvatureTensord::from_components(std::span<const double, 256>(full)), SymmetryViolation);
  }
  SUBCASE("Bianchi violation") {
    Matrix6<double> m = Matrix6<double>::Zero();
    m(0, 5) = m(5, 0) = 1.0;
    CHECK_THROWS_AS(CurvatureTensord::from_pair_operator(m), SymmetryViolation);
  }
  SUBCASE("asymmetric pair operator") {
    Matrix6<double> m = Matrix6<double>::Zero();
    m(0, 1) = 1.0;
    CHECK_THROWS_AS(CurvatureTensord::from_pair_operator(m), SymmetryViolation);
  }
}

TEST_CASE("decompose examples") {
  SUBCASE("flat") {
    const Decomposition<double> d = decompose(CurvatureTensord{});
    CHECK(d.weyl.max_abs() == 0.0);
    CHECK(d.traceless_ricci.cwiseAbs().maxCoeff() == 0.0);
    CHECK(d.scalar == 0.0);
  }
  SUBCASE("S3 x R") {
    const Decomposition<double> d = decompose(s3xr());
    CHECK(d.weyl.max_abs() < 1e-15);
    CHECK(d.scalar == doctest::Approx(6.0).epsilon(1e-15));
    Eigen::Matrix4d expected = Eigen::Vector4d(0.5, 0.5, 0.5, -1.5).asDiagonal();
    CHECK((d.traceless_ricci - expected).cwiseAbs().maxCoeff() < 1e-15);
  }
  SUBCASE("S2 x R2 against the componentwise formula") {
    const CurvatureTensord t = s2xr2();
    const Decomposition<double> d = decompose(t);
    CHECK(d.scalar == doctest::Approx(2.0));
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        for (int k = 0; k < 4; ++k)
          for (int l = 0; l < 4; ++l) CHECK(std::abs(d.weyl(i, j, k, l) - oracle::weyl(t, i, j, k, l)) < 1e-15);
    CHECK(d.weyl(0, 1, 0, 1) == doctest::Approx(1.0 / 3.0));
    CHECK(d.weyl(2, 3, 2, 3) == doctest::Approx(1.0 / 3.0));
    for (auto [i, j] : {std::pair{0, 2}, {0, 3}, {1, 2}, {1, 3}}) CHECK(d.weyl(i, j, i, j) == doctest::Approx(-1.0 / 6.0));
  }
}

TEST_CASE("recompose examples") {
  CHECK(recompose(Decomposition<double>{}).max_abs() == 0.0);

  const CurvatureTensord t = s2xr2();
  CHECK((recompose(decompose(t)) - t).max_abs() < 1e-12);

  Decomposition<double> round;
  round.scalar = 12.0;
  const CurvatureTensord s4 = recompose(round);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      if (i != j) CHECK(s4(i, j, i, j) == doctest::Approx(1.0));
  CHECK(s4 == model_curvature({ModelKind::SphereS4, 1.0}));
}

TEST_CASE("ricci_spectrum and spectrum_params") {
  auto near = [](const std::array<double, 4>& a, std::array<double, 4> b) {
    for (int i = 0; i < 4; ++i)
      if (std::abs(a[i] - b[i]) > 1e-14) return false;
    return true;
  };
  CHECK(near(ricci_spectrum(CurvatureTensord{}).lambda, {0, 0, 0, 0}));
  CHECK(near(ricci_spectrum(s3xr()).lambda, {0, 2, 2, 2}));
  CHECK(near(ricci_spectrum(s2xr2()).lambda, {0, 0, 1, 1}));

  std::mt19937_64 rng(5);
  for (int n = 0; n < 50; ++n) {
    const CurvatureTensord t = oracle::random_tensor(rng);
    const RicciSpectrum<double> s = ricci_spectrum(t);
    CHECK(std::is_sorted(s.lambda.begin(), s.lambda.end()));
    CHECK(std::abs(s.trace() - decompose(t).scalar) < 1e-10);
  }

  const SpectrumParams<double> a = spectrum_params(RicciSpectrum<double>{{0, 2, 2, 2}});
  CHECK(a.R == 6.0);
  CHECK(a.b == 2.0);
  CHECK(a.eta == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(a.x == 1.0);
  CHECK(a.y == 0.0);

  const SpectrumParams<double> b = spectrum_params(RicciSpectrum<double>{{0, 0, 1, 1}});
  CHECK(b.R == 2.0);
  CHECK(b.b == 2.0);
  CHECK(b.eta == 1.0);
  CHECK(b.x == 0.0);
  CHECK(b.y == 0.0);

  CHECK_THROWS_AS(spectrum_params(RicciSpectrum<double>{{0, 0, 0, 0}}), ZeroScalar);
}

TEST_CASE("domain bounds of the pinching coordinates for nonnegative spectra") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int n = 0; n < 2000; ++n) {
    std::array<double, 4> l{u(rng), u(rng), u(rng), u(rng)};
    std::sort(l.begin(), l.end());
    const SpectrumParams<double> p = spectrum_params(RicciSpectrum<double>{l});
    CHECK(p.x >= 0.0);
    CHECK(p.y >= 0.0);
    CHECK(p.x <= (1.0 - p.eta) * p.R / 4.0 + 1e-15);
    CHECK(p.x + p.y <= p.eta * p.R / 2.0 + 1e-15);
    CHECK(p.eta <= 1.0);
  }
}

TEST_CASE("invariant norms and pinch residual") {
  const InvariantNorms<double> a = invariant_norms(decompose(s2xr2()));
  CHECK(a.weyl == doctest::Approx(2.0 / kSqrt3).epsilon(1e-14));
  CHECK(a.traceless_ricci == doctest::Approx(1.0).epsilon(1e-14));

  const InvariantNorms<double> b = invariant_norms(decompose(s3xr()));
  CHECK(b.weyl < 1e-14);
  CHECK(b.traceless_ricci == doctest::Approx(kSqrt3).epsilon(1e-14));

  const InvariantNorms<double> c = invariant_norms(decompose(CurvatureTensord{}));
  CHECK(c.weyl == 0.0);
  CHECK(c.traceless_ricci == 0.0);

  CHECK(std::abs(pinch_residual(s2xr2(), {1.0 + kSqrt3, PinchMode::Star})) < 1e-14);
  for (double g : {0.5, 1.0, 2.0, 5.0}) CHECK(std::abs(pinch_residual(s3xr(), {g, PinchMode::Star})) < 1e-14);
  const CurvatureTensord s4 = model_curvature({ModelKind::SphereS4, 1.0});
  CHECK(pinch_residual(s4, {1.0, PinchMode::Star}) == doctest::Approx(2.0 * kSqrt3).epsilon(1e-14));
}

TEST_CASE("pair_derivatives examples") {
  // S3 x R has a repeated eigenvalue; the model frame already diagonalizes Ricci.
  CHECK_THROWS_AS(pair_derivatives(s3xr()), DegenerateSpectrum);
  const PairDerivatives<double> d = pair_derivatives(s3xr(), DerivativeFrame::Given);
  CHECK(d.d12 / 2.0 == doctest::Approx(4.0));
  // Both sides of the closed form: (0 + 2)(2 - 4) + 8.
  CHECK(d.d12 / 2.0 == doctest::Approx((0.0 + 6.0 / 3.0) * (2.0 - 4.0) + 4.0 + 4.0));

  const PairDerivatives<double> f = pair_derivatives(CurvatureTensord{});
  CHECK(f.d12 == 0.0);
  CHECK(f.d34 == 0.0);
  CHECK(f.db == 0.0);

  Matrix6<double> m = Matrix6<double>::Identity();
  m(0, 1) = m(1, 0) = 0.3;
  CHECK_THROWS_AS(pair_derivatives(CurvatureTensord::from_pair_operator(m), DerivativeFrame::Given),
                  DegenerateSpectrum);
}

TEST_CASE("pair_derivatives on random tensors: eigenframe oracle and closed forms") {
  std::mt19937_64 rng(2024);
  for (int n = 0; n < 300; ++n) {
    const CurvatureTensord t = oracle::random_tensor(rng);
    const PairDerivatives<double> d = pair_derivatives(t);

    // Perturbation-theory rates in the original frame.
    const std::array<double, 4> rate = oracle::eigenvalue_rates(t);
    const double scale = std::max({1.0, std::abs(d.d12), std::abs(d.d34)});
    CHECK(std::abs(d.d12 - (rate[0] + rate[1])) <= 1e-9 * scale);
    CHECK(std::abs(d.d34 - (rate[2] + rate[3])) <= 1e-9 * scale);

    // Closed forms with W_1212 read in an eigenframe computed independently.
    Eigen::SelfAdjointEigenSolver<oracle::Mat4> es(oracle::ricci(t));
    const CurvatureTensord e = rotate_oracle(t, es.eigenvectors());
    const double w1212 = oracle::weyl(e, 0, 1, 0, 1);
    const auto l = es.eigenvalues();
    const double r = l.sum();
    const double b = (l(2) + l(3)) - (l(0) + l(1));
    const double half_d12 = (w1212 + r / 3.0) * (l(0) + l(1) - l(2) - l(3)) + l(2) * l(2) + l(3) * l(3);
    const double half_db =
        2.0 * b * (r / 3.0 + w1212) + (l(0) * l(0) + l(1) * l(1)) - (l(2) * l(2) + l(3) * l(3));
    CHECK(std::abs(d.d12 / 2.0 - half_d12) <= 1e-9 * std::max(1.0, std::abs(half_d12)));
    CHECK(std::abs(d.db / 2.0 - half_db) <= 1e-9 * std::max(1.0, std::abs(half_db)));
  }
}

TEST_CASE("decomposition properties over random tensors") {
  std::mt19937_64 rng(77);
  double worst_roundtrip = 0.0, worst_orth = 0.0, worst_dual = 0.0, worst_trace = 0.0, worst_sector = -1.0;
  for (int n = 0; n < 1000; ++n) {
    const CurvatureTensord t = oracle::random_tensor(rng);
    const Decomposition<double> d = decompose(t);
    worst_roundtrip = std::max(worst_roundtrip, (recompose(d) - t).max_abs() / t.max_abs());

    const CurvatureTensord parts[3] = {d.weyl.tensor(), d.traceless_part(), d.scalar_part()};
    for (int a = 0; a < 3; ++a)
      for (int b = a + 1; b < 3; ++b) {
        const double denom = std::max(norm(parts[a]) * norm(parts[b]), 1e-300);
        worst_orth = std::max(worst_orth, std::abs(inner(parts[a], parts[b])) / denom);
      }

    for (int k = 0; k < 4; ++k)
      for (int l = 0; l < 4; ++l) {
        double s = 0.0;
        for (int i = 0; i < 4; ++i) s += d.weyl(i, k, i, l);
        worst_trace = std::max(worst_trace, std::abs(s));
      }

    const CurvatureTensord w = rotate_oracle(d.weyl.tensor(), oracle::random_rotation(rng));
    worst_dual = std::max({worst_dual, std::abs(w(0, 1, 0, 1) - w(2, 3, 2, 3)), std::abs(w(0, 2, 0, 2) - w(1, 3, 1, 3)),
                           std::abs(w(0, 3, 0, 3) - w(1, 2, 1, 2)),
                           std::abs(w(0, 1, 0, 1) + w(0, 2, 0, 2) + w(0, 3, 0, 3))});

    const double wn = norm(d.weyl.tensor());
    worst_sector = std::max(worst_sector, sqr(w(0, 1, 0, 1)) - wn * wn / 12.0);
  }
  CHECK(worst_roundtrip <= 1e-12);
  CHECK(worst_orth <= 1e-10);
  CHECK(worst_trace <= 1e-12);
  CHECK(worst_dual <= 1e-10);
  CHECK(worst_sector <= 1e-12);

  // Equality in the sector bound for the S2 x R2 Weyl part.
  const Decomposition<double> d = decompose(s2xr2());
  const double wn = norm(d.weyl.tensor());
  CHECK(std::abs(sqr(d.weyl(0, 1, 0, 1)) - wn * wn / 12.0) <= 1e-12);
}

TEST_CASE("traceless Ricci norm identity") {
  std::mt19937_64 rng(99);
  for (int n = 0; n < 1000; ++n) {
    const CurvatureTensord t = oracle::random_tensor(rng);
    const Decomposition<double> d = decompose(t);
    const RicciSpectrum<double> s = ricci_spectrum(t);
    const SpectrumParams<double> p = spectrum_params(s);
    const double lhs = d.traceless_ricci.squaredNorm();
    const double rhs = p.eta * p.eta * p.R * p.R / 4.0 + 2.0 * p.x * p.x + 2.0 * p.y * p.y;
    CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(lhs, 1e-300) + 1e-15);
    const double l1 = s.lambda[0], l2 = s.lambda[1];
    const double case1 = (3.0 * p.eta * p.eta - 2.0 * p.eta + 1.0) * p.R * p.R / 8.0 + 2.0 * p.y * p.y - 2.0 * l1 * l2;
    CHECK(std::abs(case1 - lhs) <= 1e-12 * std::max(lhs, 1e-300) + 1e-14);
  }
}

TEST_CASE("rotation is an isometry and agrees with the oracle") {
  std::mt19937_64 rng(3);
  const CurvatureTensord t = oracle::random_tensor(rng);
  const oracle::Mat4 q = oracle::random_rotation(rng);
  const CurvatureTensord r = t.rotated(q);
  CHECK((r - rotate_oracle(t, q)).max_abs() < 1e-13);
  CHECK(norm(r) == doctest::Approx(norm(t)).epsilon(1e-13));
  CHECK(r.scalar() == doctest::Approx(t.scalar()).epsilon(1e-13));
}
