#include "pinchlab/model_spaces.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <stdexcept>
#include <string>

namespace pinchlab {

namespace {

constexpr double kTol = 1e-12;

CurvatureTensord sectional_model(const std::array<double, 6>& sec) {
  Matrix6<double> m = Matrix6<double>::Zero();
  for (int a = 0; a < 6; ++a) m(a, a) = sec[a];
  return CurvatureTensord::from_pair_operator(m);
}

}  // namespace

std::string_view model_name(ModelKind kind) {
  switch (kind) {
    case ModelKind::Flat4: return "Flat4";
    case ModelKind::SphereS4: return "S4";
    case ModelKind::S3xR: return "S3xR";
    case ModelKind::S2xR2: return "S2xR2";
  }
  return "unknown";
}

ModelKind parse_model_kind(std::string_view name) {
  std::string s(name);
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  if (s == "flat" || s == "flat4") return ModelKind::Flat4;
  if (s == "s4" || s == "spheres4" || s == "sphere") return ModelKind::SphereS4;
  if (s == "s3xr") return ModelKind::S3xR;
  if (s == "s2xr2") return ModelKind::S2xR2;
  throw std::invalid_argument("unknown model '" + std::string(name) + "'");
}

CurvatureTensord model_curvature(const ModelSpace& m) {
  if (m.kind != ModelKind::Flat4 && !(m.k > 0.0)) {
    throw std::invalid_argument("curved model requires k > 0");
  }
  const double k = m.k;
  // Pair order: 12, 13, 14, 23, 24, 34.
  switch (m.kind) {
    case ModelKind::Flat4: return CurvatureTensord();
    case ModelKind::SphereS4: return sectional_model({k, k, k, k, k, k});
    case ModelKind::S3xR: return sectional_model({k, k, 0, k, 0, 0});
    case ModelKind::S2xR2: return sectional_model({k, 0, 0, 0, 0, 0});
  }
  return CurvatureTensord();
}

CheckReport remark_report(const ModelSpace& m) {
  const double sqrt3 = std::sqrt(3.0);
  const double gamma_star = 1.0 + sqrt3;
  const double gamma_starstar = (1.0 + sqrt3) / sqrt3;

  const CurvatureTensord rm = model_curvature(m);
  const Decomposition<double> d = decompose(rm);
  const InvariantNorms<double> n = invariant_norms(d);
  const RicciSpectrum<double> s = ricci_spectrum(rm);
  const double r = d.scalar;
  const double l12 = s.lambda[0] + s.lambda[1];

  CheckReport rep;
  rep.title = std::string(model_name(m.kind)) + " k=" + std::to_string(m.k);

  switch (m.kind) {
    case ModelKind::Flat4:
      rep.expect_near("R", r, 0.0, kTol);
      rep.expect_near("|Ric0|", n.traceless_ricci, 0.0, kTol);
      rep.expect_near("|W|", n.weyl, 0.0, kTol);
      rep.expect_near("lambda1+lambda2", l12, 0.0, kTol);
      break;
    case ModelKind::SphereS4: {
      const SpectrumParams<double> p = spectrum_params(s);
      rep.expect_near("R/k", r / m.k, 12.0, kTol);
      rep.expect_near("b/R", p.b / r, 0.0, kTol);
      rep.expect_near("eta", p.eta, 0.0, kTol);
      rep.expect_near("|W|/R", n.weyl / r, 0.0, kTol);
      rep.expect_near("|Ric0|/R", n.traceless_ricci / r, 0.0, kTol);
      break;
    }
    case ModelKind::S3xR:
      rep.expect_near("|Ric0|/R", n.traceless_ricci / r, 1.0 / (2.0 * sqrt3), kTol, "1/(2 sqrt 3)");
      rep.expect_near("|W|/R", n.weyl / r, 0.0, kTol);
      rep.expect_near("residual(gamma*)/R", pinch_residual(rm, {gamma_star, PinchMode::Star}) / r, 0.0,
                      kTol, "gamma = 1 + sqrt 3; both sides vanish");
      rep.expect_near("residual(gamma**)/R",
                      pinch_residual(rm, {gamma_starstar, PinchMode::StarStar}) / r, 0.0, kTol,
                      "gamma = (1 + sqrt 3)/sqrt 3; both sides vanish");
      rep.expect_near("(lambda1+lambda2)/R", l12 / r, 1.0 / 3.0, kTol, "1/3");
      break;
    case ModelKind::S2xR2:
      rep.expect_near("|Ric0|/R", n.traceless_ricci / r, 0.5, kTol, "1/2");
      rep.expect_near("|W|/R", n.weyl / r, 1.0 / sqrt3, kTol, "1/sqrt 3");
      rep.expect_near("residual(gamma*)/R", pinch_residual(rm, {gamma_star, PinchMode::Star}) / r, 0.0,
                      kTol, "gamma = 1 + sqrt 3; equality");
      rep.expect_near("(lambda1+lambda2)/R", l12 / r, 0.0, kTol);
      break;
  }
  return rep;
}

}  // namespace pinchlab
