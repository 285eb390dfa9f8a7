#include "pinchlab/flow.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <stdexcept>

#include "pinchlab/errors.hpp"

namespace pinchlab {

namespace {

double traceless_norm(const Spectrum4& l) {
  const double q = (l[0] + l[1] + l[2] + l[3]) / 4.0;
  double s = 0.0;
  for (double v : l) s += (v - q) * (v - q);
  return std::sqrt(s);
}

std::array<int, 4> ascending_order(const Spectrum4& l) {
  std::array<int, 4> order{0, 1, 2, 3};
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return l[a] < l[b]; });
  return order;
}

// Sectional curvature of the ansatz for sorted positions i < k.
double sectional(const Spectrum4& sorted, int i, int k, double w, double r) {
  const bool paired = (i == 0 && k == 1) || (i == 2 && k == 3);
  return (paired ? w : -0.5 * w) + 0.5 * (sorted[i] + sorted[k]) - r / 6.0;
}

Spectrum4 axpy(const Spectrum4& a, double s, const Spectrum4& b) {
  return {a[0] + s * b[0], a[1] + s * b[1], a[2] + s * b[2], a[3] + s * b[3]};
}

}  // namespace

double WeylPolicy::weyl(const Spectrum4& lambda) const {
  switch (kind) {
    case Kind::Zero: return 0.0;
    case Kind::Constant: return value;
    case Kind::Matched: return value * (lambda[0] + lambda[1] + lambda[2] + lambda[3]);
    case Kind::WorstStar:
    case Kind::WorstStarStar: {
      const double s3 = std::sqrt(3.0);
      const double r = lambda[0] + lambda[1] + lambda[2] + lambda[3];
      return value / (2.0 * s3) * std::abs(traceless_norm(lambda) - r / (2.0 * s3));
    }
  }
  return 0.0;
}

std::string_view policy_name(WeylPolicy::Kind kind) {
  switch (kind) {
    case WeylPolicy::Kind::Zero: return "zero";
    case WeylPolicy::Kind::Constant: return "constant";
    case WeylPolicy::Kind::WorstStar: return "worst-star";
    case WeylPolicy::Kind::WorstStarStar: return "worst-star-star";
    case WeylPolicy::Kind::Matched: return "matched";
  }
  return "unknown";
}

Spectrum4 vector_field(const Spectrum4& lambda, double w) {
  const std::array<int, 4> order = ascending_order(lambda);
  Spectrum4 sorted;
  for (int i = 0; i < 4; ++i) sorted[i] = lambda[order[i]];
  const double r = sorted[0] + sorted[1] + sorted[2] + sorted[3];
  Spectrum4 rate{};
  for (int i = 0; i < 4; ++i) {
    double acc = 0.0;
    for (int k = 0; k < 4; ++k) {
      if (k == i) continue;
      acc += sorted[k] * sectional(sorted, std::min(i, k), std::max(i, k), w, r);
    }
    rate[order[i]] = 2.0 * acc;
  }
  return rate;
}

Spectrum4 vector_field(const FlowState& s, const WeylPolicy& p) {
  return vector_field(s.lambda, p.weyl(s.lambda));
}

CurvatureTensord ansatz_tensor(const Spectrum4& lambda, double w) {
  const std::array<int, 4> order = ascending_order(lambda);
  Spectrum4 sorted;
  for (int i = 0; i < 4; ++i) sorted[i] = lambda[order[i]];
  const double r = sorted[0] + sorted[1] + sorted[2] + sorted[3];
  // Pair matrix rows follow the frame pairs (12, 13, 14, 23, 24, 34).
  Matrix6<double> m = Matrix6<double>::Zero();
  for (int p = 0; p < 6; ++p) {
    const int a = kPairs[p][0];
    const int b = kPairs[p][1];
    // Positions of the frame axes in ascending order.
    const int ia = static_cast<int>(std::find(order.begin(), order.end(), a) - order.begin());
    const int ib = static_cast<int>(std::find(order.begin(), order.end(), b) - order.begin());
    m(p, p) = sectional(sorted, std::min(ia, ib), std::max(ia, ib), w, r);
  }
  return CurvatureTensord::from_pair_operator(m);
}

double matched_ratio(const CurvatureTensord& rm) {
  const Decomposition<double> d = decompose(rm);
  if (d.scalar == 0.0) throw ZeroScalar("matched ratio needs nonzero scalar curvature");
  const RicciFrame<double> f = ricci_frame(rm);
  const CurvatureTensord w = d.weyl.tensor().rotated(f.vectors);
  return w(0, 1, 0, 1) / d.scalar;
}

FlowTrace integrate(const FlowState& s0, const WeylPolicy& p, double dt, double t_end, double r_cap) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw std::invalid_argument("integrate requires dt > 0");
  if (!(t_end > s0.t)) throw std::invalid_argument("integrate requires t_end > t0");
  if (!(r_cap > s0.scalar())) throw std::invalid_argument("integrate requires r_cap > R(s0)");

  FlowTrace tr;
  tr.dt = dt;
  FlowState s = s0;
  std::sort(s.lambda.begin(), s.lambda.end());
  tr.states.push_back(s);
  tr.w.push_back(p.weyl(s.lambda));

  const double span = (t_end - s0.t) / dt;
  const auto steps = static_cast<std::size_t>(std::ceil(span * (1.0 - 1e-12)));
  tr.states.reserve(steps + 1);
  tr.w.reserve(steps + 1);
  for (std::size_t n = 1; n <= steps; ++n) {
    const Spectrum4& l = s.lambda;
    const Spectrum4 k1 = vector_field(l, p.weyl(l));
    const Spectrum4 l2 = axpy(l, 0.5 * dt, k1);
    const Spectrum4 k2 = vector_field(l2, p.weyl(l2));
    const Spectrum4 l3 = axpy(l, 0.5 * dt, k2);
    const Spectrum4 k3 = vector_field(l3, p.weyl(l3));
    const Spectrum4 l4 = axpy(l, dt, k3);
    const Spectrum4 k4 = vector_field(l4, p.weyl(l4));
    Spectrum4 next;
    for (int i = 0; i < 4; ++i) next[i] = l[i] + dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);

    const double spread = l[3] - l[0];
    double scale = spread;
    if (scale == 0.0) {
      for (double v : l) scale = std::max(scale, std::abs(v));
    }
    for (int i = 0; i < 4; ++i) {
      const double change = std::abs(next[i] - l[i]);
      if (!std::isfinite(next[i]) || (change > 0.0 && change > 0.5 * scale)) {
        throw StepTooLarge("step at t = " + std::to_string(s.t) + " moved lambda" + std::to_string(i + 1) + " by " +
                           std::to_string(change) + ", more than half the spectral spread");
      }
    }
    std::sort(next.begin(), next.end());
    s.lambda = next;
    s.t = s0.t + static_cast<double>(n) * dt;
    tr.states.push_back(s);
    tr.w.push_back(p.weyl(s.lambda));
    if (s.scalar() > r_cap) {
      tr.termination = Termination::Blowup;
      break;
    }
  }
  return tr;
}

TraceDiagnostics trace_diagnostics(const FlowTrace& tr, double eta0, double delta) {
  if (tr.states.empty()) throw std::invalid_argument("trace_diagnostics requires a nonempty trace");
  TraceDiagnostics d{-std::numeric_limits<double>::infinity(), 0, {}, 0};
  const double t0 = tr.states.front().t;
  std::vector<double> eta;
  eta.reserve(tr.states.size());
  for (const FlowState& s : tr.states) {
    const double r = s.scalar();
    const double b = (s.lambda[2] + s.lambda[3]) - (s.lambda[0] + s.lambda[1]);
    const double slack = b - (eta0 - delta * (s.t - t0)) * r;
    d.max_slack = std::max(d.max_slack, slack);
    if (slack > 1e-12 * std::max(1.0, std::abs(r))) ++d.violations;
    eta.push_back(r != 0.0 ? b / r : 0.0);
  }
  using Trend = EtaSegment::Trend;
  for (std::size_t n = 0; n + 1 < tr.states.size(); ++n) {
    if (tr.states[n + 1].scalar() < tr.states[n].scalar()) ++d.scalar_decreases;
    const double diff = eta[n + 1] - eta[n];
    const Trend trend = std::abs(diff) <= 1e-13 ? Trend::Constant : diff < 0.0 ? Trend::Decreasing : Trend::Increasing;
    if (!d.segments.empty() && d.segments.back().trend == trend) {
      d.segments.back().end = n + 1;
    } else {
      d.segments.push_back({n, n + 1, trend});
    }
  }
  return d;
}

}  // namespace pinchlab
