#pragma once

// Reduced eigenvalue ODE for the Ricci flow curvature evolution.
//
// The curvature operator is taken diagonal in the (sorted) Ricci eigenframe
// with the one-parameter Weyl family
//   W_1212 = W_3434 = w,   W_1313 = W_2424 = W_1414 = W_2323 = -w/2,
// so the sectional curvatures are K_ik = w_ik + (l_i + l_k)/2 - R/6 and
//   dl_i/dt = 2 sum_{k != i} l_k K_ik.

#include <array>
#include <cstddef>
#include <string_view>
#include <vector>

#include "pinchlab/curvature.hpp"

namespace pinchlab {

using Spectrum4 = std::array<double, 4>;

struct WeylPolicy {
  enum class Kind {
    Zero,
    Constant,       ///< w = value
    WorstStar,      ///< w = (gamma / (2 sqrt 3)) | |Ric0| - R / (2 sqrt 3) |, value = gamma
    WorstStarStar,  ///< same adversary, gamma read against the star-star threshold
    Matched,        ///< w = value * R, a fixed ratio of the scalar curvature
  };
  Kind kind = Kind::Zero;
  double value = 0.0;

  static WeylPolicy zero() { return {Kind::Zero, 0.0}; }
  static WeylPolicy constant(double w) { return {Kind::Constant, w}; }
  static WeylPolicy worst_star(double gamma) { return {Kind::WorstStar, gamma}; }
  static WeylPolicy worst_star_star(double gamma) { return {Kind::WorstStarStar, gamma}; }
  static WeylPolicy matched(double ratio) { return {Kind::Matched, ratio}; }

  /// The Weyl sectional value W_1212 the policy assigns to a (sorted) spectrum.
  double weyl(const Spectrum4& lambda) const;
};

std::string_view policy_name(WeylPolicy::Kind kind);

struct FlowState {
  double t = 0.0;
  Spectrum4 lambda{};

  double scalar() const { return lambda[0] + lambda[1] + lambda[2] + lambda[3]; }
};

/// Eigenvalue rates with an explicit Weyl value. The ansatz is laid out on the
/// ascending order of lambda; rates are returned in the input order.
Spectrum4 vector_field(const Spectrum4& lambda, double w);
Spectrum4 vector_field(const FlowState& s, const WeylPolicy& p);

/// The ansatz tensor in the frame where Ricci = diag(lambda).
CurvatureTensord ansatz_tensor(const Spectrum4& lambda, double w);

/// W_1212 / R of a tensor, read in its ascending Ricci eigenframe. Gives the
/// Matched ratio that reproduces a model space.
double matched_ratio(const CurvatureTensord& rm);

enum class Termination { EndTime, Blowup };

struct FlowTrace {
  std::vector<FlowState> states;
  std::vector<double> w;  ///< Weyl value at each state
  double dt = 0.0;
  Termination termination = Termination::EndTime;
};

/// Classical RK4 with fixed step dt. Steps t_n = t0 + n dt until t_n >= t_end
/// (the last step is not shortened) or R > r_cap. Eigenvalues are re-sorted
/// after every step.
/// Throws std::invalid_argument on dt <= 0, t_end <= t0 or r_cap <= R(s0), and
/// StepTooLarge when one step moves an eigenvalue by more than half the
/// spectral spread (or produces a non-finite value).
FlowTrace integrate(const FlowState& s0, const WeylPolicy& p, double dt, double t_end, double r_cap);

struct EtaSegment {
  enum class Trend { Constant, Decreasing, Increasing };
  std::size_t begin;  ///< first state index
  std::size_t end;    ///< last state index (inclusive)
  Trend trend;
};

struct TraceDiagnostics {
  double max_slack;                  ///< max of b - (eta0 - delta t) R
  std::size_t violations;            ///< states with positive slack beyond roundoff
  std::vector<EtaSegment> segments;  ///< maximal runs of one eta trend
  std::size_t scalar_decreases;      ///< steps where R strictly decreased
};

/// Throws std::invalid_argument on an empty trace.
TraceDiagnostics trace_diagnostics(const FlowTrace& tr, double eta0, double delta);

}  // namespace pinchlab
