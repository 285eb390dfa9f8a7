#pragma once

// Branch-and-bound certification of the pinching envelope over D(eta_lo).
//
// Boxes are processed in a fixed lexicographic order on
// (eta.lo, x.lo, y.lo, eta.hi, x.hi, y.hi), in batches of a fixed size, and
// each batch is merged in that order. Results therefore do not depend on the
// number of worker threads.

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

#include "pinchlab/curvature.hpp"
#include "pinchlab/envelope.hpp"

namespace pinchlab {

struct Witness {
  double eta = 0.0;
  double x = 0.0;
  double y = 0.0;
  double value = 0.0;  ///< point evaluation of the envelope
};

struct Certified {
  /// Minimum of the enclosure lower bounds over all discharged boxes.
  double lower_bound;
};

/// A domain point whose envelope has a rigorously negative upper bound.
/// Among all such box midpoints the one from the lexicographically smallest
/// box is reported, i.e. the violation closest to eta_lo.
struct Counterexample {
  Witness witness;
  double upper_bound;
};

struct BudgetExhausted {
  double best_lower;   ///< rigorous lower bound on the envelope over the domain
  double worst_upper;  ///< smallest rigorous upper bound seen at a domain point
  std::size_t boxes_remaining;
};

struct CertResult {
  std::variant<Certified, Counterexample, BudgetExhausted> status;
  std::size_t boxes_processed = 0;
  /// Domain midpoint with the smallest rigorous upper bound seen; an
  /// approximate minimizer of the envelope.
  std::optional<Witness> best_point;
  double best_upper = 0.0;

  bool certified() const { return std::holds_alternative<Certified>(status); }
  bool counterexample() const { return std::holds_alternative<Counterexample>(status); }
  bool exhausted() const { return std::holds_alternative<BudgetExhausted>(status); }
};

struct CertifyOptions {
  /// Worker threads; 0 means std::thread::hardware_concurrency().
  unsigned threads = 1;
  /// When positive, a certified run is followed by a second pass that only
  /// discharges boxes whose lower bound is at least (1 - refine_gap) times
  /// the best upper bound, which tightens lower_bound toward the true minimum.
  double refine_gap = 0.0;
  /// Box budget of the refinement pass. When it runs out, the partial bound
  /// of that pass is used if it improves on the first one.
  std::size_t refine_boxes = 200'000;
};

/// Requires 0 < eta_lo <= 1, tol > 0, max_boxes > 0, gamma >= 0; throws
/// std::invalid_argument otherwise.
CertResult certify(double gamma, double eta_lo, double tol, std::size_t max_boxes,
                   const CertifyOptions& options = {});

struct GridMin {
  double value;
  double eta;
  double x;
  double y;
};

/// Floating-point minimum over a grid of grid^3 points mapped onto D(eta_lo):
/// eta uniform in [eta_lo, 1], x uniform in [0, (1 - eta)/4], y uniform in
/// [0, eta/2 - x].
GridMin approx_min(double gamma, double eta_lo, int grid);

/// eta threshold of a pinching mode: c_tilde for Star, 1/3 for StarStar.
double mode_threshold(PinchMode mode);
std::string_view mode_name(PinchMode mode);
/// Accepts star and star-star; throws std::invalid_argument.
PinchMode parse_mode(std::string_view name);

/// Thrown when positivity could not be certified on the way to delta.
class CertificationFailure : public std::runtime_error {
 public:
  CertificationFailure(const std::string& what, CertResult r) : std::runtime_error(what), result(std::move(r)) {}
  CertResult result;
};

struct DeltaOptions {
  double tol = 1e-6;
  std::size_t max_boxes = 10'000'000;
  unsigned threads = 1;
  double refine_gap = 0.05;
};

struct DeltaBound {
  double delta;
  double eta_lo;        ///< (eta0 + threshold) / 2
  double envelope_min;  ///< certified lower bound m of the envelope at R = 1
  CertResult cert;
};

/// delta = min{1, 2 m r0}, where m is the certified envelope minimum over
/// D((eta0 + threshold)/2). Since the envelope is homogeneous of degree 2,
/// I >= m R^2 >= m r0 R whenever R >= r0.
/// Throws ThresholdViolation when eta0 <= threshold, std::invalid_argument when
/// r0 <= 0, and CertificationFailure when positivity is not certified.
DeltaBound delta_of(double gamma, double eta0, double r0, PinchMode mode, const DeltaOptions& options = {});

}  // namespace pinchlab
