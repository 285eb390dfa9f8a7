#pragma once

#include <stdexcept>
#include <string>

namespace pinchlab {

/// A full component map contradicts the algebraic curvature symmetries.
class SymmetryViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The scalar curvature vanishes, so eta = b / R is undefined.
class ZeroScalar : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Ricci eigenvalues are too close for the eigenframe derivative to exist.
class DegenerateSpectrum : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A point or box lies wholly outside the admissible (eta, x, y) domain.
class DomainViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// eta0 does not exceed the mode threshold (c_tilde or 1/3).
class ThresholdViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A single integration step moved an eigenvalue by more than half the spread.
class StepTooLarge : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace pinchlab
