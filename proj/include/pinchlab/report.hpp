#pragma once

// Text renderings of reports: check lists, certification JSON, flow traces.

#include <ostream>
#include <string>
#include <string_view>

#include "pinchlab/certifier.hpp"
#include "pinchlab/check.hpp"
#include "pinchlab/flow.hpp"

namespace pinchlab {

/// One line per check: "name = value (rounded) expected e tol t PASS|FAIL".
/// All values at 17 significant digits; the rounded column has 5 decimals.
std::string render_checks(const CheckReport& report);

struct CertRunInfo {
  std::string mode;  ///< "star" or "star-star"
  double gamma = 0.0;
  double eta_lo = 0.0;
  double tol = 0.0;
  double runtime_ms = 0.0;
};

/// Certification report with the fields, in order: mode, gamma, eta_lo, tol,
/// status, lower_bound, witness {eta, x, y, value}, boxes_processed, runtime_ms.
/// status is "certified", "counterexample" or "budget_exhausted". lower_bound
/// is null unless certified (for budget_exhausted it is the partial bound).
/// witness is the counterexample point, or the best point seen otherwise.
std::string certification_json(const CertRunInfo& info, const CertResult& result);

/// Tab-separated trace: header "t lambda1 lambda2 lambda3 lambda4 R b eta w",
/// one row per state, 17 significant digits.
void write_trace(std::ostream& out, const FlowTrace& trace);

}  // namespace pinchlab
