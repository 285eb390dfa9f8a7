#pragma once

#include <string>
#include <vector>

namespace pinchlab {

/// One verified statement: a computed value against its claimed value.
struct Check {
  std::string name;
  double value = 0.0;
  double expected = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::string note;
};

struct CheckReport {
  std::string title;
  std::vector<Check> checks;

  bool all_pass() const {
    for (const Check& c : checks)
      if (!c.pass) return false;
    return true;
  }

  /// Adds |value - expected| <= tolerance.
  Check& expect_near(std::string name, double value, double expected, double tolerance,
                     std::string note = {});
  /// Adds a statement established by other means (an interval bound, a sign).
  Check& expect_true(std::string name, bool ok, double value, double expected, std::string note = {});
};

}  // namespace pinchlab
