#include "pinchlab/report.hpp"

#include <cmath>
#include <cstdio>
#include <utility>

#include <json.hpp>

namespace pinchlab {

Check& CheckReport::expect_near(std::string name, double value, double expected, double tolerance,
                                std::string note) {
  const bool pass = std::isfinite(value) && std::abs(value - expected) <= tolerance;
  checks.push_back({std::move(name), value, expected, tolerance, pass, std::move(note)});
  return checks.back();
}

Check& CheckReport::expect_true(std::string name, bool ok, double value, double expected, std::string note) {
  checks.push_back({std::move(name), value, expected, 0.0, ok, std::move(note)});
  return checks.back();
}

namespace {

std::string format(const char* fmt, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, v);
  return buf;
}

std::string g17(double v) { return format("%.17g", v); }

}  // namespace

std::string render_checks(const CheckReport& report) {
  std::string out;
  if (!report.title.empty()) out += "[" + report.title + "]\n";
  for (const Check& c : report.checks) {
    out += "  " + c.name + " = " + g17(c.value) + " (" + format("%.5f", c.value) + ") expected " + g17(c.expected);
    if (c.tolerance > 0.0) out += " tol " + format("%.1e", c.tolerance);
    out += c.pass ? " PASS" : " FAIL";
    if (!c.note.empty()) out += "  # " + c.note;
    out += '\n';
  }
  return out;
}

std::string certification_json(const CertRunInfo& info, const CertResult& result) {
  nlohmann::ordered_json j;
  j["mode"] = info.mode;
  j["gamma"] = info.gamma;
  j["eta_lo"] = info.eta_lo;
  j["tol"] = info.tol;

  const Witness* witness = result.best_point ? &*result.best_point : nullptr;
  if (const auto* c = std::get_if<Certified>(&result.status)) {
    j["status"] = "certified";
    j["lower_bound"] = c->lower_bound;
  } else if (const auto* x = std::get_if<Counterexample>(&result.status)) {
    j["status"] = "counterexample";
    j["lower_bound"] = nullptr;
    witness = &x->witness;
  } else {
    const auto& e = std::get<BudgetExhausted>(result.status);
    j["status"] = "budget_exhausted";
    j["lower_bound"] = std::isfinite(e.best_lower) ? nlohmann::ordered_json(e.best_lower) : nullptr;
  }
  if (witness) {
    j["witness"] = {{"eta", witness->eta}, {"x", witness->x}, {"y", witness->y}, {"value", witness->value}};
  } else {
    j["witness"] = nullptr;
  }
  j["boxes_processed"] = result.boxes_processed;
  j["runtime_ms"] = info.runtime_ms;
  return j.dump(2);
}

void write_trace(std::ostream& out, const FlowTrace& trace) {
  out << "t\tlambda1\tlambda2\tlambda3\tlambda4\tR\tb\teta\tw\n";
  for (std::size_t n = 0; n < trace.states.size(); ++n) {
    const FlowState& s = trace.states[n];
    const auto& l = s.lambda;
    const double r = s.scalar();
    const double b = (l[2] + l[3]) - (l[0] + l[1]);
    const double eta = r != 0.0 ? b / r : std::nan("");
    const double row[] = {s.t, l[0], l[1], l[2], l[3], r, b, eta, trace.w[n]};
    for (std::size_t k = 0; k < std::size(row); ++k) {
      if (k) out << '\t';
      out << g17(row[k]);
    }
    out << '\n';
  }
}

}  // namespace pinchlab
