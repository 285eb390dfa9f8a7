// pinchlab: constants, certification, flow traces and model checks.
//
// Exit codes: 0 success; 1 a check failed; 2 counterexample; 3 certification
// budget exhausted; 5 integration step too large; 64 usage error.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "pinchlab/certifier.hpp"
#include "pinchlab/constants.hpp"
#include "pinchlab/errors.hpp"
#include "pinchlab/flow.hpp"
#include "pinchlab/model_spaces.hpp"
#include "pinchlab/report.hpp"

namespace {

using namespace pinchlab;

constexpr int kExitFail = 1;
constexpr int kExitCounterexample = 2;
constexpr int kExitBudget = 3;
constexpr int kExitStep = 5;
constexpr int kExitUsage = 64;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void require(bool ok, const std::string& what) {
  if (!ok) throw UsageError(what);
}

struct ConstantsArgs {
  int digits = 5;
};

struct CertifyArgs {
  double gamma = NAN;
  double eta_lo = NAN;
  std::string mode = "star";
  double tol = 1e-6;
  std::size_t max_boxes = 10'000'000;
  unsigned threads = 0;
  double refine_gap = 0.0;
  std::string output;
};

struct SimulateArgs {
  std::string model;
  double k = 1.0;
  std::vector<double> lambda;
  std::string policy = "zero";
  std::optional<double> w;
  std::optional<double> w_ratio;
  double gamma = 2.0;
  double dt = 1e-4;
  double t_end = 0.1;
  double r_cap = 1e6;
  std::string output = "trace.txt";
};

struct ModelcheckArgs {
  double k = 1.0;
};

unsigned resolve_threads(unsigned requested) {
  if (requested > 0) return requested;
  return std::max(1u, std::thread::hardware_concurrency());
}

int run_constants(const ConstantsArgs& a) {
  require(a.digits >= 1 && a.digits <= 15, "--digits must lie in [1, 15]");
  const Constants& c = constants();
  std::printf("c_tilde        %.17g  (%.*f)\n", c.c_tilde, a.digits, c.c_tilde);
  std::printf("c0             %.17g  (%.*f)\n", c.c0, a.digits, c.c0);
  std::printf("gamma_star     %.17g\n", c.gamma_star);
  std::printf("gamma_starstar %.17g\n", c.gamma_starstar);
  const CheckReport id = constants_eval(0.5 * std::pow(10.0, -a.digits));
  const CheckReport aux = aux_checks();
  std::cout << render_checks(id) << render_checks(aux);
  return id.all_pass() && aux.all_pass() ? 0 : kExitFail;
}

int run_certify(const CertifyArgs& a) {
  require(std::isfinite(a.gamma) && a.gamma >= 0.0, "--gamma must be a finite number >= 0");
  const PinchMode mode = [&] {
    try {
      return parse_mode(a.mode);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }();
  const double eta_lo = std::isnan(a.eta_lo) ? mode_threshold(mode) : a.eta_lo;
  require(eta_lo > 0.0 && eta_lo <= 1.0, "--eta-lo must lie in (0, 1]");
  require(a.tol > 0.0, "--tol must be > 0");
  require(a.max_boxes > 0, "--max-boxes must be > 0");
  require(a.refine_gap >= 0.0 && a.refine_gap < 1.0, "--refine-gap must lie in [0, 1)");

  const auto start = std::chrono::steady_clock::now();
  const CertResult r = certify(a.gamma, eta_lo, a.tol, a.max_boxes, {resolve_threads(a.threads), a.refine_gap});
  const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

  const std::string json =
      certification_json({std::string(mode_name(mode)), a.gamma, eta_lo, a.tol, ms}, r);
  if (a.output.empty()) {
    std::cout << json << '\n';
  } else {
    std::ofstream out(a.output);
    require(static_cast<bool>(out), "cannot open " + a.output);
    out << json << '\n';
  }
  if (r.certified()) return 0;
  return r.counterexample() ? kExitCounterexample : kExitBudget;
}

WeylPolicy make_policy(const SimulateArgs& a, const std::optional<ModelSpace>& model) {
  if (a.policy == "zero") return WeylPolicy::zero();
  if (a.policy == "constant") {
    require(a.w.has_value(), "--policy constant needs --w");
    return WeylPolicy::constant(*a.w);
  }
  if (a.policy == "worst-star" || a.policy == "worst-star-star") {
    require(std::isfinite(a.gamma) && a.gamma >= 0.0, "--gamma must be a finite number >= 0");
    return a.policy == "worst-star" ? WeylPolicy::worst_star(a.gamma) : WeylPolicy::worst_star_star(a.gamma);
  }
  if (a.policy == "matched") {
    if (a.w_ratio) return WeylPolicy::matched(*a.w_ratio);
    require(model.has_value() && model->kind != ModelKind::Flat4, "--policy matched needs --w-ratio or a curved --model");
    return WeylPolicy::matched(matched_ratio(model_curvature(*model)));
  }
  throw UsageError("unknown policy '" + a.policy + "'");
}

int run_simulate(const SimulateArgs& a) {
  require(a.model.empty() != a.lambda.empty(), "give exactly one of --model and --lambda");
  std::optional<ModelSpace> model;
  FlowState s0;
  if (!a.model.empty()) {
    try {
      model = ModelSpace{parse_model_kind(a.model), a.k};
      s0.lambda = ricci_spectrum(model_curvature(*model)).lambda;
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  } else {
    require(a.lambda.size() == 4, "--lambda takes four comma-separated values");
    for (int i = 0; i < 4; ++i) {
      require(std::isfinite(a.lambda[i]), "--lambda values must be finite");
      s0.lambda[i] = a.lambda[i];
    }
  }
  const WeylPolicy policy = make_policy(a, model);
  require(std::isfinite(a.dt) && a.dt > 0.0, "--dt must be > 0");
  require(std::isfinite(a.t_end) && a.t_end > 0.0, "--t-end must be > 0");
  require(a.r_cap > s0.scalar(), "--r-cap must exceed the initial scalar curvature");

  FlowTrace tr;
  try {
    tr = integrate(s0, policy, a.dt, a.t_end, a.r_cap);
  } catch (const StepTooLarge& e) {
    std::cerr << "pinchlab: " << e.what() << '\n';
    return kExitStep;
  }
  {
    std::ofstream out(a.output);
    require(static_cast<bool>(out), "cannot open " + a.output);
    write_trace(out, tr);
  }

  const FlowState& last = tr.states.back();
  std::printf("policy %s\n", std::string(policy_name(policy.kind)).c_str());
  std::printf("steps %zu\n", tr.states.size() - 1);
  std::printf("termination %s\n", tr.termination == Termination::EndTime ? "end_time" : "blowup");
  std::printf("final t %.17g\n", last.t);
  std::printf("final R %.17g\n", last.scalar());

  std::vector<double> eta;
  for (const FlowState& s : tr.states) {
    const double r = s.scalar();
    if (r == 0.0) {
      std::printf("eta undefined (R = 0)\n");
      return 0;
    }
    eta.push_back(((s.lambda[2] + s.lambda[3]) - (s.lambda[0] + s.lambda[1])) / r);
  }
  std::printf("final eta %.17g\n", eta.back());
  double drift = 0.0;
  bool down = true;
  bool up = true;
  for (std::size_t n = 0; n < eta.size(); ++n) {
    drift = std::max(drift, std::abs(eta[n] - eta[0]));
    if (n > 0) {
      down = down && eta[n] < eta[n - 1];
      up = up && eta[n] > eta[n - 1];
    }
  }
  if (drift <= 1e-9) {
    std::printf("eta constant %.6f\n", eta[0]);
  } else if (down) {
    std::printf("eta decreasing\n");
  } else if (up) {
    std::printf("eta increasing\n");
  } else {
    std::printf("eta non-monotone\n");
  }
  return 0;
}

int run_modelcheck(const ModelcheckArgs& a) {
  require(std::isfinite(a.k) && a.k > 0.0, "--k must be > 0");
  bool ok = true;
  for (ModelKind kind : {ModelKind::Flat4, ModelKind::SphereS4, ModelKind::S3xR, ModelKind::S2xR2}) {
    CheckReport rep = remark_report({kind, a.k});
    rep.title = std::string(model_name(kind));
    std::cout << render_checks(rep);
    ok = ok && rep.all_pass();
  }
  return ok ? 0 : kExitFail;
}

}  // namespace

// Expands "--config FILE" after the subcommand into the flags it lists, placed
// ahead of the command-line flags so that those take precedence.
std::vector<std::string> expand_config(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  if (args.size() < 2) return args;
  for (std::size_t i = 2; i < args.size(); ++i) {
    std::string path;
    std::size_t used = 1;
    if (args[i] == "--config" && i + 1 < args.size()) {
      path = args[i + 1];
      used = 2;
    } else if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
    } else {
      continue;
    }
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read config file '" + path + "'");
    std::vector<std::string> flags;
    for (const CLI::ConfigItem& item : CLI::ConfigINI().from_config(in)) {
      if (!item.parents.empty() && item.parents.front() != args[1]) continue;
      std::string name = item.name;
      std::replace(name.begin(), name.end(), '_', '-');
      if (name == "config") continue;
      flags.push_back("--" + name);
      flags.insert(flags.end(), item.inputs.begin(), item.inputs.end());
    }
    args.erase(args.begin() + static_cast<std::ptrdiff_t>(i), args.begin() + static_cast<std::ptrdiff_t>(i + used));
    args.insert(args.begin() + 2, flags.begin(), flags.end());
    break;
  }
  return args;
}

int main(int argc, char** argv) {
  CLI::App app{"Pinching certification and curvature flow toolkit"};
  app.require_subcommand(1);

  ConstantsArgs ca;
  auto* constants_cmd = app.add_subcommand("constants", "Evaluate the sharp constants and auxiliary inequalities");
  constants_cmd->add_option("--digits", ca.digits, "Digits for the rounded display and check tolerance")
      ->capture_default_str();

  CertifyArgs cert;
  auto* certify_cmd = app.add_subcommand("certify", "Certify positivity of the pinching envelope");
  certify_cmd->add_option("--gamma", cert.gamma, "Pinching constant")->required();
  certify_cmd->add_option("--eta-lo", cert.eta_lo, "Lower end of the eta range (default: mode threshold)");
  certify_cmd->add_option("--mode", cert.mode, "star or star-star")->capture_default_str();
  certify_cmd->add_option("--tol", cert.tol, "Smallest box width")->capture_default_str();
  certify_cmd->add_option("--max-boxes", cert.max_boxes, "Box budget")->capture_default_str();
  certify_cmd->add_option("--threads", cert.threads, "Worker threads (0: available parallelism)")
      ->envname("PINCHLAB_THREADS");
  certify_cmd->add_option("--refine-gap", cert.refine_gap, "Tighten the lower bound to within this fraction")
      ->capture_default_str();
  certify_cmd->add_option("--output", cert.output, "Write the JSON report here instead of stdout");

  SimulateArgs sim;
  auto* simulate_cmd = app.add_subcommand("simulate", "Integrate the eigenvalue flow");
  simulate_cmd->add_option("--model", sim.model, "flat, s4, s3xr or s2xr2");
  simulate_cmd->add_option("--k", sim.k, "Curvature of the model factor")->capture_default_str();
  simulate_cmd->add_option("--lambda", sim.lambda, "Initial Ricci eigenvalues a,b,c,d")->delimiter(',');
  simulate_cmd->add_option("--policy", sim.policy, "zero, constant, worst-star, worst-star-star or matched")
      ->capture_default_str();
  simulate_cmd->add_option("--w", sim.w, "Weyl value for --policy constant");
  simulate_cmd->add_option("--w-ratio", sim.w_ratio, "W/R ratio for --policy matched");
  simulate_cmd->add_option("--gamma", sim.gamma, "Pinching constant of the worst policies")->capture_default_str();
  simulate_cmd->add_option("--dt", sim.dt, "Step size")->capture_default_str();
  simulate_cmd->add_option("--t-end", sim.t_end, "End time")->capture_default_str();
  simulate_cmd->add_option("--r-cap", sim.r_cap, "Stop once R exceeds this")->capture_default_str();
  simulate_cmd->add_option("--output", sim.output, "Trace file")->capture_default_str();

  ModelcheckArgs mc;
  auto* modelcheck_cmd = app.add_subcommand("modelcheck", "Check the model-space sharpness data");
  modelcheck_cmd->add_option("--k", mc.k, "Curvature of the model factor")->capture_default_str();

  for (CLI::App* sub : {constants_cmd, certify_cmd, simulate_cmd, modelcheck_cmd}) {
    sub->add_option("--config", "key=value file pre-populating any flag");
    for (CLI::Option* opt : sub->get_options()) opt->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  }
  simulate_cmd->get_option("--lambda")->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);

  try {
    std::vector<std::string> args = expand_config(argc, argv);
    args.erase(args.begin());
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const UsageError& e) {
    std::cerr << "pinchlab: " << e.what() << '\n';
    return kExitUsage;
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*constants_cmd) return run_constants(ca);
    if (*certify_cmd) return run_certify(cert);
    if (*simulate_cmd) return run_simulate(sim);
    if (*modelcheck_cmd) return run_modelcheck(mc);
  } catch (const UsageError& e) {
    std::cerr << "pinchlab: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "pinchlab: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "pinchlab: " << e.what() << '\n';
    return kExitFail;
  }
  return kExitUsage;
}
