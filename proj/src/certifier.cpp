#include "pinchlab/certifier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <thread>
#include <tuple>
#include <vector>

#include "pinchlab/constants.hpp"

namespace pinchlab {

namespace {

constexpr std::size_t kBatch = 1024;
constexpr double kInf = std::numeric_limits<double>::infinity();

auto full_key(const Box& b) {
  return std::make_tuple(b.eta.lo(), b.x.lo(), b.y.lo(), b.eta.hi(), b.x.hi(), b.y.hi());
}

struct KeyLess {
  bool operator()(const Box& a, const Box& b) const { return full_key(a) < full_key(b); }
};

enum class Fate { Empty, Discharged, Undecided, Split };

struct Outcome {
  Fate fate = Fate::Empty;
  double lower = kInf;        // enclosure lower bound of the contracted box
  bool candidate = false;     // midpoint envelope rigorously negative
  std::optional<Witness> mid;  // set when the midpoint lies in the domain
  double mid_upper = kInf;
  Box self;
  Box children[2];
};

struct Engine {
  double gamma;
  double eta_lo;
  double tol;
  double floor;  // discharge iff enclosure lower bound > floor
  bool refine;
  double scale[3];

  Outcome process(const Box& in) const {
    Outcome out;
    const std::optional<Box> c = contract_to_domain(in, eta_lo);
    if (!c) return out;
    const Box& b = *c;
    out.self = b;
    const Interval enc = envelope_value(b.eta, b.x, b.y, gamma);
    out.lower = enc.lo();

    const double me = b.eta.mid(), mx = b.x.mid(), my = b.y.mid();
    if (in_domain(me, mx, my, eta_lo)) {
      const Interval mv = envelope_value(Interval(me), Interval(mx), Interval(my), gamma);
      out.mid = Witness{me, mx, my, envelope_value(me, mx, my, gamma)};
      out.mid_upper = mv.hi();
      out.candidate = mv.hi() < 0.0;
    }

    if (enc.lo() > floor) {
      out.fate = Fate::Discharged;
      return out;
    }
    const double w[3] = {b.eta.width(), b.x.width(), b.y.width()};
    if (std::max({w[0], w[1], w[2]}) < tol) {
      out.fate = refine && enc.lo() > 0.0 ? Fate::Discharged : Fate::Undecided;
      return out;
    }
    // Widest normalized dimension; ties go to eta, then x, then y.
    int dim = 0;
    double best = -1.0;
    for (int d = 0; d < 3; ++d) {
      const double nw = scale[d] > 0.0 ? w[d] / scale[d] : 0.0;
      if (nw > best) {
        best = nw;
        dim = d;
      }
    }
    auto halves = [](const Interval& v) {
      const double m = v.mid();
      return std::pair{Interval(v.lo(), m), Interval(m, v.hi())};
    };
    out.children[0] = out.children[1] = b;
    Interval Box::*member = dim == 0 ? &Box::eta : dim == 1 ? &Box::x : &Box::y;
    const auto [left, right] = halves(b.*member);
    out.children[0].*member = left;
    out.children[1].*member = right;
    out.fate = Fate::Split;
    return out;
  }
};

void process_batch(const Engine& engine, const std::vector<Box>& batch, std::vector<Outcome>& out,
                   unsigned threads) {
  out.resize(batch.size());
  const std::size_t n = batch.size();
  if (threads <= 1 || n < 2 * threads) {
    for (std::size_t i = 0; i < n; ++i) out[i] = engine.process(batch[i]);
    return;
  }
  std::vector<std::jthread> pool;
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      const std::size_t begin = n * t / threads;
      const std::size_t end = n * (t + 1) / threads;
      for (std::size_t i = begin; i < end; ++i) out[i] = engine.process(batch[i]);
    });
  }
}

struct Candidate {
  Box box;
  Witness witness;
  double upper;
};

CertResult run(const Engine& engine, std::size_t max_boxes, unsigned threads) {
  std::set<Box, KeyLess> queue;
  queue.insert(Box{Interval(engine.eta_lo, 1.0), Interval(0.0, (1.0 - engine.eta_lo) / 4.0), Interval(0.0, 0.5)});

  CertResult result;
  double lower = kInf;
  double undecided_lower = kInf;
  std::size_t undecided = 0;
  std::optional<Candidate> cand;
  double best_upper = kInf;

  std::vector<Box> batch;
  std::vector<Outcome> outcomes;
  while (!queue.empty() && result.boxes_processed < max_boxes) {
    const std::size_t take = std::min({kBatch, queue.size(), max_boxes - result.boxes_processed});
    batch.clear();
    auto it = queue.begin();
    for (std::size_t i = 0; i < take; ++i) batch.push_back(*it++);
    queue.erase(queue.begin(), it);

    process_batch(engine, batch, outcomes, threads);

    for (std::size_t i = 0; i < batch.size(); ++i) {
      const Outcome& o = outcomes[i];
      ++result.boxes_processed;
      if (o.mid && o.mid_upper < best_upper) {
        best_upper = o.mid_upper;
        result.best_point = o.mid;
      }
      if (o.candidate && (!cand || KeyLess{}(o.self, cand->box))) {
        cand = Candidate{o.self, *o.mid, o.mid_upper};
      }
      switch (o.fate) {
        case Fate::Empty: break;
        case Fate::Discharged: lower = std::min(lower, o.lower); break;
        case Fate::Undecided:
          ++undecided;
          undecided_lower = std::min(undecided_lower, o.lower);
          break;
        case Fate::Split:
          queue.insert(o.children[0]);
          queue.insert(o.children[1]);
          break;
      }
    }
    // Descendants never have a smaller lo-key than their ancestor, so boxes
    // beyond the best candidate's lo-key cannot improve on it.
    if (cand) {
      const Box& c = cand->box;
      const Box probe{Interval(c.eta.lo(), kInf), Interval(c.x.lo(), kInf), Interval(c.y.lo(), kInf)};
      queue.erase(queue.upper_bound(probe), queue.end());
    }
  }

  result.best_upper = best_upper;
  if (cand) {
    result.status = Counterexample{cand->witness, cand->upper};
  } else if (queue.empty() && undecided == 0) {
    result.status = Certified{lower};
  } else {
    double best_lower = std::min(lower, undecided_lower);
    for (const Box& b : queue) {
      if (auto c = contract_to_domain(b, engine.eta_lo)) {
        best_lower = std::min(best_lower, envelope_value(c->eta, c->x, c->y, engine.gamma).lo());
      }
    }
    result.status = BudgetExhausted{best_lower, best_upper, queue.size() + undecided};
  }
  return result;
}

}  // namespace

CertResult certify(double gamma, double eta_lo, double tol, std::size_t max_boxes, const CertifyOptions& options) {
  if (!(eta_lo > 0.0 && eta_lo <= 1.0)) throw std::invalid_argument("certify requires 0 < eta_lo <= 1");
  if (!(tol > 0.0)) throw std::invalid_argument("certify requires tol > 0");
  if (max_boxes == 0) throw std::invalid_argument("certify requires max_boxes > 0");
  if (!(gamma >= 0.0) || !std::isfinite(gamma)) throw std::invalid_argument("certify requires finite gamma >= 0");
  if (options.refine_gap < 0.0 || options.refine_gap >= 1.0) {
    throw std::invalid_argument("refine_gap must lie in [0, 1)");
  }
  const unsigned threads = options.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : options.threads;

  Engine engine{gamma, eta_lo, tol, 0.0, false, {1.0 - eta_lo, (1.0 - eta_lo) / 4.0, 0.5}};
  CertResult first = run(engine, max_boxes, threads);
  if (!first.certified() || options.refine_gap == 0.0) return first;

  engine.floor = (1.0 - options.refine_gap) * first.best_upper;
  engine.refine = true;
  CertResult second = run(engine, std::min(max_boxes, options.refine_boxes), threads);
  // Either outcome of the second pass carries a rigorous bound over the whole
  // domain; keep the larger one.
  double refined = -kInf;
  if (second.certified()) refined = std::get<Certified>(second.status).lower_bound;
  if (second.exhausted()) refined = std::get<BudgetExhausted>(second.status).best_lower;
  auto& lb = std::get<Certified>(first.status).lower_bound;
  lb = std::max(lb, refined);
  first.boxes_processed += second.boxes_processed;
  if (second.best_upper < first.best_upper) {
    first.best_upper = second.best_upper;
    first.best_point = second.best_point;
  }
  return first;
}

GridMin approx_min(double gamma, double eta_lo, int grid) {
  if (grid < 2) throw std::invalid_argument("approx_min requires grid >= 2");
  GridMin best{kInf, 0.0, 0.0, 0.0};
  const double n = grid - 1;
  for (int i = 0; i < grid; ++i) {
    const double eta = i == grid - 1 ? 1.0 : eta_lo + (1.0 - eta_lo) * (i / n);
    for (int j = 0; j < grid; ++j) {
      const double x = (1.0 - eta) / 4.0 * (j / n);
      for (int k = 0; k < grid; ++k) {
        const double y = std::max(0.0, eta / 2.0 - x) * (k / n);
        const double v = envelope_value(eta, x, y, gamma);
        if (v < best.value) best = {v, eta, x, y};
      }
    }
  }
  return best;
}

double mode_threshold(PinchMode mode) {
  return mode == PinchMode::Star ? constants().c_tilde : 1.0 / 3.0;
}

std::string_view mode_name(PinchMode mode) { return mode == PinchMode::Star ? "star" : "star-star"; }

PinchMode parse_mode(std::string_view name) {
  if (name == "star") return PinchMode::Star;
  if (name == "star-star" || name == "starstar") return PinchMode::StarStar;
  throw std::invalid_argument("unknown mode '" + std::string(name) + "' (expected star or star-star)");
}

DeltaBound delta_of(double gamma, double eta0, double r0, PinchMode mode, const DeltaOptions& options) {
  if (!(r0 > 0.0)) throw std::invalid_argument("delta_of requires r0 > 0");
  const double threshold = mode_threshold(mode);
  if (!(eta0 > threshold)) {
    throw ThresholdViolation("eta0 must exceed the " + std::string(mode_name(mode)) + " threshold " +
                             std::to_string(threshold));
  }
  const double eta_lo = std::min(1.0, 0.5 * (eta0 + threshold));
  CertResult r = certify(gamma, eta_lo, options.tol, options.max_boxes, {options.threads, options.refine_gap});
  if (!r.certified()) {
    throw CertificationFailure(r.counterexample() ? "envelope has a counterexample" : "certification budget exhausted",
                               std::move(r));
  }
  const double m = std::get<Certified>(r.status).lower_bound;
  return DeltaBound{std::min(1.0, 2.0 * m * r0), eta_lo, m, std::move(r)};
}

}  // namespace pinchlab
