#include "sylvester/solver_subgrad.hpp"

#include <algorithm>
#include <cctype>
#include <random>
#include <sstream>
#include <vector>

namespace sylvester {

StepSchedule::StepSchedule(Kind kind, double c) : kind_(kind), c_(c) {
  if (!(c > 0.0) || !std::isfinite(c)) {
    throw Error(ErrorKind::InvalidArgument, "step coefficient must be positive");
  }
}

StepSchedule StepSchedule::parse(const std::string& text) {
  const auto colon = text.find(':');
  const std::string name = text.substr(0, colon);
  double c = 1.0;
  if (colon != std::string::npos) {
    try {
      std::size_t used = 0;
      c = std::stod(text.substr(colon + 1), &used);
      if (used != text.size() - colon - 1) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw Error(ErrorKind::InvalidArgument, "bad step coefficient in '" + text + "'");
    }
  }
  if (name == "harmonic") return harmonic(c);
  if (name == "harmonic_sqrt") return harmonic_sqrt(c);
  if (name == "constant") return constant(c);
  throw Error(ErrorKind::InvalidArgument, "unknown step schedule '" + name + "'");
}

std::string StepSchedule::to_string() const {
  std::ostringstream os;
  switch (kind_) {
    case Kind::Harmonic: os << "harmonic"; break;
    case Kind::HarmonicSqrt: os << "harmonic_sqrt"; break;
    case Kind::Constant: os << "constant"; break;
  }
  os << ':' << c_;
  return os.str();
}

const char* to_string(StopReason reason) {
  switch (reason) {
    case StopReason::MaxIterations: return "max_iters";
    case StopReason::ValueStall: return "value_stall";
    case StopReason::FoundZero: return "found_zero";
    case StopReason::MemberBreak: return "member_break";
    case StopReason::LeftDomain: return "left_domain";
    case StopReason::SmoothingFloor: return "smoothing_floor";
  }
  return "unknown";
}

namespace {

struct Evaluation {
  std::vector<double> intersect;
  std::vector<double> enclose;
  double value = 0.0;
};

void evaluate(const SylvesterInstance& inst, const Point& x, const TimeOptions& opts,
              Evaluation& ev) {
  ev.intersect.resize(inst.intersect_targets.size());
  ev.enclose.resize(inst.enclose_targets.size());
  ev.value = 0.0;
  for (std::size_t i = 0; i < ev.intersect.size(); ++i) {
    ev.intersect[i] = minimal_time(inst.dynamic, inst.intersect_targets[i], x, opts);
    ev.value = std::max(ev.value, ev.intersect[i]);
  }
  for (std::size_t j = 0; j < ev.enclose.size(); ++j) {
    ev.enclose[j] = maximal_time(inst.dynamic, inst.enclose_targets[j], x);
    ev.value = std::max(ev.value, ev.enclose[j]);
  }
}

struct Selection {
  bool intersect = true;
  std::size_t index = 0;
  Vector w;
};

// Smallest active index; intersect targets come first.
Selection select(const SylvesterInstance& inst, const Point& x, const Evaluation& ev,
                 double tie_tol, const TimeOptions& opts) {
  const double threshold = ev.value - tie_tol * std::max(1.0, ev.value);
  for (std::size_t i = 0; i < ev.intersect.size(); ++i) {
    if (ev.intersect[i] < threshold) continue;
    const auto& target = inst.intersect_targets[i];
    if (contains(target, x, opts.membership_tol)) return {true, i, Vector::Zero(x.size())};
    return {true, i, minimal_time_subgradient(inst.dynamic, target, x, opts)};
  }
  for (std::size_t j = 0; j < ev.enclose.size(); ++j) {
    if (ev.enclose[j] < threshold) continue;
    const FarthestPoint fp = farthest_point(inst.enclose_targets[j], x);
    if (fp.distance == 0.0) return {false, j, Vector::Zero(x.size())};
    return {false, j, -gauge_subgradient(inst.dynamic, fp.point - x)};
  }
  // Unreachable: the maximizer always clears the threshold.
  throw Error(ErrorKind::EmptyInstance, "no active target");
}

// Subgradient inequality on random probes plus the normal-cone condition at
// the generalized projection for intersect targets.
bool audit_selection(const SylvesterInstance& inst, const Point& x, const Selection& sel,
                     const SubgradientOptions& opts, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  const auto& target = sel.intersect ? inst.intersect_targets[sel.index]
                                     : inst.enclose_targets[sel.index];
  auto component = [&](const Point& z) {
    return sel.intersect ? minimal_time(inst.dynamic, target, z, opts.time)
                         : maximal_time(inst.dynamic, target, z);
  };
  const double fx = component(x);
  const double sx = objective_S(inst, x, opts.time);
  const double radius = std::max(1.0, fx);
  bool ok = true;
  Point p;
  if (sel.intersect) p = generalized_projection(inst.dynamic, target, x);
  for (std::size_t probe = 0; probe < opts.audit_probes; ++probe) {
    Vector dir(x.size());
    for (auto& d : dir) d = normal(rng);
    const Point z = x + radius * dir;
    const double slack = 1e-8 * std::max(1.0, std::abs(fx));
    if (component(z) < fx + sel.w.dot(z - x) - slack) ok = false;
    if (objective_S(inst, z, opts.time) < sx + sel.w.dot(z - x) - slack) ok = false;
    if (sel.intersect && sel.w.squaredNorm() > 0.0) {
      const Point member = project(target, z);
      if (sel.w.dot(member - p) > 1e-7 * std::max(1.0, (member - p).norm())) ok = false;
    }
  }
  return ok;
}

}  // namespace

Point default_start(const SylvesterInstance& inst) {
  Point sum = Point::Zero(inst.dimension);
  int count = 0;
  auto add = [&](const ConvexSet& s) {
    if (auto a = anchor_point(s)) {
      sum += *a;
      ++count;
    }
  };
  for (const auto& s : inst.intersect_targets) add(s);
  for (const auto& s : inst.enclose_targets) add(s);
  if (count > 0) sum /= double(count);
  return project(inst.constraint, sum);
}

SolverReport solve_subgradient(const SylvesterInstance& inst, std::optional<Point> start,
                               const SubgradientOptions& opts) {
  inst.validate();
  if (opts.max_iterations < 1) throw Error(ErrorKind::InvalidArgument, "max iterations must be >= 1");

  SolverReport report;
  Point x = start ? *start : default_start(inst);
  require_dimension(x, inst.dimension, "starting point");
  if (!contains(inst.constraint, x, 0.0)) {
    x = project(inst.constraint, x);
    report.start_projected = true;
  }

  Evaluation ev;
  evaluate(inst, x, opts.time, ev);
  report.best_point = x;
  report.best_value = ev.value;
  report.value_trace.reserve(std::min<std::size_t>(opts.max_iterations + 1, 1u << 20));
  report.value_trace.push_back(ev.value);

  std::mt19937_64 rng(opts.audit_seed);
  Vector trial(x.size());
  for (std::size_t k = 1; k <= opts.max_iterations; ++k) {
    const Selection sel = select(inst, x, ev, opts.tie_tol, opts.time);
    if (opts.audit_every > 0 && (k - 1) % opts.audit_every == 0) {
      ++report.audits;
      if (!audit_selection(inst, x, sel, opts, rng)) ++report.audit_failures;
    }
    if (sel.w.squaredNorm() == 0.0) {
      report.stop_reason = StopReason::FoundZero;
      break;
    }
    trial = x - opts.schedule.step(k) * sel.w;
    project_into(inst.constraint, trial, x);
    evaluate(inst, x, opts.time, ev);
    if (ev.value < report.best_value) {
      report.best_value = ev.value;
      report.best_point = x;
    }
    report.value_trace.push_back(report.best_value);
    report.iterations = k;

    if (opts.stall_window > 0 && k >= opts.stall_window) {
      const double earlier = report.value_trace[k - opts.stall_window];
      if (earlier - report.best_value < opts.stall_tol) {
        report.stop_reason = StopReason::ValueStall;
        break;
      }
    }
  }
  return report;
}

double error_bound(double d1, double lipschitz, const StepSchedule& schedule, std::size_t k) {
  if (k < 1) throw Error(ErrorKind::InvalidArgument, "error bound needs k >= 1");
  double sum = 0.0;
  double sum_sq = 0.0;
  for (std::size_t i = 1; i <= k; ++i) {
    const double a = schedule.step(i);
    sum += a;
    sum_sq += a * a;
  }
  return (d1 * d1 + lipschitz * lipschitz * sum_sq) / (2.0 * sum);
}

}  // namespace sylvester
