#include "sylvester/directional.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace sylvester {

void DirectionalInstance::validate() const {
  if (dimension < 1) throw Error(ErrorKind::InvalidArgument, "dimension must be >= 1");
  if (targets.empty()) throw Error(ErrorKind::EmptyInstance, "instance has no targets");
  auto check = [&](const ConvexSet& s, const char* role) {
    sylvester::validate(s);
    const auto d = sylvester::dimension(s);
    if (d && *d != dimension) {
      throw Error(ErrorKind::DimensionMismatch, std::string(role) + " has dimension " +
                                                    std::to_string(*d) + ", instance has " +
                                                    std::to_string(dimension));
    }
  };
  check(constraint, "constraint");
  for (const auto& t : targets) {
    check(t.set, "directional target");
    require_dimension(t.direction, dimension, "direction");
    if (t.direction.squaredNorm() == 0.0 || !t.direction.allFinite()) {
      throw Error(ErrorKind::ZeroVector, "directions must be finite and nonzero");
    }
  }
}

DirectionalValue directional_time(const ConvexSet& target, const Vector& v, const Point& x) {
  return ray_entry_time(target, x, v);
}

Point directional_projection(const ConvexSet& target, const Vector& v, const Point& x) {
  const DirectionalValue t = directional_time(target, v, x);
  if (!t) throw Error(ErrorKind::NotInDomain, "the ray from x along v misses the target");
  return x + *t * v;
}

Vector subgradient_from_normal_cone(const NormalConeRep& cone, const Vector& v) {
  for (const Vector& w : cone.generators) {
    const double slope = w.dot(v);
    if (slope < 0.0) return -w / slope;
  }
  throw Error(ErrorKind::NoValidGenerator, "no normal-cone generator has <w, v> < 0");
}

Vector directional_subgradient(const ConvexSet& target, const Vector& v, const Point& x,
                               double tol) {
  const DirectionalValue t = directional_time(target, v, x);
  if (!t) throw Error(ErrorKind::NotInDomain, "the ray from x along v misses the target");
  if (*t == 0.0) return Vector::Zero(x.size());
  const Point entry = x + *t * v;
  const double scaled_tol = tol * std::max(1.0, entry.norm());
  return subgradient_from_normal_cone(normal_cone(target, entry, scaled_tol), v);
}

DirectionalValue objective_S1(const DirectionalInstance& inst, const Point& x) {
  require_dimension(x, inst.dimension, "point");
  if (inst.targets.empty()) throw Error(ErrorKind::EmptyInstance, "instance has no targets");
  double value = 0.0;
  for (const auto& t : inst.targets) {
    const DirectionalValue ti = directional_time(t.set, t.direction, x);
    if (!ti) return std::nullopt;
    value = std::max(value, *ti);
  }
  return value;
}

std::vector<std::size_t> active_set(const DirectionalInstance& inst, const Point& x,
                                    double tie_tol) {
  const DirectionalValue s = objective_S1(inst, x);
  if (!s) return {};
  const double threshold = *s - tie_tol * std::max(1.0, *s);
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < inst.targets.size(); ++i) {
    const auto& t = inst.targets[i];
    if (*directional_time(t.set, t.direction, x) >= threshold) out.push_back(i);
  }
  return out;
}

SolverReport solve_directional(const DirectionalInstance& inst, std::optional<Point> start,
                               const DirectionalOptions& opts) {
  inst.validate();
  if (opts.max_iterations < 1) throw Error(ErrorKind::InvalidArgument, "max iterations must be >= 1");

  SolverReport report;
  Point x;
  if (start) {
    x = *start;
  } else {
    x = Point::Zero(inst.dimension);
    int count = 0;
    for (const auto& t : inst.targets) {
      if (auto a = anchor_point(t.set)) {
        x += *a;
        ++count;
      }
    }
    if (count > 0) x /= double(count);
  }
  require_dimension(x, inst.dimension, "starting point");
  if (!contains(inst.constraint, x, 0.0)) {
    x = project(inst.constraint, x);
    report.start_projected = true;
  }
  DirectionalValue value = objective_S1(inst, x);
  if (!value) throw Error(ErrorKind::NotInDomain, "starting point lies outside dom S_1");

  report.best_point = x;
  report.best_value = *value;
  report.value_trace.push_back(*value);

  for (std::size_t k = 1; k <= opts.max_iterations; ++k) {
    const std::size_t i = active_set(inst, x, opts.tie_tol).front();
    const auto& target = inst.targets[i];
    if (*directional_time(target.set, target.direction, x) == 0.0) {
      report.stop_reason = StopReason::MemberBreak;
      break;
    }
    const Vector w = directional_subgradient(target.set, target.direction, x, opts.membership_tol);
    const Point next = project(inst.constraint, x - opts.schedule.step(k) * w);
    const DirectionalValue next_value = objective_S1(inst, next);
    if (!next_value) {
      report.stop_reason = StopReason::LeftDomain;
      break;
    }
    x = next;
    if (*next_value < report.best_value) {
      report.best_value = *next_value;
      report.best_point = x;
    }
    report.value_trace.push_back(report.best_value);
    report.iterations = k;

    if (opts.stall_window > 0 && k >= opts.stall_window) {
      if (report.value_trace[k - opts.stall_window] - report.best_value < opts.stall_tol) {
        report.stop_reason = StopReason::ValueStall;
        break;
      }
    }
  }
  return report;
}

}  // namespace sylvester
