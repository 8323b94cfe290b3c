#include "sylvester/timefns.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace sylvester {
namespace {

// Euclidean projection of y onto the L1 ball of radius t about the origin
// (sort-and-threshold).
Vector project_l1_ball(const Vector& y, double t) {
  if (y.cwiseAbs().sum() <= t) return y;
  if (t <= 0.0) return Vector::Zero(y.size());
  std::vector<double> mags(y.size());
  for (Eigen::Index i = 0; i < y.size(); ++i) mags[i] = std::abs(y[i]);
  std::sort(mags.begin(), mags.end(), std::greater<>());
  double cumulative = 0.0;
  double theta = 0.0;
  for (std::size_t k = 0; k < mags.size(); ++k) {
    cumulative += mags[k];
    const double candidate = (cumulative - t) / double(k + 1);
    if (mags[k] > candidate) theta = candidate;
  }
  Vector out(y.size());
  for (Eigen::Index i = 0; i < y.size(); ++i) {
    out[i] = std::copysign(std::max(std::abs(y[i]) - theta, 0.0), y[i]);
  }
  return out;
}

// Projection of `y` onto the scaled gauge set x + t F for the polyhedral dynamics.
Vector project_onto_scaled_dynamic(const Dynamic& dynamic, const Point& x, double t,
                                   const Point& y) {
  const Vector rel = y - x;
  if (dynamic.kind() == Dynamic::Kind::LInfBall) {
    return x + rel.cwiseMax(-t).cwiseMin(t);
  }
  return x + project_l1_ball(rel, t);
}

// T_F(x; B(c, r)) = min{t : d(c; x + tF) <= r}; the left side is
// nonincreasing in t, so bisection is exact up to rounding.
Point ball_generalized_projection(const Dynamic& dynamic, const Ball& ball, const Point& x) {
  double lo = 0.0;
  double hi = gauge(dynamic, ball.center - x);
  for (int iter = 0; iter < 200 && hi - lo > 1e-15 * std::max(1.0, hi); ++iter) {
    const double mid = 0.5 * (lo + hi);
    const Vector q = project_onto_scaled_dynamic(dynamic, x, mid, ball.center);
    if ((q - ball.center).norm() <= ball.radius) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  const Vector q = project_onto_scaled_dynamic(dynamic, x, hi, ball.center);
  return project(ConvexSet{ball}, q);
}

// Lowest point of x + tF touching the parabola epigraph. Any contact can be
// moved straight up to the top boundary of x + tF, so it suffices to minimize
// the parabola along that boundary: u in [x1 - t, x1 + t] at height
// x2 + t (LInf) or x2 + t - |u - x1| (L1).
struct ParabolaContact {
  double u = 0.0;
  double gap = 0.0;  // f(u) - top(u); contact iff gap <= 0
};

ParabolaContact parabola_contact(const Dynamic& dynamic, const ParabolaEpigraph2D& p,
                                 const Point& x, double t) {
  double u = p.shift;
  if (dynamic.kind() == Dynamic::Kind::L1Ball) u = std::clamp(x[0], p.shift - 0.5, p.shift + 0.5);
  u = std::clamp(u, x[0] - t, x[0] + t);
  double top = x[1] + t;
  if (dynamic.kind() == Dynamic::Kind::L1Ball) top -= std::abs(u - x[0]);
  return {u, (u - p.shift) * (u - p.shift) + p.offset - top};
}

Point parabola_generalized_projection(const Dynamic& dynamic, const ParabolaEpigraph2D& p,
                                      const Point& x) {
  double lo = 0.0;
  double hi = 1.0;
  while (parabola_contact(dynamic, p, x, hi).gap > 0.0) {
    lo = hi;
    hi *= 2.0;
  }
  for (int iter = 0; iter < 200 && hi - lo > 1e-15 * std::max(1.0, hi); ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (parabola_contact(dynamic, p, x, mid).gap <= 0.0) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  const ParabolaContact c = parabola_contact(dynamic, p, x, hi);
  Point w(2);
  w << c.u, (c.u - p.shift) * (c.u - p.shift) + p.offset;
  return w;
}

// Unit-support scaling of an outward normal: n / sigma_F(n) lies in
// N(w; set) and in the polar of F with <., w - x> = -rho_F(w - x) at the optimum.
Vector scaled_normal(const Dynamic& dynamic, const Vector& normal) {
  const double s = support(dynamic, normal);
  if (s == 0.0) return Vector::Zero(normal.size());
  return normal / s;
}

void check_index(std::size_t idx, std::size_t count, const char* what) {
  if (idx >= count) {
    throw Error(ErrorKind::InvalidArgument,
                std::string(what) + " index " + std::to_string(idx) + " out of range");
  }
}

}  // namespace

void SylvesterInstance::validate() const {
  if (dimension < 1) throw Error(ErrorKind::InvalidArgument, "dimension must be >= 1");
  if (target_count() == 0) throw Error(ErrorKind::EmptyInstance, "instance has no targets");
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
  for (const auto& s : intersect_targets) check(s, "intersect target");
  for (const auto& s : enclose_targets) {
    check(s, "enclose target");
    if (!is_bounded(s)) throw Error(ErrorKind::UnboundedSet, "enclose targets must be bounded");
  }
}

Point generalized_projection(const Dynamic& dynamic, const ConvexSet& set, const Point& x) {
  if (dynamic.is_euclidean_like()) return project(set, x);
  if (contains(set, x, 0.0)) return x;
  if (std::holds_alternative<Box>(set) || std::holds_alternative<Singleton>(set) ||
      std::holds_alternative<WholeSpace>(set)) {
    // Coordinatewise clamping minimizes every |w_i - x_i| at once, hence any
    // coordinate-monotone gauge.
    return project(set, x);
  }
  if (const auto* h = std::get_if<Halfspace>(&set)) {
    Vector d = Vector::Zero(x.size());
    if (dynamic.kind() == Dynamic::Kind::LInfBall) {
      for (Eigen::Index i = 0; i < d.size(); ++i) {
        d[i] = h->normal[i] > 0.0 ? 1.0 : (h->normal[i] < 0.0 ? -1.0 : 0.0);
      }
    } else {
      Eigen::Index k = 0;
      h->normal.cwiseAbs().maxCoeff(&k);
      d[k] = h->normal[k] > 0.0 ? 1.0 : -1.0;
    }
    const double t = (h->normal.dot(x) - h->offset) / support(dynamic, h->normal);
    return x - t * d;
  }
  if (const auto* b = std::get_if<Ball>(&set)) {
    return ball_generalized_projection(dynamic, *b, x);
  }
  if (const auto* p = std::get_if<ParabolaEpigraph2D>(&set)) {
    return parabola_generalized_projection(dynamic, *p, x);
  }
  return x;
}

double minimal_time(const Dynamic& dynamic, const ConvexSet& set, const Point& x,
                    const TimeOptions& opts) {
  if (dynamic.is_euclidean_like()) return distance(set, x) / dynamic.scale();
  if (contains(set, x, opts.membership_tol)) return 0.0;
  return gauge(dynamic, generalized_projection(dynamic, set, x) - x);
}

double maximal_time(const Dynamic& dynamic, const ConvexSet& set, const Point& x) {
  if (dynamic.is_euclidean_like()) return farthest_point(set, x).distance / dynamic.scale();
  if (std::holds_alternative<Box>(set) || std::holds_alternative<Singleton>(set)) {
    // The Euclidean-farthest corner maximizes each |q_i - x_i| separately.
    return gauge(dynamic, farthest_point(set, x).point - x);
  }
  throw Error(ErrorKind::UnsupportedCombination,
              "maximal time under LInf/L1 dynamics is implemented for Box and Singleton only");
}

Vector minimal_time_subgradient(const Dynamic& dynamic, const ConvexSet& set, const Point& x,
                                const TimeOptions& opts) {
  if (contains(set, x, opts.membership_tol)) return Vector::Zero(x.size());
  const Point w = generalized_projection(dynamic, set, x);
  if (dynamic.is_euclidean_like()) {
    const Vector diff = x - w;
    return diff / (dynamic.scale() * diff.norm());
  }
  return std::visit(
      [&](const auto& s) -> Vector {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Halfspace>) {
          return scaled_normal(dynamic, s.normal);
        } else if constexpr (std::is_same_v<T, Ball>) {
          return scaled_normal(dynamic, w - s.center);
        } else if constexpr (std::is_same_v<T, ParabolaEpigraph2D>) {
          Vector n(2);
          n << 2.0 * (w[0] - s.shift), -1.0;
          return scaled_normal(dynamic, n);
        } else if constexpr (std::is_same_v<T, WholeSpace>) {
          return Vector::Zero(x.size());
        } else {
          return -gauge_subgradient(dynamic, w - x);
        }
      },
      set);
}

Vector maximal_time_subgradient(const Dynamic& dynamic, const ConvexSet& set, const Point& x) {
  if (!dynamic.is_euclidean_like() && !std::holds_alternative<Box>(set) &&
      !std::holds_alternative<Singleton>(set)) {
    throw Error(ErrorKind::UnsupportedCombination,
                "maximal time under LInf/L1 dynamics is implemented for Box and Singleton only");
  }
  const FarthestPoint fp = farthest_point(set, x);
  if (fp.distance == 0.0) {
    throw Error(ErrorKind::DegenerateFarthest, "point coincides with a singleton target");
  }
  return -gauge_subgradient(dynamic, fp.point - x);
}

double minimal_time(const SylvesterInstance& inst, std::size_t i, const Point& x,
                    const TimeOptions& opts) {
  check_index(i, inst.intersect_targets.size(), "intersect target");
  require_dimension(x, inst.dimension, "point");
  return minimal_time(inst.dynamic, inst.intersect_targets[i], x, opts);
}

double maximal_time(const SylvesterInstance& inst, std::size_t j, const Point& x) {
  check_index(j, inst.enclose_targets.size(), "enclose target");
  require_dimension(x, inst.dimension, "point");
  return maximal_time(inst.dynamic, inst.enclose_targets[j], x);
}

double objective_T(const SylvesterInstance& inst, const Point& x, const TimeOptions& opts) {
  if (inst.intersect_targets.empty()) {
    throw Error(ErrorKind::EmptyInstance, "objective T needs intersect targets");
  }
  require_dimension(x, inst.dimension, "point");
  double best = 0.0;
  for (const auto& s : inst.intersect_targets) {
    best = std::max(best, minimal_time(inst.dynamic, s, x, opts));
  }
  return best;
}

double objective_C(const SylvesterInstance& inst, const Point& x) {
  if (inst.enclose_targets.empty()) {
    throw Error(ErrorKind::EmptyInstance, "objective C needs enclose targets");
  }
  require_dimension(x, inst.dimension, "point");
  double best = 0.0;
  for (const auto& s : inst.enclose_targets) best = std::max(best, maximal_time(inst.dynamic, s, x));
  return best;
}

double objective_S(const SylvesterInstance& inst, const Point& x, const TimeOptions& opts) {
  if (inst.target_count() == 0) throw Error(ErrorKind::EmptyInstance, "instance has no targets");
  double value = 0.0;
  if (!inst.intersect_targets.empty()) value = std::max(value, objective_T(inst, x, opts));
  if (!inst.enclose_targets.empty()) value = std::max(value, objective_C(inst, x));
  return value;
}

ActiveSets active_sets(const SylvesterInstance& inst, const Point& x, double tie_tol,
                       const TimeOptions& opts) {
  const double s = objective_S(inst, x, opts);
  const double threshold = s - tie_tol * std::max(1.0, s);
  ActiveSets out;
  for (std::size_t i = 0; i < inst.intersect_targets.size(); ++i) {
    if (minimal_time(inst.dynamic, inst.intersect_targets[i], x, opts) >= threshold) {
      out.a1.push_back(i);
    }
  }
  for (std::size_t j = 0; j < inst.enclose_targets.size(); ++j) {
    if (maximal_time(inst.dynamic, inst.enclose_targets[j], x) >= threshold) out.a2.push_back(j);
  }
  return out;
}

Vector subgradient_T(const SylvesterInstance& inst, std::size_t i, const Point& x,
                     const TimeOptions& opts) {
  check_index(i, inst.intersect_targets.size(), "intersect target");
  require_dimension(x, inst.dimension, "point");
  return minimal_time_subgradient(inst.dynamic, inst.intersect_targets[i], x, opts);
}

Vector subgradient_C(const SylvesterInstance& inst, std::size_t j, const Point& x) {
  check_index(j, inst.enclose_targets.size(), "enclose target");
  require_dimension(x, inst.dimension, "point");
  return maximal_time_subgradient(inst.dynamic, inst.enclose_targets[j], x);
}

Vector subgradient_S(const SylvesterInstance& inst, const Point& x, double tie_tol,
                     const TimeOptions& opts) {
  const ActiveSets active = active_sets(inst, x, tie_tol, opts);
  if (!active.a1.empty()) {
    const auto& target = inst.intersect_targets[active.a1.front()];
    if (contains(target, x, opts.membership_tol)) return Vector::Zero(x.size());
    return minimal_time_subgradient(inst.dynamic, target, x, opts);
  }
  const auto& target = inst.enclose_targets[active.a2.front()];
  try {
    return maximal_time_subgradient(inst.dynamic, target, x);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::DegenerateFarthest) throw;
    return Vector::Zero(x.size());
  }
}

double objective_lipschitz(const SylvesterInstance& inst) {
  return gauge_lipschitz(inst.dynamic, inst.dimension);
}

}  // namespace sylvester
