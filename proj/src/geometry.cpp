#include "sylvester/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace sylvester {
namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

bool all_finite(const Vector& v) { return v.allFinite(); }

void check_dims(const ConvexSet& set, const Point& x) {
  if (x.size() < 1) throw Error(ErrorKind::DimensionMismatch, "point has no coordinates");
  const auto n = dimension(set);
  if (n && *n != x.size()) {
    throw Error(ErrorKind::DimensionMismatch,
                "set has dimension " + std::to_string(*n) + ", point has " +
                    std::to_string(x.size()));
  }
}

// Root of 2 s^3 + k s - u = 0 on (0, inf) for u > 0. The cubic is negative at
// 0 and crosses zero exactly once on the positive axis, so a bracket plus
// safeguarded Newton converges unconditionally.
double parabola_stationary_root(double u, double k) {
  double lo = 0.0;
  double hi = 1.0 + std::max(u, std::abs(k));
  auto f = [&](double s) { return 2.0 * s * s * s + k * s - u; };
  double s = std::min(u, hi);  // s = u is the answer when the curve is flat
  for (int iter = 0; iter < 200; ++iter) {
    const double fs = f(s);
    if (fs > 0.0) {
      hi = s;
    } else {
      lo = s;
    }
    if (hi - lo <= 1e-12 * std::max(1.0, hi)) break;
    const double df = 6.0 * s * s + k;
    double next = df > 0.0 ? s - fs / df : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - s) <= 1e-15 * std::max(1.0, std::abs(s))) {
      s = next;
      break;
    }
    s = next;
  }
  return s;
}

Point project_parabola(const ParabolaEpigraph2D& p, const Point& x) {
  const double fx = (x[0] - p.shift) * (x[0] - p.shift) + p.offset;
  if (x[1] >= fx) return x;
  const double u = x[0] - p.shift;
  const double k = 1.0 + 2.0 * (p.offset - x[1]);
  double s = 0.0;
  if (u != 0.0) {
    s = parabola_stationary_root(std::abs(u), k);
    if (u < 0.0) s = -s;
  }
  Point out(2);
  out << p.shift + s, s * s + p.offset;
  return out;
}

// Smallest t >= 0 with a t^2 + b t + c <= 0, given c > 0 (start outside).
std::optional<double> first_quadratic_entry(double a, double b, double c) {
  if (a == 0.0) {
    if (b < 0.0) return -c / b;
    return std::nullopt;
  }
  const double disc = b * b - 4.0 * a * c;
  if (disc < 0.0) return std::nullopt;
  // Numerically stable smaller root.
  const double sq = std::sqrt(disc);
  const double q = -0.5 * (b + std::copysign(sq, b));
  double r1 = q / a;
  double r2 = q != 0.0 ? c / q : r1;
  const double t = std::min(r1, r2);
  // Roots share a sign since c/a > 0; both negative means the set lies behind.
  if (t < 0.0) return std::nullopt;
  return t;
}

}  // namespace

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::UnboundedSet: return "UnboundedSet";
    case ErrorKind::NotInSet: return "NotInSet";
    case ErrorKind::ZeroVector: return "ZeroVector";
    case ErrorKind::NotInDomain: return "NotInDomain";
    case ErrorKind::UnsupportedCombination: return "UnsupportedCombination";
    case ErrorKind::UnsupportedDynamic: return "UnsupportedDynamic";
    case ErrorKind::EmptyInstance: return "EmptyInstance";
    case ErrorKind::EncloseTargetsPresent: return "EncloseTargetsPresent";
    case ErrorKind::DegenerateFarthest: return "DegenerateFarthest";
    case ErrorKind::NoValidGenerator: return "NoValidGenerator";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

void require_dimension(const Point& x, int n, const char* what) {
  if (x.size() != n) {
    throw Error(ErrorKind::DimensionMismatch, std::string(what) + " has dimension " +
                                                  std::to_string(x.size()) + ", expected " +
                                                  std::to_string(n));
  }
}

void validate(const ConvexSet& set) {
  std::visit(
      overloaded{
          [](const Ball& b) {
            if (b.center.size() < 1 || !all_finite(b.center) || !std::isfinite(b.radius) ||
                b.radius < 0.0)
              throw Error(ErrorKind::InvalidArgument, "ball needs a finite center and radius >= 0");
          },
          [](const Box& b) {
            if (b.center.size() < 1 || !all_finite(b.center) || !std::isfinite(b.radius) ||
                b.radius < 0.0)
              throw Error(ErrorKind::InvalidArgument, "box needs a finite center and radius >= 0");
          },
          [](const Halfspace& h) {
            if (h.normal.size() < 1 || !all_finite(h.normal) || !std::isfinite(h.offset))
              throw Error(ErrorKind::InvalidArgument, "halfspace data must be finite");
            if (h.normal.squaredNorm() == 0.0)
              throw Error(ErrorKind::ZeroVector, "halfspace normal must be nonzero");
          },
          [](const Singleton& s) {
            if (s.point.size() < 1 || !all_finite(s.point))
              throw Error(ErrorKind::InvalidArgument, "singleton point must be finite");
          },
          [](const ParabolaEpigraph2D& p) {
            if (!std::isfinite(p.shift) || !std::isfinite(p.offset))
              throw Error(ErrorKind::InvalidArgument, "parabola parameters must be finite");
          },
          [](const WholeSpace&) {},
      },
      set);
}

std::optional<int> dimension(const ConvexSet& set) {
  return std::visit(overloaded{
                        [](const Ball& b) -> std::optional<int> { return int(b.center.size()); },
                        [](const Box& b) -> std::optional<int> { return int(b.center.size()); },
                        [](const Halfspace& h) -> std::optional<int> { return int(h.normal.size()); },
                        [](const Singleton& s) -> std::optional<int> { return int(s.point.size()); },
                        [](const ParabolaEpigraph2D&) -> std::optional<int> { return 2; },
                        [](const WholeSpace&) -> std::optional<int> { return std::nullopt; },
                    },
                    set);
}

bool is_bounded(const ConvexSet& set) {
  return std::holds_alternative<Ball>(set) || std::holds_alternative<Box>(set) ||
         std::holds_alternative<Singleton>(set);
}

std::optional<Point> anchor_point(const ConvexSet& set) {
  return std::visit(overloaded{
                        [](const Ball& b) -> std::optional<Point> { return b.center; },
                        [](const Box& b) -> std::optional<Point> { return b.center; },
                        [](const Singleton& s) -> std::optional<Point> { return s.point; },
                        [](const auto&) -> std::optional<Point> { return std::nullopt; },
                    },
                    set);
}

void project_into(const ConvexSet& set, const Point& x, Vector& out) {
  check_dims(set, x);
  std::visit(overloaded{
                 [&](const Ball& b) {
                   out = x - b.center;
                   const double d = out.norm();
                   if (d <= b.radius) {
                     out = x;
                   } else {
                     out *= b.radius / d;
                     out += b.center;
                   }
                 },
                 [&](const Box& b) {
                   out = x.array().max(b.center.array() - b.radius).min(b.center.array() + b.radius).matrix();
                 },
                 [&](const Halfspace& h) {
                   const double excess = h.normal.dot(x) - h.offset;
                   out = x;
                   if (excess > 0.0) out -= (excess / h.normal.squaredNorm()) * h.normal;
                 },
                 [&](const Singleton& s) { out = s.point; },
                 [&](const ParabolaEpigraph2D& p) { out = project_parabola(p, x); },
                 [&](const WholeSpace&) { out = x; },
             },
             set);
}

Point project(const ConvexSet& set, const Point& x) {
  Vector out(x.size());
  project_into(set, x, out);
  return out;
}

double distance(const ConvexSet& set, const Point& x) {
  check_dims(set, x);
  return std::visit(overloaded{
                        [&](const Ball& b) { return std::max(0.0, (x - b.center).norm() - b.radius); },
                        [&](const Box& b) {
                          return ((x - b.center).cwiseAbs().array() - b.radius).max(0.0).matrix().norm();
                        },
                        [&](const Halfspace& h) {
                          return std::max(0.0, h.normal.dot(x) - h.offset) / h.normal.norm();
                        },
                        [&](const Singleton& s) { return (x - s.point).norm(); },
                        [&](const ParabolaEpigraph2D& p) { return (x - project_parabola(p, x)).norm(); },
                        [&](const WholeSpace&) { return 0.0; },
                    },
                    set);
}

bool contains(const ConvexSet& set, const Point& x, double tol) {
  if (const auto* p = std::get_if<ParabolaEpigraph2D>(&set)) {
    check_dims(set, x);
    if (x[1] >= (x[0] - p->shift) * (x[0] - p->shift) + p->offset) return true;
  }
  return distance(set, x) <= tol;
}

FarthestPoint farthest_point(const ConvexSet& set, const Point& x) {
  check_dims(set, x);
  return std::visit(
      overloaded{
          [&](const Ball& b) -> FarthestPoint {
            Vector dir = x - b.center;
            const double d = dir.norm();
            Point q;
            if (d > 0.0) {
              q = b.center - (b.radius / d) * dir;
            } else {
              q = b.center;
              q[0] -= b.radius;
            }
            return {q, d + b.radius};
          },
          [&](const Box& b) -> FarthestPoint {
            Point q(x.size());
            for (Eigen::Index i = 0; i < x.size(); ++i) {
              q[i] = x[i] > b.center[i] ? b.center[i] - b.radius : b.center[i] + b.radius;
              if (x[i] == b.center[i]) q[i] = b.center[i] - b.radius;
            }
            return {q, (x - q).norm()};
          },
          [&](const Singleton& s) -> FarthestPoint { return {s.point, (x - s.point).norm()}; },
          [&](const auto&) -> FarthestPoint {
            throw Error(ErrorKind::UnboundedSet, "farthest point requires a bounded set");
          },
      },
      set);
}

NormalConeRep normal_cone(const ConvexSet& set, const Point& x, double tol) {
  if (!contains(set, x, tol)) {
    throw Error(ErrorKind::NotInSet, "normal cone queried outside the set");
  }
  const auto n = x.size();
  auto full_space = [n]() {
    NormalConeRep rep;
    rep.full_space = true;
    for (Eigen::Index i = 0; i < n; ++i) {
      rep.generators.push_back(Vector::Unit(n, i));
      rep.generators.push_back(-Vector::Unit(n, i));
    }
    return rep;
  };
  return std::visit(
      overloaded{
          [&](const Ball& b) -> NormalConeRep {
            if (b.radius == 0.0) return full_space();
            Vector g = x - b.center;
            if (b.radius - g.norm() > tol) return {};
            return {{g}, false};
          },
          [&](const Box& b) -> NormalConeRep {
            if (b.radius == 0.0) return full_space();
            NormalConeRep rep;
            for (Eigen::Index i = 0; i < n; ++i) {
              const double off = x[i] - b.center[i];
              if (std::abs(off) >= b.radius - tol) {
                rep.generators.push_back(off >= 0.0 ? Vector(Vector::Unit(n, i))
                                                    : Vector(-Vector::Unit(n, i)));
              }
            }
            return rep;
          },
          [&](const Halfspace& h) -> NormalConeRep {
            if (h.offset - h.normal.dot(x) > tol * h.normal.norm()) return {};
            return {{h.normal}, false};
          },
          [&](const Singleton&) -> NormalConeRep { return full_space(); },
          [&](const ParabolaEpigraph2D& p) -> NormalConeRep {
            const Point w = project_parabola(p, x);
            const double slope = 2.0 * (w[0] - p.shift);
            const double gap = w[1] - ((w[0] - p.shift) * (w[0] - p.shift) + p.offset);
            if (gap > tol * std::sqrt(1.0 + slope * slope)) return {};
            Vector g(2);
            g << slope, -1.0;
            return {{g}, false};
          },
          [&](const WholeSpace&) -> NormalConeRep { return {}; },
      },
      set);
}

std::optional<double> ray_entry_time(const ConvexSet& set, const Point& x, const Vector& v) {
  check_dims(set, x);
  if (v.size() != x.size()) throw Error(ErrorKind::DimensionMismatch, "direction dimension");
  if (v.squaredNorm() == 0.0) throw Error(ErrorKind::ZeroVector, "ray direction must be nonzero");
  return std::visit(
      overloaded{
          [&](const Ball& b) -> std::optional<double> {
            const Vector rel = x - b.center;
            const double c = rel.squaredNorm() - b.radius * b.radius;
            // Within rounding of the boundary counts as inside.
            const double slack = 8.0 * std::numeric_limits<double>::epsilon() *
                                 (rel.squaredNorm() + b.radius * b.radius);
            if (c <= slack) return 0.0;
            // Quarter discriminant |v|^2 (r^2 - d_perp^2), free of the b^2 - 4ac cancellation.
            const double vv = v.squaredNorm();
            const double along = v.dot(rel);
            if (along >= 0.0) return std::nullopt;
            const Vector perp = rel - (along / vv) * v;
            const double gap = (b.radius - perp.norm()) * (b.radius + perp.norm());
            if (gap < 0.0) return std::nullopt;
            return c / (-along + std::sqrt(vv * gap));
          },
          [&](const Box& b) -> std::optional<double> {
            double lo = 0.0;
            double hi = std::numeric_limits<double>::infinity();
            for (Eigen::Index i = 0; i < x.size(); ++i) {
              const double a = b.center[i] - b.radius - x[i];
              const double c = b.center[i] + b.radius - x[i];
              if (v[i] == 0.0) {
                if (a > 0.0 || c < 0.0) return std::nullopt;
                continue;
              }
              double t1 = a / v[i];
              double t2 = c / v[i];
              if (t1 > t2) std::swap(t1, t2);
              lo = std::max(lo, t1);
              hi = std::min(hi, t2);
            }
            if (lo > hi) return std::nullopt;
            return lo;
          },
          [&](const Halfspace& h) -> std::optional<double> {
            const double excess = h.normal.dot(x) - h.offset;
            if (excess <= 0.0) return 0.0;
            const double rate = h.normal.dot(v);
            if (rate >= 0.0) return std::nullopt;
            return -excess / rate;
          },
          [&](const Singleton& s) -> std::optional<double> {
            const Vector rel = s.point - x;
            const double t = rel.dot(v) / v.squaredNorm();
            if (t < 0.0) return std::nullopt;
            const double residual = (rel - t * v).norm();
            if (residual > 1e-12 * std::max(1.0, rel.norm())) return std::nullopt;
            return t;
          },
          [&](const ParabolaEpigraph2D& p) -> std::optional<double> {
            // q(t) = (u + t vx)^2 + c - y - t vy <= 0
            const double u = x[0] - p.shift;
            const double c0 = u * u + p.offset - x[1];
            if (c0 <= 0.0) return 0.0;
            return first_quadratic_entry(v[0] * v[0], 2.0 * u * v[0] - v[1], c0);
          },
          [&](const WholeSpace&) -> std::optional<double> { return 0.0; },
      },
      set);
}

std::optional<double> ray_entry_time_bracketed(const ConvexSet& set, const Point& x,
                                               const Vector& v, double t_cap, double t_tol,
                                               double tol) {
  if (v.squaredNorm() == 0.0) throw Error(ErrorKind::ZeroVector, "ray direction must be nonzero");
  if (contains(set, x, tol)) return 0.0;
  // phi(t) = dist(x + t v, S) is convex, so {phi <= tol} is an interval.
  auto phi = [&](double t) { return distance(set, x + t * v); };
  double lo = 0.0;  // last sample known to be outside
  double hit = -1.0;
  double prev = 0.0, prev_phi = phi(0.0);
  for (double t = 1.0;; t *= 2.0) {
    const double f = phi(t);
    if (f <= tol) {
      hit = t;
      break;
    }
    if (f >= prev_phi) {
      // The minimum lies in [prev / 2, t]; golden-section search for it.
      double a = prev / 2.0, b = t;
      const double g = 0.5 * (std::sqrt(5.0) - 1.0);
      double c = b - g * (b - a), d = a + g * (b - a);
      double fc = phi(c), fd = phi(d);
      while (b - a > t_tol * std::max(1.0, b)) {
        if (fc <= tol || fd <= tol) break;
        if (fc < fd) {
          b = d;
          d = c;
          fd = fc;
          c = b - g * (b - a);
          fc = phi(c);
        } else {
          a = c;
          c = d;
          fc = fd;
          d = a + g * (b - a);
          fd = phi(d);
        }
      }
      if (fc <= tol) hit = c;
      else if (fd <= tol) hit = d;
      else return std::nullopt;
      lo = a;
      break;
    }
    lo = t;
    prev = t;
    prev_phi = f;
    if (t > t_cap) return std::nullopt;
  }
  double hi = hit;
  while (hi - lo > t_tol) {
    const double mid = 0.5 * (lo + hi);
    if (phi(mid) <= tol) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

// ---------------------------------------------------------------------------

Dynamic Dynamic::scaled_euclidean(double radius) {
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw Error(ErrorKind::InvalidArgument, "scaled ball radius must be positive");
  }
  return Dynamic(Kind::ScaledEuclideanBall, radius);
}

double gauge(const Dynamic& dynamic, const Vector& u) {
  switch (dynamic.kind()) {
    case Dynamic::Kind::EuclideanBall: return u.norm();
    case Dynamic::Kind::ScaledEuclideanBall: return u.norm() / dynamic.scale();
    case Dynamic::Kind::LInfBall: return u.size() ? u.cwiseAbs().maxCoeff() : 0.0;
    case Dynamic::Kind::L1Ball: return u.cwiseAbs().sum();
  }
  return 0.0;
}

Vector gauge_subgradient(const Dynamic& dynamic, const Vector& u) {
  if (u.size() == 0 || u.squaredNorm() == 0.0) {
    throw Error(ErrorKind::ZeroVector, "gauge subgradient needs u != 0");
  }
  switch (dynamic.kind()) {
    case Dynamic::Kind::EuclideanBall: return u / u.norm();
    case Dynamic::Kind::ScaledEuclideanBall: return u / (dynamic.scale() * u.norm());
    case Dynamic::Kind::LInfBall: {
      Eigen::Index k = 0;
      u.cwiseAbs().maxCoeff(&k);  // first maximizer
      Vector g = Vector::Zero(u.size());
      g[k] = u[k] > 0.0 ? 1.0 : -1.0;
      return g;
    }
    case Dynamic::Kind::L1Ball: {
      Vector g(u.size());
      for (Eigen::Index i = 0; i < u.size(); ++i) g[i] = u[i] > 0.0 ? 1.0 : (u[i] < 0.0 ? -1.0 : 0.0);
      return g;
    }
  }
  return Vector();
}

double support(const Dynamic& dynamic, const Vector& y) {
  switch (dynamic.kind()) {
    case Dynamic::Kind::EuclideanBall: return y.norm();
    case Dynamic::Kind::ScaledEuclideanBall: return dynamic.scale() * y.norm();
    case Dynamic::Kind::LInfBall: return y.cwiseAbs().sum();
    case Dynamic::Kind::L1Ball: return y.size() ? y.cwiseAbs().maxCoeff() : 0.0;
  }
  return 0.0;
}

double gauge_lipschitz(const Dynamic& dynamic, int n) {
  switch (dynamic.kind()) {
    case Dynamic::Kind::EuclideanBall: return 1.0;
    case Dynamic::Kind::ScaledEuclideanBall: return 1.0 / dynamic.scale();
    case Dynamic::Kind::LInfBall: return 1.0;
    case Dynamic::Kind::L1Ball: return std::sqrt(double(n));
  }
  return 1.0;
}

}  // namespace sylvester
