#pragma once

#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include <Eigen/Core>

#include "sylvester/error.hpp"

namespace sylvester {

using Vector = Eigen::VectorXd;
using Point = Eigen::VectorXd;

inline constexpr double kDefaultMembershipTol = 1e-9;

// ---------------------------------------------------------------------------
// Set vocabulary. Every variant provides membership, projection, normal cone
// and ray entry; the bounded ones also provide farthest points.
// ---------------------------------------------------------------------------

/// Closed Euclidean ball.
struct Ball {
  Point center;
  double radius = 0.0;
};

/// Axis-aligned cube {x : max_i |x_i - c_i| <= r}.
struct Box {
  Point center;
  double radius = 0.0;
};

/// {x : <normal, x> <= offset}.
struct Halfspace {
  Vector normal;
  double offset = 0.0;
};

struct Singleton {
  Point point;
};

/// {(x, y) : y >= (x - shift)^2 + offset}; planar only.
struct ParabolaEpigraph2D {
  double shift = 0.0;
  double offset = 0.0;
};

/// All of R^n; has no intrinsic dimension.
struct WholeSpace {};

using ConvexSet = std::variant<Ball, Box, Halfspace, Singleton, ParabolaEpigraph2D, WholeSpace>;

/// Checks the variant invariants (nonnegative radius, nonzero normal, finite data).
void validate(const ConvexSet& set);

/// Fixed dimension of the set, or nullopt for WholeSpace.
std::optional<int> dimension(const ConvexSet& set);

bool is_bounded(const ConvexSet& set);

/// Reference point used for starting points and plots: the center for Ball/Box,
/// the point for Singleton, nullopt for unbounded sets.
std::optional<Point> anchor_point(const ConvexSet& set);

bool contains(const ConvexSet& set, const Point& x, double tol = kDefaultMembershipTol);

/// Euclidean distance d(x; set).
double distance(const ConvexSet& set, const Point& x);

/// Euclidean projection onto the set.
Point project(const ConvexSet& set, const Point& x);

/// Allocation-free variant for hot loops; `out` is resized if needed and may not alias `x`.
void project_into(const ConvexSet& set, const Point& x, Vector& out);

struct FarthestPoint {
  Point point;
  double distance = 0.0;
};

/// A maximizer of ||x - w|| over a bounded set. Box ties (x_i == c_i) go to
/// the negative face; a Ball queried at its center answers center - r e_1.
FarthestPoint farthest_point(const ConvexSet& set, const Point& x);

/// Finite generator description of N(x; set). An empty generator list means
/// the cone is {0}; `full_space` marks the cone R^n (Singleton), in which case
/// the generators are the 2n signed basis vectors.
struct NormalConeRep {
  std::vector<Vector> generators;
  bool full_space = false;

  bool is_trivial() const { return generators.empty(); }
};

NormalConeRep normal_cone(const ConvexSet& set, const Point& x,
                          double tol = kDefaultMembershipTol);

/// Smallest t >= 0 with x + t v in the set, or nullopt when the ray never
/// meets it. Closed form for every variant.
std::optional<double> ray_entry_time(const ConvexSet& set, const Point& x, const Vector& v);

/// Bracketing fallback for ray entry that relies only on membership tests:
/// exponential doubling up to `t_cap`, then bisection to `t_tol`.
std::optional<double> ray_entry_time_bracketed(const ConvexSet& set, const Point& x,
                                               const Vector& v, double t_cap = 1e12,
                                               double t_tol = 1e-10,
                                               double tol = kDefaultMembershipTol);

// ---------------------------------------------------------------------------
// Dynamics (the gauge set F).
// ---------------------------------------------------------------------------

class Dynamic {
 public:
  enum class Kind { EuclideanBall, ScaledEuclideanBall, LInfBall, L1Ball };

  static Dynamic euclidean() { return Dynamic(Kind::EuclideanBall, 1.0); }
  static Dynamic scaled_euclidean(double radius);
  static Dynamic linf() { return Dynamic(Kind::LInfBall, 1.0); }
  static Dynamic l1() { return Dynamic(Kind::L1Ball, 1.0); }

  Kind kind() const { return kind_; }
  /// Radius of ScaledEuclideanBall; 1 for the others.
  double scale() const { return scale_; }

  bool is_euclidean_like() const {
    return kind_ == Kind::EuclideanBall || kind_ == Kind::ScaledEuclideanBall;
  }

  friend bool operator==(const Dynamic&, const Dynamic&) = default;

 private:
  Dynamic(Kind kind, double scale) : kind_(kind), scale_(scale) {}

  Kind kind_;
  double scale_;
};

/// Minkowski gauge rho_F(u).
double gauge(const Dynamic& dynamic, const Vector& u);

/// One element of the subdifferential of rho_F at u != 0.
Vector gauge_subgradient(const Dynamic& dynamic, const Vector& u);

/// Support function sigma_F(y) = max_{f in F} <y, f>, i.e. the dual norm.
double support(const Dynamic& dynamic, const Vector& y);

/// Lipschitz constant of rho_F with respect to the Euclidean norm in R^n.
double gauge_lipschitz(const Dynamic& dynamic, int n);

// Small helpers shared by the modules.
void require_dimension(const Point& x, int n, const char* what);

}  // namespace sylvester
