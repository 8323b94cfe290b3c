#pragma once

#include <cstddef>
#include <vector>

#include "sylvester/geometry.hpp"

namespace sylvester {

/// Problem data: find x in `constraint` and the smallest r such that
/// x + rF meets every intersect target and contains every enclose target.
struct SylvesterInstance {
  int dimension = 0;
  Dynamic dynamic = Dynamic::euclidean();
  ConvexSet constraint = WholeSpace{};
  std::vector<ConvexSet> intersect_targets;
  std::vector<ConvexSet> enclose_targets;

  std::size_t target_count() const { return intersect_targets.size() + enclose_targets.size(); }

  /// Throws on inconsistent dimensions, unbounded enclose targets, or no targets.
  void validate() const;
};

struct TimeOptions {
  /// Points this close to a target count as members (zero time, zero subgradient).
  double membership_tol = kDefaultMembershipTol;
};

/// A minimizer of rho_F(w - x) over w in `set`.
Point generalized_projection(const Dynamic& dynamic, const ConvexSet& set, const Point& x);

double minimal_time(const Dynamic& dynamic, const ConvexSet& set, const Point& x,
                    const TimeOptions& opts = {});
double maximal_time(const Dynamic& dynamic, const ConvexSet& set, const Point& x);

/// One element of the subdifferential of T_F(.; set) at x.
Vector minimal_time_subgradient(const Dynamic& dynamic, const ConvexSet& set, const Point& x,
                                const TimeOptions& opts = {});
/// One element of the subdifferential of C_F(.; set) at x. Throws
/// DegenerateFarthest when the farthest distance is zero.
Vector maximal_time_subgradient(const Dynamic& dynamic, const ConvexSet& set, const Point& x);

// Instance-level forms (indices into the target lists).
double minimal_time(const SylvesterInstance& inst, std::size_t i, const Point& x,
                    const TimeOptions& opts = {});
double maximal_time(const SylvesterInstance& inst, std::size_t j, const Point& x);

/// max_i T_F(x; Omega_i). Throws EmptyInstance without intersect targets.
double objective_T(const SylvesterInstance& inst, const Point& x, const TimeOptions& opts = {});
/// max_j C_F(x; Theta_j). Throws EmptyInstance without enclose targets.
double objective_C(const SylvesterInstance& inst, const Point& x);
/// max(T, C) over whichever parts are present.
double objective_S(const SylvesterInstance& inst, const Point& x, const TimeOptions& opts = {});

struct ActiveSets {
  std::vector<std::size_t> a1;  // into intersect_targets
  std::vector<std::size_t> a2;  // into enclose_targets
};

inline constexpr double kDefaultTieTol = 1e-9;

/// Indices whose component value is >= S(x) - tie_tol * max(1, S(x)).
ActiveSets active_sets(const SylvesterInstance& inst, const Point& x,
                       double tie_tol = kDefaultTieTol, const TimeOptions& opts = {});

Vector subgradient_T(const SylvesterInstance& inst, std::size_t i, const Point& x,
                     const TimeOptions& opts = {});
Vector subgradient_C(const SylvesterInstance& inst, std::size_t j, const Point& x);

/// Subgradient of S at x from the smallest active index (intersect targets
/// are ordered before enclose targets). A degenerate farthest point yields 0.
Vector subgradient_S(const SylvesterInstance& inst, const Point& x,
                     double tie_tol = kDefaultTieTol, const TimeOptions& opts = {});

/// Lipschitz constant of S with respect to the Euclidean norm.
double objective_lipschitz(const SylvesterInstance& inst);

}  // namespace sylvester
