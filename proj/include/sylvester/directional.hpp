#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "sylvester/report.hpp"
#include "sylvester/timefns.hpp"

namespace sylvester {

/// Target reached along a single fixed direction.
struct DirectionalTarget {
  ConvexSet set;
  Vector direction;
};

struct DirectionalInstance {
  int dimension = 0;
  ConvexSet constraint = WholeSpace{};
  std::vector<DirectionalTarget> targets;

  void validate() const;
};

/// Time along `v` until the ray from x enters the target; nullopt encodes +inf
/// (x outside target - cone{v}).
using DirectionalValue = std::optional<double>;

DirectionalValue directional_time(const ConvexSet& target, const Vector& v, const Point& x);

/// x + T_v(x) v. Throws NotInDomain when the ray misses the target.
Point directional_projection(const ConvexSet& target, const Vector& v, const Point& x);

/// From a generator description of N(Pi_v(x); target): -w / <w, v> for the
/// first generator with <w, v> < 0. Throws NoValidGenerator otherwise.
Vector subgradient_from_normal_cone(const NormalConeRep& cone, const Vector& v);

/// One element of the subdifferential of T_v(.; target) at x: zero inside the
/// target, otherwise a normal at the entry point scaled so that <w, v> = -1.
Vector directional_subgradient(const ConvexSet& target, const Vector& v, const Point& x,
                               double tol = 1e-9);

/// max_i T_{v_i}(x; Omega_i); NotInDomain is absorbing.
DirectionalValue objective_S1(const DirectionalInstance& inst, const Point& x);

/// Maximizers of the component times within tie_tol * max(1, S_1). Empty when
/// S_1 is not finite.
std::vector<std::size_t> active_set(const DirectionalInstance& inst, const Point& x,
                                    double tie_tol = kDefaultTieTol);

struct DirectionalOptions {
  StepSchedule schedule = StepSchedule::harmonic(1.0);
  std::size_t max_iterations = 100000;
  double stall_tol = 1e-9;
  std::size_t stall_window = 1000;
  double tie_tol = kDefaultTieTol;
  double membership_tol = kDefaultMembershipTol;
};

/// Projected subgradient method for min S_1 over the constraint. Stops with
/// MemberBreak when the active target already contains the iterate and with
/// LeftDomain when the next iterate has S_1 = +inf.
SolverReport solve_directional(const DirectionalInstance& inst, std::optional<Point> start,
                               const DirectionalOptions& opts = {});

}  // namespace sylvester
