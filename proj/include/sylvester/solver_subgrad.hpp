#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>

#include "sylvester/report.hpp"
#include "sylvester/timefns.hpp"

namespace sylvester {

struct SubgradientOptions {
  StepSchedule schedule = StepSchedule::harmonic(1.0);
  std::size_t max_iterations = 100000;
  /// Stop once V improved by less than stall_tol over the last stall_window
  /// iterations. A window of 0 disables the check.
  double stall_tol = 1e-9;
  std::size_t stall_window = 1000;
  double tie_tol = kDefaultTieTol;
  TimeOptions time;
  /// Spot-check the selected subgradients every `audit_every` iterations
  /// against random probes (0 disables); failures are counted in the report.
  std::size_t audit_every = 0;
  std::size_t audit_probes = 10;
  std::uint64_t audit_seed = 12345;
};

/// Constraint projection of the centroid of the bounded target anchors (the
/// origin when no target has one).
Point default_start(const SylvesterInstance& inst);

/// Projected subgradient method for min S(x) over the constraint.
SolverReport solve_subgradient(const SylvesterInstance& inst, std::optional<Point> start,
                               const SubgradientOptions& opts = {});

/// (d1^2 + L^2 sum_{i<=k} alpha_i^2) / (2 sum_{i<=k} alpha_i).
double error_bound(double d1, double lipschitz, const StepSchedule& schedule, std::size_t k);

}  // namespace sylvester
