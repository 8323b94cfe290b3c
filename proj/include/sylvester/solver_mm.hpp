#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "sylvester/report.hpp"
#include "sylvester/timefns.hpp"

namespace sylvester {

/// Smoothing schedule for the MM solver: p_0 = p, p_{k+1} = sigma p_k, stop
/// once p < p_min. Inner solves stop when the gradient mapping norm drops
/// below grad_tol or after inner_max_iters steps.
struct SmoothingState {
  double p = 0.1;
  double sigma = 0.5;
  double p_min = 1e-6;
  double grad_tol = 1e-5;
  std::size_t inner_max_iters = 10000;

  void validate() const;
};

/// Projections Pi(y; Omega_i) frozen at an outer iterate y.
struct MajorizationAnchor {
  std::vector<Point> anchor_points;
};

MajorizationAnchor make_anchor(const SylvesterInstance& inst, const Point& y);

/// max_i d(x; Omega_i) over intersect targets (Euclidean dynamics).
double max_distance(const SylvesterInstance& inst, const Point& x);

/// Log-exponential smoothing D(x, p) = p ln sum_i exp(sqrt(d_i^2 + p^2) / p),
/// evaluated with the largest exponent factored out.
double smooth_value(const SylvesterInstance& inst, const Point& x, double p);
Vector smooth_gradient(const SylvesterInstance& inst, const Point& x, double p);

/// Softmax weights Lambda_i(x, p); they sum to one.
std::vector<double> smooth_weights(const SylvesterInstance& inst, const Point& x, double p);

/// G(x, y, p): the smoothing with each distance replaced by ||x - anchor_i||.
double majorized_value(const MajorizationAnchor& anchor, const Point& x, double p);
Vector majorized_gradient(const MajorizationAnchor& anchor, const Point& x, double p);

struct NesterovResult {
  Point point;
  double value = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
  /// G at the accepted iterates, in acceptance order (nonincreasing).
  std::vector<double> accepted_values;
};

/// Accelerated gradient for min G(., anchor, p) over `constraint`, with
/// Lipschitz constant 2/p and prox center x0.
NesterovResult nesterov_minimize(const MajorizationAnchor& anchor, const ConvexSet& constraint,
                                 const Point& x0, double p, double grad_tol,
                                 std::size_t max_iters);

/// MM outer loop with shrinking smoothing parameter. Requires Euclidean
/// dynamics and intersect targets only.
SolverReport solve_mm(const SylvesterInstance& inst, std::optional<Point> start,
                      const SmoothingState& state = {});

/// MM iterations at a fixed smoothing parameter; returns D(x_k, p) for
/// k = 0..outer_iters.
std::vector<double> mm_fixed_p_trace(const SylvesterInstance& inst, const Point& start, double p,
                                     std::size_t outer_iters, double grad_tol = 1e-5,
                                     std::size_t inner_max_iters = 10000);

}  // namespace sylvester
