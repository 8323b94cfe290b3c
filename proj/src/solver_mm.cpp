#include "sylvester/solver_mm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Dense>

#include "sylvester/solver_subgrad.hpp"

namespace sylvester {
namespace {

void require_smoothable(const SylvesterInstance& inst) {
  if (inst.dynamic.kind() != Dynamic::Kind::EuclideanBall) {
    throw Error(ErrorKind::UnsupportedDynamic, "smoothing is defined for the Euclidean unit ball only");
  }
  if (!inst.enclose_targets.empty()) {
    throw Error(ErrorKind::EncloseTargetsPresent,
                "smoothing covers distance functions only; use the subgradient solver");
  }
  if (inst.intersect_targets.empty()) {
    throw Error(ErrorKind::EmptyInstance, "smoothing needs at least one intersect target");
  }
}

void require_positive(double p) {
  if (!(p > 0.0) || !std::isfinite(p)) {
    throw Error(ErrorKind::InvalidArgument, "smoothing parameter must be positive");
  }
}

// p ln sum exp(g_i / p) with the max exponent factored out; fills softmax
// weights when requested.
template <class Derived>
double log_sum_exp(const Eigen::ArrayBase<Derived>& g, double p, Eigen::ArrayXd* weights) {
  const double gmax = g.maxCoeff();
  Eigen::ArrayXd e = ((g - gmax) / p).exp();
  const double total = e.sum();
  if (weights) *weights = e / total;
  return gmax + p * std::log(total);
}

// Anchors stored column-wise for the inner solve.
class MajorizedObjective {
 public:
  MajorizedObjective(const MajorizationAnchor& anchor, double p) : p_(p) {
    if (anchor.anchor_points.empty()) {
      throw Error(ErrorKind::EmptyInstance, "anchor has no points");
    }
    const auto n = anchor.anchor_points.front().size();
    points_.resize(n, Eigen::Index(anchor.anchor_points.size()));
    for (std::size_t i = 0; i < anchor.anchor_points.size(); ++i) {
      require_dimension(anchor.anchor_points[i], int(n), "anchor point");
      points_.col(Eigen::Index(i)) = anchor.anchor_points[i];
    }
    point_norms_ = points_.colwise().squaredNorm().transpose().array();
  }

  double value(const Point& x) {
    distances(x);
    return log_sum_exp(g_, p_, nullptr);
  }

  double value_and_gradient(const Point& x, Vector& grad) {
    distances(x);
    const double v = log_sum_exp(g_, p_, &weights_);
    coef_ = weights_ / g_;
    grad.noalias() = -(points_ * coef_.matrix());
    grad += coef_.sum() * x;
    return v;
  }

 private:
  // |x - a_i|^2 = |x|^2 - 2 <a_i, x> + |a_i|^2, one matrix-vector product per call.
  void distances(const Point& x) {
    dots_.noalias() = points_.transpose() * x;
    g_ = ((point_norms_ - 2.0 * dots_.array() + x.squaredNorm()).max(0.0) + p_ * p_).sqrt();
  }

  double p_;
  Eigen::MatrixXd points_;
  Eigen::ArrayXd point_norms_;
  Vector dots_;
  Eigen::ArrayXd g_;
  Eigen::ArrayXd coef_;
  Eigen::ArrayXd weights_;
};

Eigen::ArrayXd smoothed_distances(const SylvesterInstance& inst, const Point& x, double p,
                                  std::vector<Point>* projections) {
  require_smoothable(inst);
  require_positive(p);
  require_dimension(x, inst.dimension, "point");
  Eigen::ArrayXd g(Eigen::Index(inst.intersect_targets.size()));
  if (projections) projections->resize(inst.intersect_targets.size());
  Vector proj(x.size());
  for (std::size_t i = 0; i < inst.intersect_targets.size(); ++i) {
    project_into(inst.intersect_targets[i], x, proj);
    const double d2 = (x - proj).squaredNorm();
    g[Eigen::Index(i)] = std::sqrt(d2 + p * p);
    if (projections) (*projections)[i] = proj;
  }
  return g;
}

}  // namespace

void SmoothingState::validate() const {
  if (!(p > 0.0)) throw Error(ErrorKind::InvalidArgument, "p must be positive");
  if (!(sigma > 0.0 && sigma < 1.0)) throw Error(ErrorKind::InvalidArgument, "sigma must lie in (0, 1)");
  if (!(p_min > 0.0 && p_min < p)) throw Error(ErrorKind::InvalidArgument, "need 0 < p_min < p");
  if (!(grad_tol > 0.0)) throw Error(ErrorKind::InvalidArgument, "grad_tol must be positive");
  if (inner_max_iters < 1) throw Error(ErrorKind::InvalidArgument, "inner_max_iters must be >= 1");
}

MajorizationAnchor make_anchor(const SylvesterInstance& inst, const Point& y) {
  require_dimension(y, inst.dimension, "anchor point");
  MajorizationAnchor anchor;
  anchor.anchor_points.reserve(inst.intersect_targets.size());
  for (const auto& target : inst.intersect_targets) anchor.anchor_points.push_back(project(target, y));
  return anchor;
}

double max_distance(const SylvesterInstance& inst, const Point& x) {
  double best = 0.0;
  for (const auto& target : inst.intersect_targets) best = std::max(best, distance(target, x));
  return best;
}

double smooth_value(const SylvesterInstance& inst, const Point& x, double p) {
  return log_sum_exp(smoothed_distances(inst, x, p, nullptr), p, nullptr);
}

std::vector<double> smooth_weights(const SylvesterInstance& inst, const Point& x, double p) {
  Eigen::ArrayXd w;
  log_sum_exp(smoothed_distances(inst, x, p, nullptr), p, &w);
  return {w.data(), w.data() + w.size()};
}

Vector smooth_gradient(const SylvesterInstance& inst, const Point& x, double p) {
  std::vector<Point> proj;
  const Eigen::ArrayXd g = smoothed_distances(inst, x, p, &proj);
  Eigen::ArrayXd w;
  log_sum_exp(g, p, &w);
  Vector grad = Vector::Zero(x.size());
  for (std::size_t i = 0; i < proj.size(); ++i) {
    grad += (w[Eigen::Index(i)] / g[Eigen::Index(i)]) * (x - proj[i]);
  }
  return grad;
}

double majorized_value(const MajorizationAnchor& anchor, const Point& x, double p) {
  require_positive(p);
  MajorizedObjective objective(anchor, p);
  require_dimension(x, int(anchor.anchor_points.front().size()), "point");
  return objective.value(x);
}

Vector majorized_gradient(const MajorizationAnchor& anchor, const Point& x, double p) {
  require_positive(p);
  MajorizedObjective objective(anchor, p);
  require_dimension(x, int(anchor.anchor_points.front().size()), "point");
  Vector grad(x.size());
  objective.value_and_gradient(x, grad);
  return grad;
}

NesterovResult nesterov_minimize(const MajorizationAnchor& anchor, const ConvexSet& constraint,
                                 const Point& x0, double p, double grad_tol,
                                 std::size_t max_iters) {
  require_positive(p);
  MajorizedObjective objective(anchor, p);
  require_dimension(x0, int(anchor.anchor_points.front().size()), "starting point");
  const double lipschitz = 2.0 / p;
  const auto n = x0.size();

  NesterovResult result;
  result.point = x0;
  result.value = objective.value(x0);
  result.accepted_values.push_back(result.value);

  Point x = x0;
  Vector grad(n);
  Vector grad_sum = Vector::Zero(n);
  Vector y(n);
  Vector z(n);
  Vector trial(n);
  for (std::size_t k = 0; k < max_iters; ++k) {
    objective.value_and_gradient(x, grad);
    trial = x - grad / lipschitz;
    project_into(constraint, trial, y);
    const double mapping_norm = lipschitz * (x - y).norm();

    const double y_value = objective.value(y);
    if (y_value < result.value) {
      result.value = y_value;
      result.point = y;
      result.accepted_values.push_back(y_value);
    }
    result.iterations = k + 1;
    if (mapping_norm < grad_tol) {
      result.converged = true;
      break;
    }

    grad_sum += (0.5 * double(k + 1)) * grad;
    trial = x0 - grad_sum / lipschitz;
    project_into(constraint, trial, z);
    x = (2.0 / double(k + 3)) * z + (double(k + 1) / double(k + 3)) * y;
  }
  return result;
}

SolverReport solve_mm(const SylvesterInstance& inst, std::optional<Point> start,
                      const SmoothingState& state) {
  inst.validate();
  require_smoothable(inst);
  state.validate();

  SolverReport report;
  Point x = start ? *start : default_start(inst);
  require_dimension(x, inst.dimension, "starting point");
  if (!contains(inst.constraint, x, 0.0)) {
    x = project(inst.constraint, x);
    report.start_projected = true;
  }
  report.best_point = x;
  report.best_value = max_distance(inst, x);
  report.value_trace.push_back(report.best_value);

  double p = state.p;
  while (p >= state.p_min) {
    const MajorizationAnchor anchor = make_anchor(inst, x);
    const NesterovResult inner =
        nesterov_minimize(anchor, inst.constraint, x, p, state.grad_tol, state.inner_max_iters);
    x = inner.point;
    report.inner_iterations += inner.iterations;
    report.smoothed_trace.push_back(smooth_value(inst, x, p));
    const double value = max_distance(inst, x);
    if (value < report.best_value) {
      report.best_value = value;
      report.best_point = x;
    }
    report.value_trace.push_back(report.best_value);
    ++report.iterations;
    p *= state.sigma;
  }
  report.final_smoothing = p;
  report.stop_reason = StopReason::SmoothingFloor;
  return report;
}

std::vector<double> mm_fixed_p_trace(const SylvesterInstance& inst, const Point& start, double p,
                                     std::size_t outer_iters, double grad_tol,
                                     std::size_t inner_max_iters) {
  inst.validate();
  require_smoothable(inst);
  Point x = project(inst.constraint, start);
  std::vector<double> trace{smooth_value(inst, x, p)};
  for (std::size_t k = 0; k < outer_iters; ++k) {
    const MajorizationAnchor anchor = make_anchor(inst, x);
    x = nesterov_minimize(anchor, inst.constraint, x, p, grad_tol, inner_max_iters).point;
    trace.push_back(smooth_value(inst, x, p));
  }
  return trace;
}

}  // namespace sylvester
