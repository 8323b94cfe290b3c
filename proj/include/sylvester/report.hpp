#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "sylvester/geometry.hpp"

namespace sylvester {

/// Step sizes alpha_k for k >= 1.
class StepSchedule {
 public:
  enum class Kind { Harmonic, HarmonicSqrt, Constant };

  static StepSchedule harmonic(double c = 1.0) { return StepSchedule(Kind::Harmonic, c); }
  static StepSchedule harmonic_sqrt(double c = 1.0) { return StepSchedule(Kind::HarmonicSqrt, c); }
  static StepSchedule constant(double c) { return StepSchedule(Kind::Constant, c); }

  /// Parses "harmonic:c", "harmonic_sqrt:c" or "constant:c" (":c" optional, default 1).
  static StepSchedule parse(const std::string& text);

  Kind kind() const { return kind_; }
  double coefficient() const { return c_; }

  double step(std::size_t k) const {
    switch (kind_) {
      case Kind::Harmonic: return c_ / double(k);
      case Kind::HarmonicSqrt: return c_ / std::sqrt(double(k));
      case Kind::Constant: return c_;
    }
    return c_;
  }

  std::string to_string() const;

 private:
  StepSchedule(Kind kind, double c);

  Kind kind_;
  double c_;
};

enum class StopReason {
  MaxIterations,
  ValueStall,
  FoundZero,
  /// Directional solver: the active target already contains the iterate.
  MemberBreak,
  /// Directional solver: the next iterate left dom S_1; the report holds the last feasible one.
  LeftDomain,
  /// Smoothing solver: the smoothing parameter fell below its floor.
  SmoothingFloor,
};

const char* to_string(StopReason reason);

struct SolverReport {
  Point best_point;
  double best_value = 0.0;
  /// Outer iterations performed (iterate updates).
  std::size_t iterations = 0;
  /// Running best values V_1, V_2, ...; nonincreasing.
  std::vector<double> value_trace;
  StopReason stop_reason = StopReason::MaxIterations;
  /// The starting point was outside the constraint and got projected.
  bool start_projected = false;

  // Smoothing solver extras.
  std::vector<double> smoothed_trace;  ///< D(x_k, p_k) per outer step
  std::size_t inner_iterations = 0;
  double final_smoothing = 0.0;

  // Audit counters (filled only when auditing is enabled).
  std::size_t audits = 0;
  std::size_t audit_failures = 0;
};

}  // namespace sylvester
