#include <doctest.h>

#include "sylvester/solver_subgrad.hpp"
#include "support.hpp"

using namespace sylvester;
using sylvester::testing::P;
using sylvester::testing::Sampler;

namespace {

void check_trace(const SolverReport& r) {
  for (std::size_t k = 1; k < r.value_trace.size(); ++k) CHECK(r.value_trace[k] <= r.value_trace[k - 1]);
  CHECK(r.value_trace.back() == r.best_value);
}

}  // namespace

TEST_CASE("schedules") {
  CHECK(StepSchedule::parse("harmonic:2").step(4) == 0.5);
  CHECK(StepSchedule::parse("harmonic").step(2) == 0.5);
  CHECK(StepSchedule::parse("harmonic_sqrt:3").step(9) == 1.0);
  CHECK(StepSchedule::parse("constant:0.25").step(100) == 0.25);
  CHECK_THROWS_AS(StepSchedule::parse("harmonic:-1"), Error);
  CHECK_THROWS_AS(StepSchedule::parse("geometric:0.5"), Error);
  CHECK_THROWS_AS(StepSchedule::parse("harmonic:abc"), Error);
}

TEST_CASE("error bound arithmetic") {
  CHECK(error_bound(1, 1, StepSchedule::harmonic(1), 1) == doctest::Approx(1.0));
  CHECK(error_bound(0, 1, StepSchedule::harmonic(1), 2) == doctest::Approx(5.0 / 12.0));
  CHECK(error_bound(0, 2, StepSchedule::constant(0.1), 50) > 0.0);
}

TEST_CASE("two enclosed points") {
  SylvesterInstance inst;
  inst.dimension = 2;
  inst.enclose_targets = {Singleton{P({-1, 0})}, Singleton{P({1, 0})}};
  SubgradientOptions opts;
  opts.max_iterations = 10000;
  opts.stall_window = 0;
  const auto r = solve_subgradient(inst, P({5, 5}), opts);
  CHECK(r.best_value - 1.0 <= 0.01);
  CHECK(r.best_point.norm() < 0.15);
  check_trace(r);
}

TEST_CASE("start inside the only target stops immediately") {
  SylvesterInstance inst;
  inst.dimension = 2;
  inst.intersect_targets = {Ball{P({0, 0}), 1}};
  const auto r = solve_subgradient(inst, P({0.5, 0}));
  CHECK(r.best_value == 0.0);
  CHECK(r.stop_reason == StopReason::FoundZero);
  CHECK(r.value_trace.front() == 0.0);
}

TEST_CASE("seven disks") {
  SubgradientOptions opts;
  opts.max_iterations = 200000;
  const auto r = solve_subgradient(sylvester::testing::seven_disks(), std::nullopt, opts);
  CHECK(r.best_value == doctest::Approx(10.31).epsilon(0.005));
  CHECK((r.best_point - P({0.89, 2.61})).norm() < 0.1);
  check_trace(r);
}

TEST_CASE("audited runs stay feasible and keep valid subgradients") {
  Sampler s(31);
  const Dynamic dyn[] = {Dynamic::euclidean(), Dynamic::scaled_euclidean(0.5), Dynamic::linf(),
                         Dynamic::l1()};
  for (int trial = 0; trial < 24; ++trial) {
    SylvesterInstance inst;
    inst.dimension = 2;
    inst.dynamic = dyn[trial % 4];
    inst.constraint = trial % 3 == 0 ? ConvexSet(Ball{s.vector(2, 2), 3.0})
                    : trial % 3 == 1 ? ConvexSet(Halfspace{s.direction(2), 1.0})
                                     : ConvexSet(WholeSpace{});
    for (int i = 0; i < 4; ++i) inst.intersect_targets.push_back(s.any_set(2));
    inst.enclose_targets.push_back(Box{s.vector(2), 1.0});
    inst.enclose_targets.push_back(Singleton{s.vector(2)});
    SubgradientOptions opts;
    opts.max_iterations = 2000;
    opts.audit_every = 100;
    const auto r = solve_subgradient(inst, s.vector(2, 8), opts);
    CHECK(r.audits > 0);
    CHECK(r.audit_failures == 0);
    CHECK(contains(inst.constraint, r.best_point, 1e-8));
    CHECK(objective_S(inst, r.best_point) == doctest::Approx(r.best_value).epsilon(1e-12));
    check_trace(r);
  }
}

TEST_CASE("projected start is flagged") {
  SylvesterInstance inst;
  inst.dimension = 2;
  inst.constraint = Ball{P({0, 0}), 1};
  inst.intersect_targets = {Singleton{P({3, 0})}};
  SubgradientOptions opts;
  opts.max_iterations = 5000;
  const auto r = solve_subgradient(inst, P({0, 4}), opts);
  CHECK(r.start_projected);
  CHECK(r.best_value == doctest::Approx(2.0).epsilon(1e-3));
}
