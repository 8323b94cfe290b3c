#include <doctest.h>

#include <cmath>

#include "support.hpp"

using namespace sylvester;
using sylvester::testing::P;
using sylvester::testing::Sampler;

namespace {

const Dynamic kDynamics[] = {Dynamic::euclidean(), Dynamic::scaled_euclidean(2.0), Dynamic::linf(),
                             Dynamic::l1()};

// Brute-force minimal time: min over sampled points w of the set of gauge(w - x).
double sampled_minimal_time(const Dynamic& f, const ConvexSet& set, const Point& x, Sampler& s) {
  double best = gauge(f, project(set, x) - x);
  for (int i = 0; i < 20000; ++i) best = std::min(best, gauge(f, s.member(set, int(x.size())) - x));
  return best;
}

SylvesterInstance random_instance(Sampler& s, const Dynamic& f, int n) {
  SylvesterInstance inst;
  inst.dimension = n;
  inst.dynamic = f;
  const int mi = s.integer(1, 4);
  const int me = s.integer(0, 3);
  for (int i = 0; i < mi; ++i) inst.intersect_targets.push_back(s.any_set(n));
  for (int j = 0; j < me; ++j) {
    if (f.is_euclidean_like()) {
      inst.enclose_targets.push_back(s.bounded_set(n));
    } else {
      inst.enclose_targets.push_back(s.integer(0, 1) ? ConvexSet(Box{s.vector(n), s.uniform(0.1, 3)})
                                                      : ConvexSet(Singleton{s.vector(n)}));
    }
  }
  return inst;
}

}  // namespace

TEST_CASE("minimal time examples") {
  const ConvexSet ball = Ball{P({0, 0}), 2};
  CHECK(minimal_time(Dynamic::euclidean(), ball, P({5, 0})) == doctest::Approx(3));
  CHECK(minimal_time(Dynamic::euclidean(), ball, P({1, 1})) == 0.0);
  CHECK(minimal_time(Dynamic::scaled_euclidean(2), ball, P({5, 0})) == doctest::Approx(1.5));

  // Oracle for the scaled case: grid over the boundary circle.
  double best = INFINITY;
  for (int i = 0; i < 100000; ++i) {
    const double th = 2 * M_PI * i / 100000;
    best = std::min(best, std::hypot(5 - 2 * std::cos(th), 2 * std::sin(th)) / 2);
  }
  CHECK(best == doctest::Approx(1.5).epsilon(1e-9));
}

TEST_CASE("maximal time examples") {
  CHECK(maximal_time(Dynamic::euclidean(), Ball{P({0, 0}), 2}, P({5, 0})) == doctest::Approx(7));
  CHECK(maximal_time(Dynamic::euclidean(), Singleton{P({1, 1})}, P({1, 1})) == 0.0);
  CHECK(maximal_time(Dynamic::euclidean(), Box{P({0, 0}), 1}, P({0.25, 0})) ==
        doctest::Approx(std::sqrt(1.25 * 1.25 + 1)));
  CHECK_THROWS_AS(maximal_time(Dynamic::linf(), Ball{P({0, 0}), 1}, P({3, 0})), Error);
}

TEST_CASE("objective examples") {
  const auto inst = sylvester::testing::seven_disks();
  CHECK(objective_S(inst, P({0.89, 2.61})) == doctest::Approx(10.31).epsilon(0.005));

  SylvesterInstance one;
  one.dimension = 2;
  one.intersect_targets = {Ball{P({0, 0}), 1}};
  CHECK(objective_S(one, P({0.2, 0.3})) == 0.0);

  SylvesterInstance pair;
  pair.dimension = 2;
  pair.enclose_targets = {Singleton{P({-1, 0})}, Singleton{P({1, 0})}};
  CHECK(objective_S(pair, P({0, 0})) == doctest::Approx(1));
  const auto both = active_sets(pair, P({0, 0}));
  CHECK(both.a1.empty());
  CHECK(both.a2 == std::vector<std::size_t>{0, 1});
  CHECK(active_sets(pair, P({0.1, 0.3}), 0.0).a2.size() == 1);
}

TEST_CASE("active sets at the optimal center of the seven-disk instance") {
  const auto inst = sylvester::testing::seven_disks();
  const Point x = P({0.89, 2.61});
  std::vector<std::pair<double, std::string>> values;
  for (std::size_t i = 0; i < 3; ++i) values.emplace_back(minimal_time(inst, i, x), "i");
  for (std::size_t j = 0; j < 4; ++j) values.emplace_back(maximal_time(inst, j, x), "e");
  std::sort(values.rbegin(), values.rend());
  // Three components sit within 0.05 of the optimum; the fourth is clearly below.
  CHECK(values[0].first - values[2].first < 0.05);
  CHECK(values[2].first - values[3].first > 0.05);
  const auto act = active_sets(inst, x, 0.01);
  CHECK(act.a1.size() + act.a2.size() == 3);
}

TEST_CASE("subgradient examples") {
  const Dynamic e = Dynamic::euclidean();
  CHECK((minimal_time_subgradient(e, Ball{P({0, 0}), 2}, P({5, 0})) - P({1, 0})).norm() < 1e-15);
  CHECK(minimal_time_subgradient(e, Ball{P({0, 0}), 2}, P({1, 0})).norm() == 0.0);
  CHECK((minimal_time_subgradient(e, Halfspace{P({0, 1}), 0}, P({3, 4})) - P({0, 1})).norm() < 1e-15);
  CHECK((maximal_time_subgradient(e, Ball{P({0, 0}), 2}, P({5, 0})) - P({1, 0})).norm() < 1e-15);
  CHECK((maximal_time_subgradient(e, Singleton{P({0, 0})}, P({3, 4})) - P({0.6, 0.8})).norm() < 1e-15);
  const Point x = P({0.25, 0});
  const Vector expect = (x - P({-1, -1})) / (x - P({-1, -1})).norm();
  CHECK((maximal_time_subgradient(e, Box{P({0, 0}), 1}, x) - expect).norm() < 1e-15);
}

TEST_CASE("minimal time matches a sampled oracle for every dynamic") {
  Sampler s(21);
  for (int trial = 0; trial < 40; ++trial) {
    const Dynamic& f = kDynamics[trial % 4];
    const int n = 2;
    const ConvexSet set = s.bounded_set(n);
    const Point x = s.vector(n, 8);
    const double t = minimal_time(f, set, x);
    // The closed form is never worse than any sampled member.
    CHECK(t <= sampled_minimal_time(f, set, x, s) + 1e-9);
    // And it is attained by the generalized projection.
    const Point w = generalized_projection(f, set, x);
    CHECK(contains(set, w, 1e-7));
    CHECK(gauge(f, w - x) == doctest::Approx(t).epsilon(1e-7));
  }
}

TEST_CASE("zero minimal time exactly on the set") {
  Sampler s(22);
  for (int trial = 0; trial < 1000; ++trial) {
    const Dynamic& f = kDynamics[trial % 4];
    const int n = s.integer(1, 3) == 1 ? 2 : s.integer(1, 3);
    const ConvexSet set = s.any_set(n);
    const Point x = s.integer(0, 1) ? s.member(set, n) : s.vector(n, 6);
    const bool inside = contains(set, x, 1e-9);
    CHECK((minimal_time(f, set, x) == 0.0) == inside);
  }
}

TEST_CASE("Euclidean dynamics reduce to distances") {
  Sampler s(23);
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = s.integer(1, 4) == 1 ? 2 : s.integer(1, 4);
    const ConvexSet set = s.any_set(n);
    const Point x = s.vector(n, 8);
    CHECK(std::abs(minimal_time(Dynamic::euclidean(), set, x) - distance(set, x)) <= 1e-10);
    if (is_bounded(set)) {
      CHECK(std::abs(maximal_time(Dynamic::euclidean(), set, x) - farthest_point(set, x).distance) <= 1e-10);
    }
  }
}

TEST_CASE("subgradient inequalities for components and the objective") {
  Sampler s(24);
  for (int trial = 0; trial < 1000; ++trial) {
    const Dynamic& f = kDynamics[trial % 4];
    const int n = s.integer(0, 1) ? 2 : s.integer(1, 3);
    const SylvesterInstance inst = random_instance(s, f, n);
    const Point xbar = s.vector(n, 6);
    const double sbar = objective_S(inst, xbar);
    const Vector gs = subgradient_S(inst, xbar);
    for (std::size_t i = 0; i < inst.intersect_targets.size(); ++i) {
      const Vector g = subgradient_T(inst, i, xbar);
      const double base = minimal_time(inst, i, xbar);
      const Point x = s.vector(n, 8);
      CHECK(minimal_time(inst, i, x) >= base + g.dot(x - xbar) - 1e-8);
    }
    for (std::size_t j = 0; j < inst.enclose_targets.size(); ++j) {
      if (maximal_time(inst, j, xbar) == 0.0) continue;
      const Vector g = subgradient_C(inst, j, xbar);
      const double base = maximal_time(inst, j, xbar);
      const Point x = s.vector(n, 8);
      CHECK(maximal_time(inst, j, x) >= base + g.dot(x - xbar) - 1e-8);
    }
    const Point x = s.vector(n, 8);
    CHECK(objective_S(inst, x) >= sbar + gs.dot(x - xbar) - 1e-8);
  }
}

TEST_CASE("objective Lipschitz bound") {
  Sampler s(25);
  for (int trial = 0; trial < 1000; ++trial) {
    const Dynamic& f = kDynamics[trial % 4];
    const int n = s.integer(1, 3);
    const SylvesterInstance inst = random_instance(s, f, n);
    const Point x = s.vector(n, 6);
    const Point y = s.vector(n, 6);
    CHECK(std::abs(objective_S(inst, x) - objective_S(inst, y)) <= objective_lipschitz(inst) * (x - y).norm() + 1e-9);
  }
}

TEST_CASE("instance validation") {
  SylvesterInstance inst;
  inst.dimension = 2;
  CHECK_THROWS_AS(inst.validate(), Error);
  inst.intersect_targets = {Ball{P({0, 0, 0}), 1}};
  CHECK_THROWS_AS(inst.validate(), Error);
  inst.intersect_targets = {Ball{P({0, 0}), 1}};
  inst.enclose_targets = {Halfspace{P({1, 0}), 0}};
  CHECK_THROWS_AS(inst.validate(), Error);
}
