#pragma once

#include <cmath>
#include <random>

#include "sylvester/geometry.hpp"
#include "sylvester/timefns.hpp"

namespace sylvester::testing {

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed = 20240611) : rng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

  Vector vector(int n, double scale = 5.0) {
    Vector v(n);
    for (int i = 0; i < n; ++i) v[i] = uniform(-scale, scale);
    return v;
  }

  Vector direction(int n) {
    Vector v(n);
    std::normal_distribution<double> g;
    do {
      for (int i = 0; i < n; ++i) v[i] = g(rng_);
    } while (v.norm() < 1e-3);
    return v / v.norm();
  }

  /// A point of the set (uniform enough for inequality probes).
  Point member(const ConvexSet& set, int n) {
    return std::visit(
        [&](const auto& s) -> Point {
          using T = std::decay_t<decltype(s)>;
          if constexpr (std::is_same_v<T, Ball>) {
            return s.center + s.radius * std::pow(uniform(0, 1), 1.0 / n) * direction(n);
          } else if constexpr (std::is_same_v<T, Box>) {
            Vector u(n);
            for (int i = 0; i < n; ++i) u[i] = uniform(-1, 1);
            if (integer(0, 3) == 0) u[integer(0, n - 1)] = integer(0, 1) ? 1.0 : -1.0;
            return s.center + s.radius * u;
          } else if constexpr (std::is_same_v<T, Halfspace>) {
            const Point base = project(set, vector(n));
            return base - uniform(0, 3) * s.normal / s.normal.norm();
          } else if constexpr (std::is_same_v<T, Singleton>) {
            return s.point;
          } else if constexpr (std::is_same_v<T, ParabolaEpigraph2D>) {
            const double x = uniform(-4, 4);
            Point p(2);
            p << x, (x - s.shift) * (x - s.shift) + s.offset + (integer(0, 3) ? uniform(0, 3) : 0.0);
            return p;
          } else {
            return vector(n);
          }
        },
        set);
  }

  ConvexSet bounded_set(int n) {
    switch (integer(0, 2)) {
      case 0: return Ball{vector(n), uniform(0.1, 3)};
      case 1: return Box{vector(n), uniform(0.1, 3)};
      default: return Singleton{vector(n)};
    }
  }

  ConvexSet any_set(int n) {
    const int pick = integer(0, n == 2 ? 4 : 3);
    if (pick == 3) return Halfspace{direction(n) * uniform(0.5, 2), uniform(-3, 3)};
    if (pick == 4) return ParabolaEpigraph2D{uniform(-2, 2), uniform(-2, 2)};
    return bounded_set(n);
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

inline Point P(std::initializer_list<double> xs) {
  Point p(Eigen::Index(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) p[i++] = x;
  return p;
}

inline SylvesterInstance seven_disks() {
  SylvesterInstance inst;
  inst.dimension = 2;
  inst.intersect_targets = {Ball{P({-6, 9}), 3}, Ball{P({12, 9}), 2.5}, Ball{P({-1, -6}), 2.5}};
  inst.enclose_targets = {Ball{P({-8, 5}), 1}, Ball{P({-7, 0}), 2}, Ball{P({7, 1}), 4},
                          Ball{P({2, 6}), 5}};
  return inst;
}

inline SylvesterInstance five_cubes() {
  SylvesterInstance inst;
  inst.dimension = 3;
  for (const auto& c : {P({-5, 0, 0}), P({1, 4, 4}), P({0, 5, 0}), P({-4, -3, 2}), P({0, 0, 5})}) {
    inst.intersect_targets.push_back(Box{c, 1.0});
  }
  return inst;
}

}  // namespace sylvester::testing
