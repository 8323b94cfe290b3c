#include <doctest.h>

#include <map>
#include <sstream>

#include "sylvester/bench.hpp"
#include "sylvester/instance_io.hpp"
#include "sylvester/svg.hpp"
#include "support.hpp"

using namespace sylvester;
using sylvester::testing::P;
using sylvester::testing::Sampler;

namespace {

bool same_set(const ConvexSet& a, const ConvexSet& b) {
  if (a.index() != b.index()) return false;
  return std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        const T& y = std::get<T>(b);
        if constexpr (std::is_same_v<T, Ball> || std::is_same_v<T, Box>) {
          return x.center == y.center && x.radius == y.radius;
        } else if constexpr (std::is_same_v<T, Halfspace>) {
          return x.normal == y.normal && x.offset == y.offset;
        } else if constexpr (std::is_same_v<T, Singleton>) {
          return x.point == y.point;
        } else if constexpr (std::is_same_v<T, ParabolaEpigraph2D>) {
          return x.shift == y.shift && x.offset == y.offset;
        } else {
          return true;
        }
      },
      a);
}

bool same_list(const std::vector<ConvexSet>& a, const std::vector<ConvexSet>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!same_set(a[i], b[i])) return false;
  return true;
}

void expect_parse_error(const std::string& text, int line, int column) {
  try {
    parse_instance(text);
    FAIL("expected a parse error for: " << text);
  } catch (const ParseError& e) {
    CHECK(e.line() == line);
    CHECK(e.column() == column);
    CHECK(e.kind() == ErrorKind::ParseError);
  }
}

// Tiny well-formedness check: balanced tags, quoted attributes, one root.
bool well_formed_xml(const std::string& text) {
  std::vector<std::string> stack;
  std::size_t i = text.find("<svg");
  if (i == std::string::npos) return false;
  int roots = 0;
  while ((i = text.find('<', i)) != std::string::npos) {
    const std::size_t end = text.find('>', i);
    if (end == std::string::npos) return false;
    std::string tag = text.substr(i + 1, end - i - 1);
    if (std::count(tag.begin(), tag.end(), '"') % 2) return false;
    if (tag[0] == '/') {
      if (stack.empty() || stack.back() != tag.substr(1)) return false;
      stack.pop_back();
    } else if (tag.back() != '/') {
      const std::string name = tag.substr(0, tag.find_first_of(" \n"));
      if (stack.empty()) ++roots;
      stack.push_back(name);
    }
    i = end + 1;
  }
  return stack.empty() && roots == 1;
}

}  // namespace

TEST_CASE("generator recurrence") {
  const auto a = lcg_states(7, 3);
  CHECK(a[0] == 3116);
  CHECK(a[1] == (445u * 3116u + 1u) % 4096u);
  CHECK(lcg_sequence(7, 1)[0] == 76.07421875);
  CHECK(lcg_states(0, 1)[0] == 1);
  CHECK(lcg_sequence(0, 1)[0] == 1 / 40.96);
  CHECK(lcg_states(7, 1, IndexConvention::FirstIsSeed)[0] == 7);

  const auto long_run = lcg_states(7, 10000);
  std::uint64_t state = 7;
  for (std::size_t i = 0; i < long_run.size(); ++i) {
    state = (445 * state + 1) % 4096;
    REQUIRE(long_run[i] == state);
  }
  // Full-period generator: the first repeat is at distance 4096.
  const auto cyc = lcg_states(7, 100000);
  std::map<std::uint32_t, std::size_t> first;
  std::size_t period = 0;
  for (std::size_t i = 0; i < cyc.size() && !period; ++i) {
    auto [it, fresh] = first.emplace(cyc[i], i);
    if (!fresh) period = i - it->second;
  }
  CHECK(period > 0);
  CHECK(4096 % period == 0);
  CHECK_THROWS_AS(lcg_states(4096, 1), Error);
}

TEST_CASE("generated boxes") {
  BenchConfig cfg;
  cfg.n = 3;
  cfg.m = 1;
  const auto inst = generate_boxes(cfg);
  const auto b = lcg_sequence(7, 4);
  const Box& box = std::get<Box>(inst.intersect_targets.at(0));
  CHECK(box.radius == 7.607421875);
  CHECK(box.center == P({b[1], b[2], b[3]}));
  CHECK(std::holds_alternative<WholeSpace>(inst.constraint));
  CHECK(inst.dynamic == Dynamic::euclidean());

  cfg.n = 4;
  cfg.m = 9;
  const auto many = generate_boxes(cfg);
  const auto seq = lcg_sequence(7, 45);
  CHECK(std::get<Box>(many.intersect_targets.back()).center[3] == seq.back());
  CHECK(same_list(many.intersect_targets, generate_boxes(cfg).intersect_targets));

  cfg.m = 0;
  CHECK_THROWS_AS(generate_boxes(cfg), Error);
}

TEST_CASE("parsing a full document") {
  const std::string text =
      "# comment line\n"
      "dimension 2\n"
      "dynamic scaled 0.5   # trailing comment\n"
      "constraint halfspace 1 0 3\n"
      "intersect ball 0 0 1\n"
      "intersect parabola 1 2\n"
      "enclose box 1 1 0.5\n"
      "enclose singleton -2 4\n"
      "start 0.5 0.25\n";
  const auto doc = parse_instance(text);
  REQUIRE_FALSE(doc.is_directional());
  const auto& inst = std::get<SylvesterInstance>(doc.problem);
  CHECK(inst.dynamic == Dynamic::scaled_euclidean(0.5));
  CHECK(inst.intersect_targets.size() == 2);
  CHECK(inst.enclose_targets.size() == 2);
  CHECK(*doc.start == P({0.5, 0.25}));
}

TEST_CASE("parse errors carry positions") {
  expect_parse_error("intersect ball 0 0 1\n", 1, 1);
  expect_parse_error("dimension 2\nintersect ball 0 x 1\n", 2, 18);
  expect_parse_error("dimension 2\nintersect ball 0 0\n", 2, 19);
  expect_parse_error("dimension 2\nintersect cone 0 0 1\n", 2, 11);
  expect_parse_error("dimension 2\nintersect ball 0 0 1 7\n", 2, 22);
  expect_parse_error("dimension 2\nenclose halfspace 1 0 0\n", 2, 23);
  expect_parse_error("dimension 2\nintersect ball 0 0 1\ndirectional ball 0 0 1 direction 1 0\n", 3, 1);
  expect_parse_error("dimension 2\ndirectional ball 0 0 1 direction 1 0\nenclose ball 0 0 1\n", 3, 1);
  expect_parse_error("dimension 3\nintersect parabola 1 2\n", 2, 11);
  expect_parse_error("dimension 2\n", 2, 1);
  expect_parse_error("dimension 2\nintersect ball 0 0 -1\n", 2, 20);
  expect_parse_error("dimension 2\nfrobnicate\n", 2, 1);
}

TEST_CASE("render and parse round trip") {
  Sampler s(61);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = s.integer(0, 1) ? 2 : s.integer(1, 4);
    InstanceDocument doc;
    if (trial % 3 == 2) {
      DirectionalInstance d;
      d.dimension = n;
      d.constraint = s.integer(0, 1) ? s.any_set(n) : ConvexSet(WholeSpace{});
      for (int i = 0; i < 3; ++i) d.targets.push_back({s.any_set(n), s.direction(n) * s.uniform(0.1, 3)});
      doc.problem = d;
    } else {
      SylvesterInstance inst;
      inst.dimension = n;
      const Dynamic dyn[] = {Dynamic::euclidean(), Dynamic::scaled_euclidean(s.uniform(0.1, 3)),
                             Dynamic::linf(), Dynamic::l1()};
      inst.dynamic = dyn[s.integer(0, 3)];
      inst.constraint = s.integer(0, 1) ? s.any_set(n) : ConvexSet(WholeSpace{});
      for (int i = 0; i < 3; ++i) inst.intersect_targets.push_back(s.any_set(n));
      for (int i = 0; i < 2; ++i) inst.enclose_targets.push_back(s.bounded_set(n));
      doc.problem = inst;
    }
    if (s.integer(0, 1)) doc.start = s.vector(n);
    const auto back = parse_instance(render_instance(doc));
    REQUIRE(back.problem.index() == doc.problem.index());
    CHECK(back.dimension() == doc.dimension());
    CHECK(back.start.has_value() == doc.start.has_value());
    if (doc.start) CHECK(*back.start == *doc.start);
    if (const auto* a = std::get_if<SylvesterInstance>(&doc.problem)) {
      const auto& b = std::get<SylvesterInstance>(back.problem);
      CHECK(a->dynamic == b.dynamic);
      CHECK(same_set(a->constraint, b.constraint));
      CHECK(same_list(a->intersect_targets, b.intersect_targets));
      CHECK(same_list(a->enclose_targets, b.enclose_targets));
    } else {
      const auto& a2 = std::get<DirectionalInstance>(doc.problem);
      const auto& b2 = std::get<DirectionalInstance>(back.problem);
      CHECK(same_set(a2.constraint, b2.constraint));
      REQUIRE(a2.targets.size() == b2.targets.size());
      for (std::size_t i = 0; i < a2.targets.size(); ++i) {
        CHECK(same_set(a2.targets[i].set, b2.targets[i].set));
        CHECK(a2.targets[i].direction == b2.targets[i].direction);
      }
    }
  }
}

TEST_CASE("number formatting") {
  CHECK(format_number(10.313895812) == "10.3138958");
  CHECK(format_number(56.432305) == "56.432305");
  CHECK(format_number(2.99157411e2) == "299.157411");
}

TEST_CASE("CSV layout") {
  std::ostringstream os;
  write_bench_csv(os, {{"1", 2, 100, SolverKind::MM, 56.4323058, 56.432305, 4343, 0.07}});
  CHECK(os.str() ==
        "table,n,m,solver,value,reference,iterations,wall_seconds\n"
        "1,2,100,mm,56.4323058,56.432305,4343,0.07\n");
  std::ostringstream run;
  write_run_csv(run, {SolverKind::Subgradient, 2, 7, 10.3138958, 2902, 0.002});
  CHECK(run.str() == "solver,n,m,value,iterations,wall_seconds\nsubgrad,2,7,10.3138958,2902,0.002\n");
}

TEST_CASE("SVG output is well formed") {
  InstanceDocument doc;
  doc.problem = sylvester::testing::seven_disks();
  SolverReport r;
  r.best_point = P({0.89, 2.61});
  r.best_value = 10.31;
  const std::string svg = render_svg(doc, r);
  CHECK(well_formed_xml(svg));
  CHECK(svg.find("<circle") != std::string::npos);

  DirectionalInstance d;
  d.dimension = 2;
  d.targets = {{ParabolaEpigraph2D{1, 2}, P({0, 1})}, {Halfspace{P({1, 1}), -1}, P({-1, 0})}};
  doc.problem = d;
  r.best_point = P({0.5, 0.375});
  r.best_value = 1.875;
  const std::string dsvg = render_svg(doc, r);
  CHECK(well_formed_xml(dsvg));
  CHECK(dsvg.find("<polygon") != std::string::npos);
  CHECK(dsvg.find("<line") != std::string::npos);

  doc.problem = sylvester::testing::five_cubes();
  r.best_point = P({0, 0, 0});
  CHECK_THROWS_AS(render_svg(doc, r), Error);
}
