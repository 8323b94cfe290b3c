#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "sylvester/bench.hpp"
#include "sylvester/directional.hpp"
#include "sylvester/instance_io.hpp"
#include "sylvester/solver_mm.hpp"
#include "sylvester/solver_subgrad.hpp"
#include "sylvester/svg.hpp"

namespace py = pybind11;
using namespace sylvester;

namespace {

SolverReport solve(const InstanceDocument& doc, const std::string& solver, std::size_t max_iters,
                   const std::string& schedule, std::optional<Point> start) {
  const SolverKind kind = parse_solver(solver);
  if (!start) start = doc.start;
  if (const auto* d = std::get_if<DirectionalInstance>(&doc.problem)) {
    if (kind != SolverKind::Directional)
      throw Error(ErrorKind::UnsupportedCombination, "directional instances need the directional solver");
    DirectionalOptions opts;
    opts.schedule = StepSchedule::parse(schedule);
    opts.max_iterations = max_iters;
    return solve_directional(*d, start, opts);
  }
  const auto& inst = std::get<SylvesterInstance>(doc.problem);
  if (kind == SolverKind::Directional)
    throw Error(ErrorKind::UnsupportedCombination, "the directional solver needs directional targets");
  if (kind == SolverKind::MM) return solve_mm(inst, start);
  SubgradientOptions opts;
  opts.schedule = StepSchedule::parse(schedule);
  opts.max_iterations = max_iters;
  return solve_subgradient(inst, start, opts);
}

std::optional<double> objective(const InstanceDocument& doc, const Point& x) {
  if (const auto* d = std::get_if<DirectionalInstance>(&doc.problem)) return objective_S1(*d, x);
  return objective_S(std::get<SylvesterInstance>(doc.problem), x);
}

}  // namespace

PYBIND11_MODULE(_sylvester, m) {
  m.doc() = "Generalized smallest intersecting and enclosing ball solvers";

  auto base = py::register_exception<Error>(m, "SylvesterError", PyExc_RuntimeError);
  py::register_exception<ParseError>(m, "ParseError", base.ptr());

  py::class_<InstanceDocument>(m, "Instance")
      .def_property_readonly("dimension", &InstanceDocument::dimension)
      .def_property_readonly("is_directional", &InstanceDocument::is_directional)
      .def_property_readonly("start", [](const InstanceDocument& d) { return d.start; })
      .def("render", &render_instance)
      .def("save", [](const InstanceDocument& d, const std::string& path) { save_instance(d, path); })
      .def("objective", &objective, py::arg("x"),
           "S(x), or S_1(x) for directional instances (None where infinite).");

  py::class_<SolverReport>(m, "Report")
      .def_readonly("value", &SolverReport::best_value)
      .def_readonly("point", &SolverReport::best_point)
      .def_readonly("iterations", &SolverReport::iterations)
      .def_readonly("inner_iterations", &SolverReport::inner_iterations)
      .def_readonly("trace", &SolverReport::value_trace)
      .def_readonly("start_projected", &SolverReport::start_projected)
      .def_property_readonly("stop", [](const SolverReport& r) { return std::string(to_string(r.stop_reason)); });

  m.def("parse_instance", &parse_instance, py::arg("text"));
  m.def("load_instance", &load_instance, py::arg("path"));
  m.def("solve", &solve, py::arg("instance"), py::arg("solver") = "subgrad", py::arg("max_iters") = 100000,
        py::arg("schedule") = "harmonic:1", py::arg("start") = std::nullopt);
  m.def("render_svg", &render_svg, py::arg("instance"), py::arg("report"));

  m.def(
      "generate",
      [](int n, int m_, std::uint32_t seed, const std::string& convention) {
        BenchConfig cfg;
        cfg.n = n;
        cfg.m = m_;
        cfg.seed = seed;
        cfg.convention = parse_convention(convention);
        InstanceDocument doc;
        doc.problem = generate_boxes(cfg);
        return doc;
      },
      py::arg("n"), py::arg("m"), py::arg("seed") = 7, py::arg("convention") = "a");
  m.def(
      "lcg_sequence",
      [](std::uint32_t a0, std::size_t count, const std::string& convention) {
        return lcg_sequence(a0, count, parse_convention(convention));
      },
      py::arg("a0"), py::arg("count"), py::arg("convention") = "a");
}
