#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "sylvester/bench.hpp"
#include "sylvester/directional.hpp"
#include "sylvester/instance_io.hpp"
#include "sylvester/solver_mm.hpp"
#include "sylvester/solver_subgrad.hpp"
#include "sylvester/svg.hpp"

namespace {

using namespace sylvester;

constexpr int kExitParse = 2;
constexpr int kExitSolver = 3;

struct SolverFlags {
  std::string solver = "subgrad";
  std::size_t max_iters = 100000;
  std::string schedule = "harmonic:1";
  std::size_t stall_window = 1000;
  double stall_tol = 1e-9;
  std::size_t audit_every = 0;
  double p0 = 0.1;
  double sigma = 0.5;
  double p_min = 1e-6;
  double grad_tol = 1e-5;
  std::size_t inner_max_iters = 10000;
};

void add_solver_flags(CLI::App* app, SolverFlags& f) {
  app->add_option("--solver", f.solver, "subgrad, mm or directional")
      ->check(CLI::IsMember({"subgrad", "mm", "directional"}));
  app->add_option("--max-iters", f.max_iters, "subgradient iteration cap K");
  app->add_option("--schedule", f.schedule, "step rule: harmonic:c, harmonic_sqrt:c or constant:c");
  app->add_option("--stall-window", f.stall_window, "stall window in iterations (0 disables)");
  app->add_option("--stall-tol", f.stall_tol, "minimum improvement over the stall window");
  app->add_option("--audit", f.audit_every, "audit subgradients every N iterations (0 disables)");
  app->add_option("--p0", f.p0, "initial smoothing parameter");
  app->add_option("--sigma", f.sigma, "smoothing shrink factor in (0, 1)");
  app->add_option("--p-min", f.p_min, "smoothing floor");
  app->add_option("--grad-tol", f.grad_tol, "inner gradient-mapping tolerance");
  app->add_option("--inner-max-iters", f.inner_max_iters, "inner iteration cap per smoothing level");
}

SubgradientOptions subgradient_options(const SolverFlags& f) {
  SubgradientOptions o;
  o.schedule = StepSchedule::parse(f.schedule);
  o.max_iterations = f.max_iters;
  o.stall_window = f.stall_window;
  o.stall_tol = f.stall_tol;
  o.audit_every = f.audit_every;
  return o;
}

DirectionalOptions directional_options(const SolverFlags& f) {
  DirectionalOptions o;
  o.schedule = StepSchedule::parse(f.schedule);
  o.max_iterations = f.max_iters;
  o.stall_window = f.stall_window;
  o.stall_tol = f.stall_tol;
  return o;
}

SmoothingState smoothing_state(const SolverFlags& f) {
  SmoothingState s;
  s.p = f.p0;
  s.sigma = f.sigma;
  s.p_min = f.p_min;
  s.grad_tol = f.grad_tol;
  s.inner_max_iters = f.inner_max_iters;
  s.validate();
  return s;
}

std::string join(const Point& x) {
  std::string out;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (i) out += ' ';
    out += format_number(x[i]);
  }
  return out;
}

int run_solve(const std::string& path, const SolverFlags& flags, const std::string& svg_path,
              const std::string& csv_path) {
  InstanceDocument doc;
  try {
    doc = load_instance(path);
  } catch (const ParseError& e) {
    std::cerr << path << ':' << e.line() << ':' << e.column() << ": " << e.what() << '\n';
    return kExitParse;
  } catch (const Error& e) {
    std::cerr << e.what() << '\n';
    return kExitParse;
  }

  try {
    const SolverKind kind = parse_solver(flags.solver);
    if ((kind == SolverKind::Directional) != doc.is_directional()) {
      throw Error(ErrorKind::UnsupportedCombination,
                  doc.is_directional() ? "directional instances need --solver directional"
                                       : "--solver directional needs a directional instance");
    }
    const auto t0 = std::chrono::steady_clock::now();
    SolverReport report;
    int m = 0;
    if (doc.is_directional()) {
      const auto& inst = std::get<DirectionalInstance>(doc.problem);
      m = int(inst.targets.size());
      report = solve_directional(inst, doc.start, directional_options(flags));
    } else {
      const auto& inst = std::get<SylvesterInstance>(doc.problem);
      m = int(inst.target_count());
      report = kind == SolverKind::MM ? solve_mm(inst, doc.start, smoothing_state(flags))
                                      : solve_subgradient(inst, doc.start, subgradient_options(flags));
    }
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const std::size_t iterations = kind == SolverKind::MM ? report.inner_iterations : report.iterations;

    std::cout << "value " << format_number(report.best_value) << '\n'
              << "point " << join(report.best_point) << '\n'
              << "iterations " << iterations << '\n'
              << "stop " << to_string(report.stop_reason) << '\n'
              << "seconds " << format_number(wall) << '\n';
    if (report.audits > 0) {
      std::cout << "audits " << report.audits << " failures " << report.audit_failures << '\n';
    }

    if (!csv_path.empty()) {
      std::ofstream out(csv_path);
      if (!out) throw Error(ErrorKind::InvalidArgument, "cannot write '" + csv_path + "'");
      write_run_csv(out, {kind, doc.dimension(), m, report.best_value, iterations, wall});
    }
    if (!svg_path.empty()) {
      if (doc.dimension() == 2) {
        save_svg(doc, report, svg_path);
      } else {
        std::cerr << "note: SVG output skipped, instance is not planar\n";
      }
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitSolver;
  }
  return 0;
}

int run_bench(int table, const SolverFlags& flags, const std::string& convention,
              std::uint32_t seed, const std::string& csv_path) {
  try {
    BenchConfig cfg;
    cfg.solver = parse_solver(flags.solver);
    cfg.convention = parse_convention(convention);
    cfg.seed = seed;
    cfg.subgradient = subgradient_options(flags);
    cfg.smoothing = smoothing_state(flags);
    std::vector<BenchRow> rows;
    for (const auto& c : table_cases(table)) {
      rows.push_back(run_bench_case(c, cfg));
      const auto& r = rows.back();
      std::cout << "n=" << r.n << " m=" << r.m << " " << to_string(r.solver) << " value "
                << format_number(r.value);
      if (r.reference) std::cout << " reference " << format_number(*r.reference);
      std::cout << " iterations " << r.iterations << " seconds " << format_number(r.wall_seconds)
                << '\n';
    }
    if (!csv_path.empty()) {
      std::ofstream out(csv_path);
      if (!out) throw Error(ErrorKind::InvalidArgument, "cannot write '" + csv_path + "'");
      write_bench_csv(out, rows);
    } else {
      write_bench_csv(std::cout, rows);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitSolver;
  }
  return 0;
}

int run_gen(int n, int m, std::uint32_t seed, const std::string& convention, const std::string& out) {
  try {
    BenchConfig cfg;
    cfg.n = n;
    cfg.m = m;
    cfg.seed = seed;
    cfg.convention = parse_convention(convention);
    InstanceDocument doc;
    doc.problem = generate_boxes(cfg);
    if (out.empty() || out == "-") {
      std::cout << render_instance(doc);
    } else {
      save_instance(doc, out);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitSolver;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generalized Sylvester problem solvers"};
  app.require_subcommand(1);

  SolverFlags solve_flags;
  std::string instance_path, svg_path, solve_csv;
  auto* solve = app.add_subcommand("solve", "solve an instance file");
  solve->add_option("file", instance_path, "instance file")->required();
  add_solver_flags(solve, solve_flags);
  solve->add_option("--svg", svg_path, "write an SVG drawing (planar instances)");
  solve->add_option("--csv", solve_csv, "write a one-row CSV report");

  SolverFlags bench_flags;
  bench_flags.solver = "mm";
  int table = 1;
  std::string bench_csv, bench_convention = "a";
  std::uint32_t bench_seed = 7;
  auto* bench = app.add_subcommand("bench", "run a benchmark table on generated boxes");
  bench->add_option("--table", table, "1 or 2")->check(CLI::IsMember({1, 2}))->required();
  add_solver_flags(bench, bench_flags);
  bench->add_option("--csv", bench_csv, "CSV output path (default stdout)");
  bench->add_option("--convention", bench_convention, "generator indexing: a or b")
      ->check(CLI::IsMember({"a", "b"}));
  bench->add_option("--seed", bench_seed, "generator seed a0")->check(CLI::Range(0, 4095));

  int gen_n = 2, gen_m = 100;
  std::uint32_t gen_seed = 7;
  std::string gen_out, gen_convention = "a";
  auto* gen = app.add_subcommand("gen", "write a generated box instance");
  gen->add_option("--n", gen_n, "dimension")->check(CLI::PositiveNumber);
  gen->add_option("--m", gen_m, "number of boxes")->check(CLI::PositiveNumber);
  gen->add_option("--seed", gen_seed, "generator seed a0")->check(CLI::Range(0, 4095));
  gen->add_option("--out", gen_out, "output path (default stdout)");
  gen->add_option("--convention", gen_convention, "generator indexing: a or b")
      ->check(CLI::IsMember({"a", "b"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitParse;
  }

  if (*solve) return run_solve(instance_path, solve_flags, svg_path, solve_csv);
  if (*bench) return run_bench(table, bench_flags, bench_convention, bench_seed, bench_csv);
  return run_gen(gen_n, gen_m, gen_seed, gen_convention, gen_out);
}
