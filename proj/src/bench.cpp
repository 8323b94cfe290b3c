#include "sylvester/bench.hpp"

#include <chrono>

#include "sylvester/instance_io.hpp"

namespace sylvester {

IndexConvention parse_convention(const std::string& text) {
  if (text == "a" || text == "A") return IndexConvention::FirstIsNext;
  if (text == "b" || text == "B") return IndexConvention::FirstIsSeed;
  throw Error(ErrorKind::InvalidArgument, "index convention must be 'a' or 'b'");
}

std::vector<std::uint32_t> lcg_states(std::uint32_t a0, std::size_t count,
                                      IndexConvention convention) {
  if (a0 >= 4096) throw Error(ErrorKind::InvalidArgument, "seed must lie in [0, 4095]");
  std::vector<std::uint32_t> out;
  out.reserve(count);
  std::uint32_t a = a0;
  if (convention == IndexConvention::FirstIsSeed && count > 0) out.push_back(a);
  while (out.size() < count) {
    a = (445u * a + 1u) % 4096u;
    out.push_back(a);
  }
  return out;
}

std::vector<double> lcg_sequence(std::uint32_t a0, std::size_t count, IndexConvention convention) {
  const auto states = lcg_states(a0, count, convention);
  std::vector<double> out(states.size());
  for (std::size_t i = 0; i < states.size(); ++i) out[i] = double(states[i]) / 40.96;
  return out;
}

SolverKind parse_solver(const std::string& text) {
  if (text == "subgrad") return SolverKind::Subgradient;
  if (text == "mm") return SolverKind::MM;
  if (text == "directional") return SolverKind::Directional;
  throw Error(ErrorKind::InvalidArgument, "unknown solver '" + text + "'");
}

const char* to_string(SolverKind kind) {
  switch (kind) {
    case SolverKind::Subgradient: return "subgrad";
    case SolverKind::MM: return "mm";
    case SolverKind::Directional: return "directional";
  }
  return "unknown";
}

void BenchConfig::validate() const {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "n must be >= 1");
  if (m < 1) throw Error(ErrorKind::InvalidArgument, "m must be >= 1");
  if (seed >= 4096) throw Error(ErrorKind::InvalidArgument, "seed must lie in [0, 4095]");
}

SylvesterInstance generate_boxes(const BenchConfig& cfg) {
  cfg.validate();
  const std::size_t per_box = std::size_t(cfg.n) + 1;
  const auto b = lcg_sequence(cfg.seed, per_box * std::size_t(cfg.m), cfg.convention);
  SylvesterInstance inst;
  inst.dimension = cfg.n;
  inst.intersect_targets.reserve(std::size_t(cfg.m));
  for (int i = 0; i < cfg.m; ++i) {
    const double* chunk = b.data() + per_box * std::size_t(i);
    Box box;
    box.radius = chunk[0] / 10.0;
    box.center = Eigen::Map<const Vector>(chunk + 1, cfg.n);
    inst.intersect_targets.emplace_back(std::move(box));
  }
  return inst;
}

std::vector<BenchCase> table_cases(int table) {
  if (table == 1) {
    return {
        {"1", 2, 100, 56.434405, 56.432305},
        {"1", 2, 500, 62.013027, 62.013027},
    };
  }
  if (table == 2) {
    return {
        {"2", 100, 1000, std::nullopt, 299.157411},
        {"2", 200, 1000, std::nullopt, 414.75588},
    };
  }
  throw Error(ErrorKind::InvalidArgument, "benchmark table must be 1 or 2");
}

BenchRow run_bench_case(const BenchCase& bench_case, BenchConfig cfg) {
  cfg.n = bench_case.n;
  cfg.m = bench_case.m;
  const SylvesterInstance inst = generate_boxes(cfg);

  BenchRow row;
  row.table = bench_case.table;
  row.n = cfg.n;
  row.m = cfg.m;
  row.solver = cfg.solver;
  const auto t0 = std::chrono::steady_clock::now();
  SolverReport report;
  switch (cfg.solver) {
    case SolverKind::Subgradient:
      report = solve_subgradient(inst, std::nullopt, cfg.subgradient);
      row.reference = bench_case.reference_subgradient;
      break;
    case SolverKind::MM:
      report = solve_mm(inst, std::nullopt, cfg.smoothing);
      row.reference = bench_case.reference_mm;
      break;
    case SolverKind::Directional:
      throw Error(ErrorKind::InvalidArgument, "benchmarks use the subgrad or mm solver");
  }
  row.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  row.value = report.best_value;
  row.iterations = cfg.solver == SolverKind::MM ? report.inner_iterations : report.iterations;
  return row;
}

std::vector<BenchRow> bench_table(const std::vector<BenchCase>& cases, const BenchConfig& base) {
  std::vector<BenchRow> rows;
  rows.reserve(cases.size());
  for (const auto& c : cases) rows.push_back(run_bench_case(c, base));
  return rows;
}

void write_bench_csv(std::ostream& os, const std::vector<BenchRow>& rows) {
  os << kBenchCsvHeader << '\n';
  for (const auto& r : rows) {
    os << r.table << ',' << r.n << ',' << r.m << ',' << to_string(r.solver) << ','
       << format_number(r.value) << ',' << (r.reference ? format_number(*r.reference) : "") << ','
       << r.iterations << ',' << format_number(r.wall_seconds) << '\n';
  }
}

void write_run_csv(std::ostream& os, const RunRow& row) {
  os << kRunCsvHeader << '\n';
  os << to_string(row.solver) << ',' << row.n << ',' << row.m << ',' << format_number(row.value)
     << ',' << row.iterations << ',' << format_number(row.wall_seconds) << '\n';
}

}  // namespace sylvester
