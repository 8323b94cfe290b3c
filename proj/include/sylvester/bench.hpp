#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "sylvester/solver_mm.hpp"
#include "sylvester/solver_subgrad.hpp"

namespace sylvester {

/// Which term of a_{i+1} = (445 a_i + 1) mod 4096 feeds b_1.
enum class IndexConvention {
  FirstIsNext,  ///< b_1 = a_1 / 40.96 (the seed itself is not emitted)
  FirstIsSeed,  ///< b_1 = a_0 / 40.96
};

IndexConvention parse_convention(const std::string& text);  // "a" or "b"

/// Integer states in emission order.
std::vector<std::uint32_t> lcg_states(std::uint32_t a0, std::size_t count,
                                      IndexConvention convention = IndexConvention::FirstIsNext);

/// b_i = a_i / 40.96 in emission order.
std::vector<double> lcg_sequence(std::uint32_t a0, std::size_t count,
                                 IndexConvention convention = IndexConvention::FirstIsNext);

enum class SolverKind { Subgradient, MM, Directional };

SolverKind parse_solver(const std::string& text);
const char* to_string(SolverKind kind);

struct BenchConfig {
  int n = 2;
  int m = 100;
  std::uint32_t seed = 7;
  IndexConvention convention = IndexConvention::FirstIsNext;
  SolverKind solver = SolverKind::MM;
  SubgradientOptions subgradient;
  SmoothingState smoothing;

  void validate() const;
};

/// Unconstrained Euclidean instance of m cubes: the b-values are consumed as
/// 10 r_1, c_1(1..n), 10 r_2, c_2(1..n), ...
SylvesterInstance generate_boxes(const BenchConfig& cfg);

struct BenchRow {
  std::string table;
  int n = 0;
  int m = 0;
  SolverKind solver = SolverKind::MM;
  double value = 0.0;
  std::optional<double> reference;
  std::size_t iterations = 0;
  double wall_seconds = 0.0;
};

struct BenchCase {
  std::string table;
  int n = 0;
  int m = 0;
  std::optional<double> reference_subgradient;
  std::optional<double> reference_mm;
};

/// Reference benchmark rows ("1": planar boxes, m = 100, 500;
/// "2": m = 1000 boxes in n = 100, 200).
std::vector<BenchCase> table_cases(int table);

BenchRow run_bench_case(const BenchCase& bench_case, BenchConfig cfg);

/// Runs every case and returns rows in case order.
std::vector<BenchRow> bench_table(const std::vector<BenchCase>& cases, const BenchConfig& base);

inline constexpr const char* kBenchCsvHeader =
    "table,n,m,solver,value,reference,iterations,wall_seconds";
inline constexpr const char* kRunCsvHeader = "solver,n,m,value,iterations,wall_seconds";

void write_bench_csv(std::ostream& os, const std::vector<BenchRow>& rows);

struct RunRow {
  SolverKind solver = SolverKind::Subgradient;
  int n = 0;
  int m = 0;
  double value = 0.0;
  std::size_t iterations = 0;
  double wall_seconds = 0.0;
};

void write_run_csv(std::ostream& os, const RunRow& row);

}  // namespace sylvester
