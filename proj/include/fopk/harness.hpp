#pragma once

#include "fopk/problems.hpp"
#include "fopk/solvers.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fopk {

enum class Algorithm { A12, A8B10, FOM };

std::string to_string(Algorithm algo);
/// "a12", "a8b10", "fom" (case-insensitive).
Algorithm parse_algorithm(std::string_view text);

/// "r0", "ones" or "random:<seed>". A non-null `env_seed` (the value of
/// FOPK_SEED) replaces the seed of a random choice.
ShadowVector parse_shadow_vector(std::string_view text, const char* env_seed = nullptr);

/// Runs one solver from x0 = 0.
SolveOutcome<double> run_solver(Algorithm algo, const Problem<double>& problem, const SolveConfig<double>& cfg);

struct RunRecord {
  ProblemSpec problem;
  Index n = 0;
  Algorithm algorithm = Algorithm::A12;
  SolveStatus status = SolveStatus::IterationCap;
  std::optional<BreakdownKind> breakdown;
  double final_true_residual = 0.0;  // ||b - A x|| recomputed from the returned x
  double recursive_residual = 0.0;
  Index iterations = 0;
  double wall_time_s = 0.0;  // median over repeats
  Index repeats = 1;

  std::string status_text() const { return status_string(status, breakdown); }
};

struct SuiteSpec {
  enum class Name { Table1, Table2, Table3, Custom };

  Name name = Name::Custom;
  std::vector<Index> sizes;
  double delta = 0.0;
  double epsilon = 1e-5;
  std::vector<Algorithm> algorithms{Algorithm::A12, Algorithm::A8B10, Algorithm::FOM};
  /// Custom suites only: explicit problems, run after any `sizes` entries
  /// (which then describe disc5 problems with `delta`).
  std::vector<ProblemSpec> problems;

  /// disc5, delta = 0, n = 10..100, epsilon 1e-5.
  static SuiteSpec table1();
  /// disc5, delta = 0.2, n = 10..100, epsilon 1e-3.
  static SuiteSpec table2();
  /// Hilbert, n = 10..50, epsilon 1e-5.
  static SuiteSpec table3();

  void validate() const;
  std::vector<ProblemSpec> problem_list() const;
};

std::string to_string(SuiteSpec::Name name);

/// Every (problem, algorithm) pair in suite order. `suite.epsilon` replaces
/// `cfg.epsilon`. A breakdown is a row, not an error.
std::vector<RunRecord> run_suite(const SuiteSpec& suite, SolveConfig<double> cfg, Index repeats = 5);

enum class TableFormat { Markdown, Csv, Json };
TableFormat parse_table_format(std::string_view text);

std::string emit_table(const std::vector<RunRecord>& records, TableFormat format);

/// CSV `k,recursive_rnorm,true_rnorm`, one row per traced iterate. The trace
/// holds norms only, so iterates cannot be replayed from it.
void write_trace(const SolveOutcome<double>& outcome, const std::filesystem::path& path);

}  // namespace fopk
