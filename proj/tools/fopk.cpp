// Command-line front end: solve one system or run a benchmark suite.
//
//   fopk solve --problem disc5 --n 50 --delta 0.2 --algo a12 --eps 1e-5
//   fopk bench --suite table2 --format csv --out table2.csv
//
// Exit codes: 0 converged / suite complete, 1 usage or I/O error,
// 2 breakdown, 3 iteration cap.

#include "fopk/harness.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitBreakdown = 2;
constexpr int kExitCap = 3;

struct SolveArgs {
  std::string problem;
  long long n = 0;
  double delta = 0.0;
  std::string algo = "a12";
  double eps = 1e-6;
  std::optional<long long> max_iter;
  std::string y = "r0";
  std::string trace;
};

struct BenchArgs {
  std::string suite = "all";
  std::string format = "md";
  std::string out;
  long long repeats = 5;
};

fopk::ProblemSpec problem_spec(const SolveArgs& args) {
  if (args.problem == "disc5") return fopk::ProblemSpec::disc5point(args.n, args.delta);
  if (args.problem == "hilbert") return fopk::ProblemSpec::hilbert(args.n);
  if (args.problem.rfind("mm:", 0) == 0 && args.problem.size() > 3) return fopk::ProblemSpec::external(args.problem.substr(3));
  throw std::invalid_argument("unknown problem '" + args.problem + "' (expected disc5, hilbert or mm:<path>)");
}

int run_solve(const SolveArgs& args) {
  const fopk::ProblemSpec spec = problem_spec(args);
  const fopk::Problem<double> problem = fopk::make_problem(spec);
  const fopk::Algorithm algo = fopk::parse_algorithm(args.algo);

  fopk::SolveConfig<double> cfg;
  cfg.epsilon = args.eps;
  if (args.max_iter) cfg.max_iter = static_cast<fopk::Index>(*args.max_iter);
  cfg.y_choice = fopk::parse_shadow_vector(args.y, std::getenv("FOPK_SEED"));
  cfg.record_trace = !args.trace.empty();

  const auto outcome = fopk::run_solver(algo, problem, cfg);

  std::printf("problem      %s n=%lld\n", spec.family_label().c_str(), static_cast<long long>(problem.size()));
  std::printf("algorithm    %s\n", fopk::to_string(algo).c_str());
  std::printf("status       %s\n", fopk::status_string(outcome).c_str());
  std::printf("iterations   %lld\n", static_cast<long long>(outcome.iterations));
  std::printf("recursive    %.6e\n", outcome.recursive_residual_norm);
  std::printf("residual     %.6e\n", outcome.true_residual_norm);
  if (problem.x_true) {
    const double err = fopk::norm2(outcome.x - *problem.x_true) / fopk::norm2(*problem.x_true);
    std::printf("rel. error   %.6e\n", err);
  }

  if (!args.trace.empty()) fopk::write_trace(outcome, args.trace);

  switch (outcome.status) {
    case fopk::SolveStatus::Converged: return kExitOk;
    case fopk::SolveStatus::Breakdown: return kExitBreakdown;
    case fopk::SolveStatus::IterationCap: return kExitCap;
  }
  return kExitUsage;
}

int run_bench(const BenchArgs& args) {
  std::vector<fopk::SuiteSpec> suites;
  if (args.suite == "table1" || args.suite == "all") suites.push_back(fopk::SuiteSpec::table1());
  if (args.suite == "table2" || args.suite == "all") suites.push_back(fopk::SuiteSpec::table2());
  if (args.suite == "table3" || args.suite == "all") suites.push_back(fopk::SuiteSpec::table3());
  if (suites.empty()) throw std::invalid_argument("unknown suite '" + args.suite + "'");
  if (args.repeats < 1) throw std::invalid_argument("--repeats must be at least 1");
  const fopk::TableFormat format = fopk::parse_table_format(args.format);

  std::vector<fopk::RunRecord> records;
  for (const auto& suite : suites) {
    auto rows = fopk::run_suite(suite, fopk::SolveConfig<double>{}, static_cast<fopk::Index>(args.repeats));
    records.insert(records.end(), rows.begin(), rows.end());
  }
  const std::string table = fopk::emit_table(records, format);

  if (args.out.empty()) {
    std::cout << table;
    return kExitOk;
  }
  std::ofstream out(args.out);
  if (!out || !(out << table)) {
    std::cerr << "fopk: cannot write '" << args.out << "'\n";
    return kExitUsage;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lanczos-type (A12, A8/B10) and FOM dense solvers with a benchmark harness"};
  app.require_subcommand(1);

  SolveArgs solve;
  auto* solve_cmd = app.add_subcommand("solve", "Solve one system and report the outcome");
  solve_cmd->add_option("--problem", solve.problem, "disc5 | hilbert | mm:<path>")->required();
  solve_cmd->add_option("--n", solve.n, "Dimension (disc5, hilbert)");
  solve_cmd->add_option("--delta", solve.delta, "disc5 asymmetry parameter");
  solve_cmd->add_option("--algo", solve.algo, "a12 | a8b10 | fom")->capture_default_str();
  solve_cmd->add_option("--eps", solve.eps, "Residual-norm stopping threshold")->capture_default_str();
  solve_cmd->add_option("--max-iter", solve.max_iter, "Iteration cap (default 10 n)");
  solve_cmd->add_option("--y", solve.y, "Shadow vector: r0 | ones | random:<seed>")->capture_default_str();
  solve_cmd->add_option("--trace", solve.trace, "Write the convergence trace as CSV");

  BenchArgs bench;
  auto* bench_cmd = app.add_subcommand("bench", "Run the table suites");
  bench_cmd->add_option("--suite", bench.suite, "table1 | table2 | table3 | all")->capture_default_str();
  bench_cmd->add_option("--format", bench.format, "md | csv | json")->capture_default_str();
  bench_cmd->add_option("--out", bench.out, "Output file (default stdout)");
  bench_cmd->add_option("--repeats", bench.repeats, "Timing repeats per row")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (solve_cmd->parsed()) return run_solve(solve);
    return run_bench(bench);
  } catch (const std::exception& e) {
    std::cerr << "fopk: " << e.what() << '\n';
  }
  return kExitUsage;
}
