#include "fopk/harness.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <stdexcept>
#include <string>

namespace fopk {

namespace {

std::string lower(std::string_view text) {
  std::string out(text);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

std::vector<Index> sizes_from(Index first, Index last, Index step) {
  std::vector<Index> out;
  for (Index n = first; n <= last; n += step) out.push_back(n);
  return out;
}

double median(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  return values.size() % 2 == 1 ? values[mid] : 0.5 * (values[mid - 1] + values[mid]);
}

}  // namespace

std::string to_string(Algorithm algo) {
  switch (algo) {
    case Algorithm::A12: return "a12";
    case Algorithm::A8B10: return "a8b10";
    case Algorithm::FOM: return "fom";
  }
  return "unknown";
}

Algorithm parse_algorithm(std::string_view text) {
  const std::string key = lower(text);
  if (key == "a12") return Algorithm::A12;
  if (key == "a8b10") return Algorithm::A8B10;
  if (key == "fom" || key == "arnoldi") return Algorithm::FOM;
  throw std::invalid_argument("unknown algorithm '" + std::string(text) + "' (expected a12, a8b10 or fom)");
}

ShadowVector parse_shadow_vector(std::string_view text, const char* env_seed) {
  const std::string key = lower(text);
  if (key == "r0") return ShadowVector::copy_of_r0();
  if (key == "ones") return ShadowVector::all_ones();
  const std::string prefix = "random:";
  if (key.rfind(prefix, 0) == 0) {
    std::string seed_text = key.substr(prefix.size());
    if (env_seed != nullptr && *env_seed != '\0') seed_text = env_seed;
    try {
      std::size_t used = 0;
      const unsigned long long seed = std::stoull(seed_text, &used);
      if (used != seed_text.size()) throw std::invalid_argument(seed_text);
      return ShadowVector::seeded(seed);
    } catch (const std::exception&) {
      throw std::invalid_argument("invalid seed '" + seed_text + "'");
    }
  }
  throw std::invalid_argument("unknown y choice '" + std::string(text) + "' (expected r0, ones or random:<seed>)");
}

SolveOutcome<double> run_solver(Algorithm algo, const Problem<double>& problem, const SolveConfig<double>& cfg) {
  const Vector<double> x0 = Vector<double>::Zero(problem.size());
  switch (algo) {
    case Algorithm::A12: return solve_a12(problem.A, problem.b, x0, cfg);
    case Algorithm::A8B10: return solve_a8_b10(problem.A, problem.b, x0, cfg);
    case Algorithm::FOM: return solve_arnoldi_fom(problem.A, problem.b, x0, cfg);
  }
  throw std::invalid_argument("run_solver: unknown algorithm");
}

SuiteSpec SuiteSpec::table1() {
  SuiteSpec s;
  s.name = Name::Table1;
  s.sizes = sizes_from(10, 100, 10);
  s.delta = 0.0;
  s.epsilon = 1e-5;
  return s;
}

SuiteSpec SuiteSpec::table2() {
  SuiteSpec s;
  s.name = Name::Table2;
  s.sizes = sizes_from(10, 100, 10);
  s.delta = 0.2;
  s.epsilon = 1e-3;
  return s;
}

SuiteSpec SuiteSpec::table3() {
  SuiteSpec s;
  s.name = Name::Table3;
  s.sizes = sizes_from(10, 50, 10);
  s.delta = 0.0;
  s.epsilon = 1e-5;
  return s;
}

std::string to_string(SuiteSpec::Name name) {
  switch (name) {
    case SuiteSpec::Name::Table1: return "table1";
    case SuiteSpec::Name::Table2: return "table2";
    case SuiteSpec::Name::Table3: return "table3";
    case SuiteSpec::Name::Custom: return "custom";
  }
  return "unknown";
}

void SuiteSpec::validate() const {
  if (!(epsilon > 0.0)) throw std::invalid_argument("suite: epsilon must be positive");
  if (algorithms.empty()) throw std::invalid_argument("suite: no algorithms");
  switch (name) {
    case Name::Table1:
    case Name::Table2: {
      const double want = name == Name::Table1 ? 0.0 : 0.2;
      if (delta != want || sizes != sizes_from(10, 100, 10)) {
        throw std::invalid_argument("suite " + to_string(name) + ": must use delta " + std::to_string(want) +
                                    " and sizes 10..100 step 10");
      }
      break;
    }
    case Name::Table3:
      if (sizes != sizes_from(10, 50, 10)) throw std::invalid_argument("suite table3: sizes must be 10..50 step 10");
      break;
    case Name::Custom:
      if (sizes.empty() && problems.empty()) throw std::invalid_argument("suite custom: no problems");
      break;
  }
}

std::vector<ProblemSpec> SuiteSpec::problem_list() const {
  std::vector<ProblemSpec> out;
  for (Index n : sizes) {
    out.push_back(name == Name::Table3 ? ProblemSpec::hilbert(n) : ProblemSpec::disc5point(n, delta));
  }
  if (name == Name::Custom) out.insert(out.end(), problems.begin(), problems.end());
  return out;
}

std::vector<RunRecord> run_suite(const SuiteSpec& suite, SolveConfig<double> cfg, Index repeats) {
  suite.validate();
  if (repeats < 1) throw std::invalid_argument("run_suite: repeats must be at least 1");
  cfg.epsilon = suite.epsilon;
  cfg.record_trace = false;

  std::vector<RunRecord> records;
  for (const ProblemSpec& spec : suite.problem_list()) {
    for (Algorithm algo : suite.algorithms) {
      // Fresh problem per row; generation errors propagate.
      const Problem<double> problem = make_problem(spec);
      std::vector<double> times;
      SolveOutcome<double> outcome;
      for (Index rep = 0; rep < repeats; ++rep) {
        const auto start = std::chrono::steady_clock::now();
        outcome = run_solver(algo, problem, cfg);
        const auto stop = std::chrono::steady_clock::now();
        times.push_back(std::chrono::duration<double>(stop - start).count());
      }

      RunRecord rec;
      rec.problem = spec;
      rec.n = problem.size();
      rec.algorithm = algo;
      rec.status = outcome.status;
      rec.breakdown = outcome.breakdown;
      rec.final_true_residual = norm2(true_residual(problem.A, problem.b, outcome.x));
      rec.recursive_residual = outcome.recursive_residual_norm;
      rec.iterations = outcome.iterations;
      rec.wall_time_s = median(times);
      rec.repeats = repeats;
      records.push_back(std::move(rec));
    }
  }
  return records;
}

}  // namespace fopk
