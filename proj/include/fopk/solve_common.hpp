#pragma once

#include "fopk/breakdown.hpp"
#include "fopk/kernel.hpp"
#include "fopk/linalg.hpp"
#include "fopk/types.hpp"

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace fopk {

/// How the shadow vector y of the functional c(x^i) = (y, A^i r0) is chosen.
struct ShadowVector {
  enum class Kind { CopyOfR0, AllOnes, Seeded };
  Kind kind = Kind::CopyOfR0;
  std::uint64_t seed = 0;

  static ShadowVector copy_of_r0() { return {Kind::CopyOfR0, 0}; }
  static ShadowVector all_ones() { return {Kind::AllOnes, 0}; }
  static ShadowVector seeded(std::uint64_t seed) { return {Kind::Seeded, seed}; }
};

template <typename Scalar>
Vector<Scalar> make_shadow_vector(const ShadowVector& choice, const Vector<Scalar>& r0) {
  switch (choice.kind) {
    case ShadowVector::Kind::CopyOfR0: return r0;
    case ShadowVector::Kind::AllOnes: return Vector<Scalar>::Ones(r0.size());
    case ShadowVector::Kind::Seeded: {
      std::mt19937_64 gen(choice.seed);
      std::uniform_real_distribution<double> dist(-1.0, 1.0);
      Vector<Scalar> y(r0.size());
      for (Index i = 0; i < y.size(); ++i) y(i) = Scalar(dist(gen));
      return y;
    }
  }
  return r0;
}

template <typename Scalar = double>
struct SolveConfig {
  Scalar epsilon = Scalar(1e-6);
  std::optional<Index> max_iter;  // unset: 10 * n
  Scalar breakdown_tol = Scalar(kDefaultBreakdownTol);
  ShadowVector y_choice = ShadowVector::copy_of_r0();
  bool record_trace = false;
  /// Called with (k, x_k, r_k) for every accepted iterate, including k = 0.
  std::function<void(Index, const Vector<Scalar>&, const Vector<Scalar>&)> on_iterate;

  Index iteration_limit(Index n) const { return max_iter ? *max_iter : 10 * n; }

  void validate() const {
    if (!(epsilon > Scalar(0))) throw std::invalid_argument("SolveConfig: epsilon must be positive");
    if (max_iter && *max_iter < 1) throw std::invalid_argument("SolveConfig: max_iter must be at least 1");
    if (!(breakdown_tol > Scalar(0))) throw std::invalid_argument("SolveConfig: breakdown_tol must be positive");
  }
};

enum class SolveStatus { Converged, Breakdown, IterationCap };

template <typename Scalar = double>
struct TraceRow {
  Index k = 0;
  Scalar recursive_rnorm{};
  Scalar true_rnorm{};
};

template <typename Scalar = double>
struct SolveOutcome {
  SolveStatus status = SolveStatus::IterationCap;
  std::optional<BreakdownKind> breakdown;  // set iff status == Breakdown
  Vector<Scalar> x;
  Scalar recursive_residual_norm{};
  Scalar true_residual_norm{};
  Index iterations = 0;
  std::vector<TraceRow<Scalar>> trace;

  bool converged() const { return status == SolveStatus::Converged; }
};

inline std::string status_string(SolveStatus status, const std::optional<BreakdownKind>& kind) {
  switch (status) {
    case SolveStatus::Converged: return "converged";
    case SolveStatus::IterationCap: return "iteration-cap";
    case SolveStatus::Breakdown: return "breakdown(" + (kind ? to_string(*kind) : std::string("unknown")) + ")";
  }
  return "unknown";
}

template <typename Scalar>
std::string status_string(const SolveOutcome<Scalar>& outcome) {
  return status_string(outcome.status, outcome.breakdown);
}

/// b - A x
template <typename MatDerived, typename BDerived, typename XDerived>
Vector<typename MatDerived::Scalar> true_residual(const Eigen::MatrixBase<MatDerived>& A,
                                                  const Eigen::MatrixBase<BDerived>& b,
                                                  const Eigen::MatrixBase<XDerived>& x) {
  detail::require_same(A.rows(), b.size(), "true_residual");
  return b - matvec(A, x);
}

namespace detail {

template <typename Scalar>
void check_problem(const DenseMatrix<Scalar>& A, const Vector<Scalar>& b, const Vector<Scalar>& x0,
                   const SolveConfig<Scalar>& cfg) {
  cfg.validate();
  if (A.rows() < 1) throw DimensionError("solver: empty system");
  require_same(A.rows(), A.cols(), "solver (square)");
  require_same(A.rows(), b.size(), "solver (rhs)");
  require_same(A.rows(), x0.size(), "solver (x0)");
  if (!A.allFinite() || !b.allFinite() || !x0.allFinite()) {
    throw std::invalid_argument("solver: inputs must be finite");
  }
}

/// Owns the bookkeeping shared by all solvers: trace rows, the iterate
/// observer, the finiteness guard and assembly of the final outcome.
template <typename Scalar>
class Tracker {
public:
  Tracker(const DenseMatrix<Scalar>& A, const Vector<Scalar>& b, const SolveConfig<Scalar>& cfg)
      : A_(A), b_(b), cfg_(cfg), a_norm_inf_(A.cwiseAbs().rowwise().sum().maxCoeff()) {}

  /// An iterate is usable when x and r are finite and b - A x cannot overflow.
  bool usable(const Vector<Scalar>& x, const Vector<Scalar>& r) const {
    if (!x.allFinite() || !r.allFinite()) return false;
    if (!std::isfinite(norm2(r))) return false;
    const Scalar bound = (a_norm_inf_ * x.template lpNorm<Eigen::Infinity>() + b_.template lpNorm<Eigen::Infinity>()) *
                         Scalar(A_.rows() + 1);
    return std::isfinite(bound) && bound < std::numeric_limits<Scalar>::max() / Scalar(4);
  }

  /// Record iterate k as the current best; `x` and `r` must be usable.
  void accept(Index k, const Vector<Scalar>& x, const Vector<Scalar>& r, Scalar recursive_norm) {
    last_k_ = k;
    last_x_ = x;
    last_rnorm_ = recursive_norm;
    if (cfg_.record_trace) {
      trace_.push_back({k, recursive_norm, norm2(true_residual(A_, b_, x))});
    }
    if (cfg_.on_iterate) cfg_.on_iterate(k, x, r);
  }

  SolveOutcome<Scalar> finish(SolveStatus status, std::optional<BreakdownKind> kind = std::nullopt) {
    SolveOutcome<Scalar> out;
    out.status = status;
    out.breakdown = std::move(kind);
    out.x = std::move(last_x_);
    out.iterations = last_k_;
    out.recursive_residual_norm = last_rnorm_;
    out.true_residual_norm = norm2(true_residual(A_, b_, out.x));
    out.trace = std::move(trace_);
    return out;
  }

  SolveOutcome<Scalar> breakdown(BreakdownKind kind) { return finish(SolveStatus::Breakdown, std::move(kind)); }

  Index last_k() const { return last_k_; }

private:
  const DenseMatrix<Scalar>& A_;
  const Vector<Scalar>& b_;
  const SolveConfig<Scalar>& cfg_;
  Scalar a_norm_inf_;
  Index last_k_ = 0;
  Vector<Scalar> last_x_;
  Scalar last_rnorm_{};
  std::vector<TraceRow<Scalar>> trace_;
};

}  // namespace detail
}  // namespace fopk
