#pragma once

// Full orthogonalization method: Galerkin projection onto the Krylov space
// span(r0, A r0, ...) built by Arnoldi with modified Gram-Schmidt. No
// restarting and no reorthogonalization.

#include "fopk/linalg.hpp"
#include "fopk/solve_common.hpp"

#include <Eigen/Core>

#include <cmath>
#include <stdexcept>
#include <vector>

namespace fopk {

/// Incremental Arnoldi factorization A V_j = V_{j+1} H_j.
template <typename Scalar = double>
class ArnoldiProcess {
public:
  using Basis = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

  ArnoldiProcess(const DenseMatrix<Scalar>& A, const Vector<Scalar>& start, Index max_steps)
      : A_(A), beta_(norm2(start)) {
    detail::require_same(A.cols(), start.size(), "ArnoldiProcess");
    if (!(beta_ > Scalar(0))) throw std::invalid_argument("ArnoldiProcess: start vector must be nonzero");
    const Index cols = std::max<Index>(1, max_steps);
    V_ = Basis::Zero(A.rows(), cols + 1);
    H_ = Basis::Zero(cols + 1, cols);
    V_.col(0) = start / beta_;
  }

  /// Extend the basis by one vector. Returns the norm of the orthogonalized
  /// candidate before normalization, h_{j+1,j}, together with ||A v_j|| as
  /// its reference magnitude.
  struct Step {
    Scalar subdiagonal{};
    Scalar magnitude{};
  };

  Step step() {
    if (steps_ >= H_.cols()) throw std::logic_error("ArnoldiProcess: step budget exhausted");
    const Index j = steps_;
    Vector<Scalar> w = matvec(A_, V_.col(j));
    const Scalar magnitude = norm2(w);
    for (Index i = 0; i <= j; ++i) {
      H_(i, j) = V_.col(i).dot(w);
      w -= H_(i, j) * V_.col(i);
    }
    H_(j + 1, j) = norm2(w);
    if (H_(j + 1, j) > Scalar(0) && std::isfinite(H_(j + 1, j))) V_.col(j + 1) = w / H_(j + 1, j);
    ++steps_;
    return {H_(j + 1, j), magnitude};
  }

  Index steps() const { return steps_; }
  Scalar beta() const { return beta_; }
  /// First `steps() + 1` columns are meaningful.
  const Basis& basis() const { return V_; }
  const Basis& hessenberg() const { return H_; }

private:
  const DenseMatrix<Scalar>& A_;
  Scalar beta_;
  Basis V_;
  Basis H_;
  Index steps_ = 0;
};

template <typename Scalar>
SolveOutcome<Scalar> solve_arnoldi_fom(const DenseMatrix<Scalar>& A, const VectorArg<Scalar>& b, const VectorArg<Scalar>& x0,
                                       const std::type_identity_t<SolveConfig<Scalar>>& cfg) {
  detail::check_problem(A, b, x0, cfg);
  detail::Tracker<Scalar> track(A, b, cfg);
  const Index n = A.rows();
  const Index cap = cfg.iteration_limit(n);
  const Scalar tol = cfg.breakdown_tol;

  const Vector<Scalar> r0 = true_residual(A, b, x0);
  const Scalar beta = norm2(r0);
  track.accept(0, x0, r0, beta);
  if (beta <= cfg.epsilon) return track.finish(SolveStatus::Converged);

  // The Krylov space cannot exceed dimension n.
  const Index budget = std::min(cap, n);
  ArnoldiProcess<Scalar> arnoldi(A, r0, budget);
  const auto& H = arnoldi.hessenberg();

  // Givens rotations applied to H column by column. R holds the rotated
  // columns; g the rotated right-hand side beta e_1.
  using Dense = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  Dense R = Dense::Zero(budget, budget);
  Vector<Scalar> g = Vector<Scalar>::Zero(budget + 1);
  g(0) = beta;
  std::vector<Scalar> cs, sn;

  // FOM iterate x_j = x0 + V_j R~^{-1} g~, where R~ is R with its last
  // diagonal entry taken before the j-th rotation.
  auto fom_iterate = [&](Index j, Scalar last_diag) {
    Vector<Scalar> coef(j);
    for (Index row = j - 1; row >= 0; --row) {
      Scalar acc = g(row);
      for (Index col = row + 1; col < j; ++col) acc -= R(row, col) * coef(col);
      coef(row) = acc / (row == j - 1 ? last_diag : R(row, row));
    }
    Vector<Scalar> x = x0 + arnoldi.basis().leftCols(j) * coef;
    return x;
  };

  for (Index j = 1;; ++j) {
    const auto step = arnoldi.step();
    const Index col = j - 1;

    for (Index i = 0; i <= col; ++i) R(i, col) = H(i, col);
    for (Index i = 0; i < col; ++i) {
      const Scalar top = cs[i] * R(i, col) + sn[i] * R(i + 1, col);
      R(i + 1, col) = -sn[i] * R(i, col) + cs[i] * R(i + 1, col);
      R(i, col) = top;
    }
    const Scalar diag = R(col, col);
    const Scalar sub = step.subdiagonal;
    if (!std::isfinite(diag) || !std::isfinite(sub)) return track.breakdown(BreakdownKind::non_finite("h_{j+1,j}"));
    if (negligible(diag, step.magnitude, tol)) return track.breakdown(BreakdownKind::pivot("h_jj"));

    const bool exhausted = negligible(sub, step.magnitude, tol);
    Scalar estimate = exhausted ? Scalar(0) : sub * std::abs(g(col) / diag);

    const bool at_cap = j >= budget;
    const bool stopping = exhausted || estimate < cfg.epsilon || at_cap;
    if (stopping || cfg.record_trace || cfg.on_iterate) {
      Vector<Scalar> x = fom_iterate(j, diag);
      Vector<Scalar> r = true_residual(A, b, x);
      if (!track.usable(x, r)) return track.breakdown(BreakdownKind::non_finite("x_j"));
      if (at_cap && j == n && !exhausted) {
        // No further basis vector exists; the Hessenberg estimate is replaced
        // by the recomputed residual.
        estimate = norm2(r);
      }
      track.accept(j, x, r, estimate);
    }
    if (exhausted || estimate < cfg.epsilon) return track.finish(SolveStatus::Converged);
    if (at_cap) {
      if (j == n) return track.breakdown(BreakdownKind::pivot("h_{j+1,j}"));
      return track.finish(SolveStatus::IterationCap);
    }

    // Rotation annihilating the subdiagonal entry.
    const Scalar radius = std::hypot(diag, sub);
    cs.push_back(diag / radius);
    sn.push_back(sub / radius);
    R(col, col) = radius;
    g(col + 1) = -sn.back() * g(col);
    g(col) = cs.back() * g(col);
  }
}

}  // namespace fopk
