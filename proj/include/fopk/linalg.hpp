#pragma once

#include "fopk/types.hpp"

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace fopk {

/// Raised by `direct_solve` when a pivot falls below the relative tolerance.
class SingularMatrixError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

template <typename Derived>
bool is_finite(const Eigen::DenseBase<Derived>& v) {
  return v.allFinite();
}

/// y = A x
template <typename MatDerived, typename VecDerived>
Vector<typename MatDerived::Scalar> matvec(const Eigen::MatrixBase<MatDerived>& A,
                                           const Eigen::MatrixBase<VecDerived>& x) {
  detail::require_same(A.cols(), x.size(), "matvec");
  return A * x;
}

/// z = A^T y
template <typename MatDerived, typename VecDerived>
Vector<typename MatDerived::Scalar> matvec_transpose(const Eigen::MatrixBase<MatDerived>& A,
                                                     const Eigen::MatrixBase<VecDerived>& y) {
  detail::require_same(A.rows(), y.size(), "matvec_transpose");
  return A.transpose() * y;
}

template <typename LhsDerived, typename RhsDerived>
typename LhsDerived::Scalar dot(const Eigen::MatrixBase<LhsDerived>& u, const Eigen::MatrixBase<RhsDerived>& v) {
  detail::require_same(u.size(), v.size(), "dot");
  return u.dot(v);
}

/// Sum of |u_i v_i|: the size dot(u, v) would have without cancellation.
template <typename LhsDerived, typename RhsDerived>
typename LhsDerived::Scalar dot_magnitude(const Eigen::MatrixBase<LhsDerived>& u,
                                          const Eigen::MatrixBase<RhsDerived>& v) {
  detail::require_same(u.size(), v.size(), "dot_magnitude");
  return u.cwiseAbs().dot(v.cwiseAbs());
}

/// Euclidean norm. Equal to sqrt(dot(v, v)) but scaled so it cannot overflow early.
template <typename Derived>
typename Derived::Scalar norm2(const Eigen::MatrixBase<Derived>& v) {
  return v.stableNorm();
}

/// Gaussian elimination with partial pivoting.
///
/// A pivot is declared singular when |pivot| <= 1e-13 * (largest magnitude in
/// the pivot row of the original matrix). Used as a verification oracle; it
/// shares no code with the iterative solvers.
template <typename MatDerived, typename VecDerived>
Vector<typename MatDerived::Scalar> direct_solve(const Eigen::MatrixBase<MatDerived>& A,
                                                 const Eigen::MatrixBase<VecDerived>& b) {
  using Scalar = typename MatDerived::Scalar;
  detail::require_same(A.rows(), A.cols(), "direct_solve (square)");
  detail::require_same(A.rows(), b.size(), "direct_solve");

  const Index n = A.rows();
  const Scalar pivot_tol = Scalar(1e-13);

  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> lu = A;
  Vector<Scalar> rhs = b;
  Vector<Scalar> row_scale = A.cwiseAbs().rowwise().maxCoeff();

  for (Index col = 0; col < n; ++col) {
    Index pivot_row = col;
    Scalar best = std::abs(lu(col, col));
    for (Index row = col + 1; row < n; ++row) {
      if (std::abs(lu(row, col)) > best) {
        best = std::abs(lu(row, col));
        pivot_row = row;
      }
    }
    if (!(best > pivot_tol * row_scale(pivot_row))) {
      throw SingularMatrixError("direct_solve: matrix is singular to working precision at column " +
                                std::to_string(col));
    }
    if (pivot_row != col) {
      lu.row(col).swap(lu.row(pivot_row));
      std::swap(rhs(col), rhs(pivot_row));
      std::swap(row_scale(col), row_scale(pivot_row));
    }
    for (Index row = col + 1; row < n; ++row) {
      const Scalar factor = lu(row, col) / lu(col, col);
      if (factor == Scalar(0)) continue;
      lu.row(row).tail(n - col) -= factor * lu.row(col).tail(n - col);
      rhs(row) -= factor * rhs(col);
    }
  }

  Vector<Scalar> x(n);
  for (Index row = n - 1; row >= 0; --row) {
    Scalar acc = rhs(row);
    for (Index col = row + 1; col < n; ++col) acc -= lu(row, col) * x(col);
    x(row) = acc / lu(row, row);
  }
  return x;
}

}  // namespace fopk
