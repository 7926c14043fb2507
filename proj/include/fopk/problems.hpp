#pragma once

#include "fopk/linalg.hpp"
#include "fopk/types.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

namespace fopk {

/// Declarative description of a test system.
struct ProblemSpec {
  enum class Family { Disc5Point, Hilbert, External };

  Family family = Family::Disc5Point;
  Index n = 0;           // Disc5Point, Hilbert
  double delta = 0.0;    // Disc5Point
  std::string path;      // External
  Index block_size = 10; // Disc5Point

  static ProblemSpec disc5point(Index n, double delta, Index block_size = 10) {
    return {Family::Disc5Point, n, delta, {}, block_size};
  }
  static ProblemSpec hilbert(Index n) { return {Family::Hilbert, n, 0.0, {}, 10}; }
  static ProblemSpec external(std::string path) { return {Family::External, 0, 0.0, std::move(path), 10}; }

  /// "disc5(delta=0.2)", "hilbert", "mm:<path>"
  std::string family_label() const;
};

template <typename Scalar = double>
struct Problem {
  DenseMatrix<Scalar> A;
  Vector<Scalar> b;
  std::optional<Vector<Scalar>> x_true;

  Index size() const { return A.rows(); }
};

/// x_true = (1, ..., 1), b = A x_true.
template <typename Scalar>
std::pair<Vector<Scalar>, Vector<Scalar>> make_rhs_ones(const DenseMatrix<Scalar>& A) {
  detail::require_same(A.rows(), A.cols(), "make_rhs_ones (square)");
  Vector<Scalar> x_true = Vector<Scalar>::Ones(A.cols());
  Vector<Scalar> b = matvec(A, x_true);
  return {std::move(b), std::move(x_true)};
}

template <typename Scalar>
Problem<Scalar> with_ones_solution(DenseMatrix<Scalar> A) {
  auto [b, x_true] = make_rhs_ones(A);
  return {std::move(A), std::move(b), std::move(x_true)};
}

/// Block-tridiagonal matrix with diagonal blocks B = tridiag(beta, 4, alpha),
/// alpha = -1 + delta, beta = -1 - delta, and -I on the block off-diagonals.
template <typename Scalar = double>
Problem<Scalar> gen_disc5point(Index n, Scalar delta, Index block_size = 10) {
  if (block_size < 1) throw std::invalid_argument("gen_disc5point: block_size must be positive");
  if (n < block_size || n % block_size != 0) {
    throw std::invalid_argument("gen_disc5point: n = " + std::to_string(n) + " is not a positive multiple of block size " +
                                std::to_string(block_size));
  }
  const Scalar alpha = Scalar(-1) + delta;
  const Scalar beta = Scalar(-1) - delta;

  DenseMatrix<Scalar> A = DenseMatrix<Scalar>::Zero(n, n);
  for (Index i = 0; i < n; ++i) {
    const Index pos = i % block_size;
    A(i, i) = Scalar(4);
    if (pos + 1 < block_size) A(i, i + 1) = alpha;
    if (pos > 0) A(i, i - 1) = beta;
    if (i + block_size < n) A(i, i + block_size) = Scalar(-1);
    if (i >= block_size) A(i, i - block_size) = Scalar(-1);
  }
  return with_ones_solution(std::move(A));
}

/// A(i, j) = 1 / (i + j + 1), zero-based.
template <typename Scalar = double>
Problem<Scalar> gen_hilbert(Index n) {
  if (n < 1) throw std::invalid_argument("gen_hilbert: n must be positive");
  DenseMatrix<Scalar> A(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) A(i, j) = Scalar(1) / Scalar(i + j + 1);
  return with_ones_solution(std::move(A));
}

/// Materialize any family; External reads a Matrix Market file.
Problem<double> make_problem(const ProblemSpec& spec);

}  // namespace fopk
