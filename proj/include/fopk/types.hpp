#pragma once

#include <Eigen/Core>

#include <stdexcept>
#include <string>
#include <type_traits>

namespace fopk {

using Index = Eigen::Index;

/// Dense column vector of `Scalar`.
template <typename Scalar = double>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/// Dense square matrix, stored row-major.
template <typename Scalar = double>
using DenseMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Vector parameter whose Scalar is taken from another argument, so callers
/// may pass Eigen expressions such as `Vector<>::Zero(n)`.
template <typename Scalar>
using VectorArg = std::type_identity_t<Vector<Scalar>>;

/// Raised when operand shapes do not agree.
class DimensionError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

namespace detail {

inline void require_same(Index lhs, Index rhs, const char* what) {
  if (lhs != rhs) {
    throw DimensionError(std::string(what) + ": dimension mismatch (" + std::to_string(lhs) + " vs " +
                         std::to_string(rhs) + ")");
  }
}

}  // namespace detail
}  // namespace fopk
