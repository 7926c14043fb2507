#pragma once

// Formal-orthogonal-polynomial machinery: the moments of the functional
// c(x^i) = (y, A^i r0), the Hankel determinant H^(1)_k, and the scalar
// coefficient solves behind the A8/B10 and A12 recurrences.

#include "fopk/breakdown.hpp"
#include "fopk/linalg.hpp"
#include "fopk/types.hpp"

#include <Eigen/LU>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <variant>
#include <vector>

namespace fopk {

inline constexpr double kDefaultBreakdownTol = 1e-13;

template <typename Scalar = double>
struct MomentSequence {
  std::vector<Scalar> values;  // c_0 .. c_m

  Scalar operator[](std::size_t i) const { return values[i]; }
  std::size_t size() const { return values.size(); }
};

/// c_i = (y, A^i r0) for i = 0..m, built by repeated products with A.
template <typename MatDerived, typename YDerived, typename RDerived>
MomentSequence<typename MatDerived::Scalar> moments(const Eigen::MatrixBase<MatDerived>& A,
                                                    const Eigen::MatrixBase<YDerived>& y,
                                                    const Eigen::MatrixBase<RDerived>& r0, Index m) {
  using Scalar = typename MatDerived::Scalar;
  if (m < 0) throw std::invalid_argument("moments: m must be non-negative");
  detail::require_same(A.rows(), A.cols(), "moments (square)");
  detail::require_same(A.cols(), r0.size(), "moments");
  detail::require_same(y.size(), r0.size(), "moments");

  MomentSequence<Scalar> seq;
  seq.values.reserve(static_cast<std::size_t>(m) + 1);
  Vector<Scalar> power = r0;
  seq.values.push_back(dot(y, power));
  for (Index i = 1; i <= m; ++i) {
    power = matvec(A, power);
    seq.values.push_back(dot(y, power));
  }
  return seq;
}

/// det [c_{i+j+1}]_{i,j=0..k-1}. Diagnostic only: its vanishing predicts breakdown.
template <typename Scalar>
Scalar hankel_det(const MomentSequence<Scalar>& c, Index k) {
  if (k < 1) throw std::invalid_argument("hankel_det: k must be at least 1");
  // Entries reach c_{2k-1}, so 2k moments c_0..c_{2k-1} are needed.
  if (c.size() < static_cast<std::size_t>(2 * k)) {
    throw std::invalid_argument("hankel_det: need moments c_0..c_" + std::to_string(2 * k - 1));
  }
  if (k == 1) return c[1];
  if (k == 2) return c[1] * c[3] - c[2] * c[2];

  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> H(k, k);
  for (Index i = 0; i < k; ++i)
    for (Index j = 0; j < k; ++j) H(i, j) = c[static_cast<std::size_t>(i + j + 1)];
  return H.partialPivLu().determinant();
}

/// Inner products feeding one A12 step, named after the Cramer system they build.
template <typename Scalar = double>
struct A12Inputs {
  Scalar a11{}, a13{}, a21{}, a23{}, a31{}, a33{}, s{}, t{};
};

template <typename Scalar = double>
struct A12Coefficients {
  // Cramer-system entries; a12 = 0, a22 = a11 and a32 = a21 by construction.
  Scalar a11{}, a13{}, a21{}, a22{}, a23{}, a31{}, a32{}, a33{};
  Scalar s{}, t{};
  Scalar b1{}, b2{}, b3{};
  Scalar delta_k{};
  // Recurrence coefficients. D_k = E_k = 0 always and are not stored.
  Scalar F{}, B{}, C{}, G{}, A{};
};

/// Solve for F, B, C, G, A of the A12 relation
///   P_k = A_k [ (x^2 + B_k x + C_k) P_{k-2} + (F_k x + G_k) P_{k-3} ].
///
/// Uses the explicit closed forms (F first, then B by Cramer, G and C by back
/// substitution) so the arithmetic order follows the published algorithm.
template <typename Scalar>
std::variant<A12Coefficients<Scalar>, BreakdownKind> a12_coefficients(const A12Inputs<Scalar>& in,
                                                                      Scalar breakdown_tol = Scalar(kDefaultBreakdownTol)) {
  using std::abs;
  A12Coefficients<Scalar> k;
  k.a11 = in.a11;
  k.a13 = in.a13;
  k.a21 = in.a21;
  k.a22 = in.a11;
  k.a23 = in.a23;
  k.a31 = in.a31;
  k.a32 = in.a21;
  k.a33 = in.a33;
  k.s = in.s;
  k.t = in.t;

  for (Scalar v : {in.a11, in.a13, in.a21, in.a23, in.a31, in.a33, in.s, in.t}) {
    if (!std::isfinite(v)) return BreakdownKind::non_finite("moment inputs");
  }

  if (negligible(k.a13, abs(k.a11), breakdown_tol)) return BreakdownKind::pivot("a13");
  k.F = -k.a11 / k.a13;

  k.b1 = -k.a21 - k.a23 * k.F;
  k.b2 = -k.a31 - k.a33 * k.F;
  k.b3 = -k.s - k.t * k.F;

  const Scalar minor1 = k.a22 * k.a33 - k.a32 * k.a23;
  const Scalar minor2 = k.a21 * k.a32 - k.a31 * k.a22;
  k.delta_k = k.a11 * minor1 + k.a13 * minor2;
  const Scalar numer_B = k.b1 * minor1 + k.a13 * (k.b2 * k.a32 - k.b3 * k.a22);

  const Scalar delta_terms = abs(k.a11) * (abs(k.a22 * k.a33) + abs(k.a32 * k.a23)) +
                             abs(k.a13) * (abs(k.a21 * k.a32) + abs(k.a31 * k.a22));
  const Scalar numer_terms = abs(k.b1 * minor1) + abs(k.a13) * (abs(k.b2 * k.a32) + abs(k.b3 * k.a22));
  if (!std::isfinite(k.delta_k) || !std::isfinite(numer_B)) return BreakdownKind::non_finite("Delta_k");
  if (negligible(k.delta_k, std::max(delta_terms, numer_terms), breakdown_tol)) return BreakdownKind::delta_zero();
  k.B = numer_B / k.delta_k;

  if (negligible(k.a13, abs(k.b1) + abs(k.a11 * k.B), breakdown_tol)) return BreakdownKind::pivot("a13");
  k.G = (k.b1 - k.a11 * k.B) / k.a13;

  if (negligible(k.a22, abs(k.b2) + abs(k.a21 * k.B) + abs(k.a23 * k.G), breakdown_tol))
    return BreakdownKind::pivot("a22");
  k.C = (k.b2 - k.a21 * k.B - k.a23 * k.G) / k.a22;

  const Scalar norm = k.C + k.G;
  if (negligible(norm, abs(k.C) + abs(k.G), breakdown_tol)) return BreakdownKind::normalization_zero();
  k.A = Scalar(1) / norm;

  for (Scalar v : {k.F, k.B, k.C, k.G, k.A}) {
    if (!std::isfinite(v)) return BreakdownKind::non_finite("A12 coefficients");
  }
  return k;
}

/// A_{k+1} = -(y_k, r_k) / (y_k, A z_k) of relation A8.
template <typename YDerived, typename RDerived, typename ZDerived>
std::variant<typename YDerived::Scalar, BreakdownKind> a8_step_coefficient(
    const Eigen::MatrixBase<YDerived>& yk, const Eigen::MatrixBase<RDerived>& rk,
    const Eigen::MatrixBase<ZDerived>& Azk,
    typename YDerived::Scalar breakdown_tol = typename YDerived::Scalar(kDefaultBreakdownTol)) {
  using Scalar = typename YDerived::Scalar;
  const Scalar numer = dot(yk, rk);
  const Scalar denom = dot(yk, Azk);
  if (!std::isfinite(numer)) return BreakdownKind::non_finite("(y_k, r_k)");
  if (negligible(denom, dot_magnitude(yk, Azk), breakdown_tol)) return BreakdownKind::pivot("(y_k, A z_k)");
  const Scalar value = -numer / denom;
  if (!std::isfinite(value)) return BreakdownKind::non_finite("A_{k+1}");
  return value;
}

template <typename Scalar = double>
struct A8B10Coefficients {
  Scalar A{};   // A_{k+1} of relation A8
  Scalar B1{};  // B^1_{k+1} of relation B10
  Scalar C1{};  // C^1_{k+1} = 1 / A_{k+1}
};

/// C^1_{k+1} = 1/A_{k+1}, B^1_{k+1} = -C^1_{k+1} (y_{k+1}, r_{k+1}) / (y_k, A z_k).
template <typename Y1Derived, typename R1Derived, typename YDerived, typename ZDerived>
std::variant<A8B10Coefficients<typename YDerived::Scalar>, BreakdownKind> b10_step_coefficients(
    typename YDerived::Scalar A_next, const Eigen::MatrixBase<Y1Derived>& yk1,
    const Eigen::MatrixBase<R1Derived>& rk1, const Eigen::MatrixBase<YDerived>& yk,
    const Eigen::MatrixBase<ZDerived>& Azk,
    typename YDerived::Scalar breakdown_tol = typename YDerived::Scalar(kDefaultBreakdownTol)) {
  using Scalar = typename YDerived::Scalar;
  if (!std::isfinite(A_next)) return BreakdownKind::non_finite("A_{k+1}");
  A8B10Coefficients<Scalar> out;
  out.A = A_next;
  // A_{k+1} is a ratio with no term magnitude of its own; only exact zero or a
  // reciprocal that overflows is caught here.
  if (A_next == Scalar(0) || !std::isfinite(Scalar(1) / A_next)) return BreakdownKind::pivot("A_{k+1}");
  out.C1 = Scalar(1) / A_next;

  const Scalar denom = dot(yk, Azk);
  if (negligible(denom, dot_magnitude(yk, Azk), breakdown_tol)) return BreakdownKind::pivot("(y_k, A z_k)");
  out.B1 = -out.C1 * dot(yk1, rk1) / denom;
  if (!std::isfinite(out.B1)) return BreakdownKind::non_finite("B1_{k+1}");
  return out;
}

}  // namespace fopk
