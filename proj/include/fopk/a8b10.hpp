#pragma once

#include "fopk/kernel.hpp"
#include "fopk/linalg.hpp"
#include "fopk/solve_common.hpp"

#include <utility>
#include <variant>

namespace fopk {

/// Baheux's A8/B10 pair: r_{k+1} from relation A8, the direction
/// z_{k+1} = B^1_{k+1} z_k + C^1_{k+1} r_{k+1} from relation B10.
template <typename Scalar>
SolveOutcome<Scalar> solve_a8_b10(const DenseMatrix<Scalar>& A, const VectorArg<Scalar>& b, const VectorArg<Scalar>& x0,
                                  const std::type_identity_t<SolveConfig<Scalar>>& cfg) {
  detail::check_problem(A, b, x0, cfg);
  detail::Tracker<Scalar> track(A, b, cfg);
  const Index cap = cfg.iteration_limit(A.rows());

  Vector<Scalar> x = x0;
  Vector<Scalar> r = true_residual(A, b, x0);
  const Scalar r0_norm = norm2(r);
  track.accept(0, x, r, r0_norm);
  if (r0_norm <= cfg.epsilon) return track.finish(SolveStatus::Converged);

  Vector<Scalar> y = make_shadow_vector(cfg.y_choice, r);
  if (y.isZero(0)) throw std::invalid_argument("a8b10: shadow vector y must be nonzero");
  Vector<Scalar> z = r;

  for (Index k = 0;; ++k) {
    if (k + 1 > cap) return track.finish(SolveStatus::IterationCap);

    const Vector<Scalar> Az = matvec(A, z);
    auto step = a8_step_coefficient(y, r, Az, cfg.breakdown_tol);
    if (auto* kind = std::get_if<BreakdownKind>(&step)) return track.breakdown(*kind);
    const Scalar A_next = std::get<Scalar>(step);

    Vector<Scalar> r_next = r + A_next * Az;
    Vector<Scalar> x_next = x - A_next * z;
    if (!track.usable(x_next, r_next)) return track.breakdown(BreakdownKind::non_finite("r_{k+1}"));
    r = std::move(r_next);
    x = std::move(x_next);

    const Scalar r_norm = norm2(r);
    track.accept(k + 1, x, r, r_norm);
    if (r_norm < cfg.epsilon) return track.finish(SolveStatus::Converged);

    Vector<Scalar> y_next = matvec_transpose(A, y);
    auto coeffs = b10_step_coefficients(A_next, y_next, r, y, Az, cfg.breakdown_tol);
    if (auto* kind = std::get_if<BreakdownKind>(&coeffs)) return track.breakdown(*kind);
    const auto& c = std::get<A8B10Coefficients<Scalar>>(coeffs);

    z = c.B1 * z + c.C1 * r;
    if (!z.allFinite()) return track.breakdown(BreakdownKind::non_finite("z_{k+1}"));
    y = std::move(y_next);
  }
}

}  // namespace fopk
