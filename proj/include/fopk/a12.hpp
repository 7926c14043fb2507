#pragma once

// Lanczos-type solver built on the A12 relation
//   P_k = A_k [ (x^2 + B_k x + C_k) P_{k-2} + (F_k x + G_k) P_{k-3} ],   k >= 3,
// started from the closed forms of P_1 and P_2.

#include "fopk/kernel.hpp"
#include "fopk/linalg.hpp"
#include "fopk/solve_common.hpp"

#include <array>
#include <utility>
#include <variant>
#include <vector>

namespace fopk {

/// Iterates and moments produced by the degree-1 and degree-2 start.
template <typename Scalar = double>
struct A12State {
  std::array<Vector<Scalar>, 3> r;  // r_0, r_1, r_2
  std::array<Vector<Scalar>, 3> x;  // x_0, x_1, x_2
  std::array<Vector<Scalar>, 4> y;  // y_i = (A^T)^i y, i = 0..3
  Scalar c0{}, c1{}, c2{}, c3{};
  Scalar delta{};  // c1 c3 - c2^2
  Scalar alpha{}, beta{};
  std::vector<TraceRow<Scalar>> trace;
};

namespace detail {

template <typename Scalar>
std::variant<A12State<Scalar>, SolveOutcome<Scalar>> a12_start(const DenseMatrix<Scalar>& A, const Vector<Scalar>& b,
                                                               const Vector<Scalar>& x0, const Vector<Scalar>& y,
                                                               const SolveConfig<Scalar>& cfg, Tracker<Scalar>& track) {
  require_same(A.rows(), y.size(), "a12_init (y)");
  const Scalar eps = cfg.epsilon;
  const Scalar tol = cfg.breakdown_tol;
  const Index cap = cfg.iteration_limit(A.rows());

  A12State<Scalar> st;
  st.x[0] = x0;
  st.r[0] = true_residual(A, b, x0);
  const Scalar r0_norm = norm2(st.r[0]);
  track.accept(0, st.x[0], st.r[0], r0_norm);
  if (r0_norm <= eps) return track.finish(SolveStatus::Converged);
  if (y.isZero(0)) throw std::invalid_argument("a12: shadow vector y must be nonzero");

  const Vector<Scalar> p = matvec(A, st.r[0]);
  const Vector<Scalar> p1 = matvec(A, p);
  st.c0 = dot(y, st.r[0]);
  st.c1 = dot(y, p);
  st.c2 = dot(y, p1);
  st.c3 = dot(y, matvec(A, p1));

  // P_1(x) = 1 - (c0 / c1) x
  if (negligible(st.c1, dot_magnitude(y, p), tol)) return track.breakdown(BreakdownKind::init_moment("c1"));
  const Scalar ratio = st.c0 / st.c1;
  st.r[1] = st.r[0] - ratio * p;
  st.x[1] = st.x[0] + ratio * st.r[0];
  if (!track.usable(st.x[1], st.r[1])) return track.breakdown(BreakdownKind::non_finite("r_1"));
  const Scalar r1_norm = norm2(st.r[1]);
  track.accept(1, st.x[1], st.r[1], r1_norm);
  if (r1_norm <= eps) return track.finish(SolveStatus::Converged);
  if (cap < 2) return track.finish(SolveStatus::IterationCap);

  // P_2(x) = 1 - alpha x + beta x^2
  st.delta = st.c1 * st.c3 - st.c2 * st.c2;
  if (negligible(st.delta, std::abs(st.c1 * st.c3) + st.c2 * st.c2, tol)) {
    return track.breakdown(BreakdownKind::init_moment("delta"));
  }
  st.alpha = (st.c0 * st.c3 - st.c1 * st.c2) / st.delta;
  st.beta = (st.c0 * st.c2 - st.c1 * st.c1) / st.delta;
  st.r[2] = st.r[0] - st.alpha * p + st.beta * p1;
  st.x[2] = st.x[0] + st.alpha * st.r[0] - st.beta * p;
  if (!track.usable(st.x[2], st.r[2])) return track.breakdown(BreakdownKind::non_finite("r_2"));
  const Scalar r2_norm = norm2(st.r[2]);
  track.accept(2, st.x[2], st.r[2], r2_norm);
  if (r2_norm <= eps) return track.finish(SolveStatus::Converged);
  if (cap < 3) return track.finish(SolveStatus::IterationCap);

  st.y[0] = y;
  for (std::size_t i = 1; i < st.y.size(); ++i) st.y[i] = matvec_transpose(A, st.y[i - 1]);
  return st;
}

}  // namespace detail

/// Builds r_1, x_1 from P_1 and r_2, x_2 from P_2, plus y_1..y_3.
///
/// Returns an outcome instead of a state when r_0, r_1 or r_2 already meets
/// epsilon (checked before the next denominator is used), or when c1 or
/// delta vanishes.
template <typename Scalar>
std::variant<A12State<Scalar>, SolveOutcome<Scalar>> a12_init(const DenseMatrix<Scalar>& A, const VectorArg<Scalar>& b,
                                                              const VectorArg<Scalar>& x0, const VectorArg<Scalar>& y,
                                                              const std::type_identity_t<SolveConfig<Scalar>>& cfg) {
  detail::check_problem(A, b, x0, cfg);
  detail::Tracker<Scalar> track(A, b, cfg);
  auto started = detail::a12_start(A, b, x0, y, cfg, track);
  if (auto* st = std::get_if<A12State<Scalar>>(&started)) {
    st->trace = track.finish(SolveStatus::IterationCap).trace;
  }
  return started;
}

template <typename Scalar>
SolveOutcome<Scalar> solve_a12(const DenseMatrix<Scalar>& A, const VectorArg<Scalar>& b, const VectorArg<Scalar>& x0,
                               const std::type_identity_t<SolveConfig<Scalar>>& cfg) {
  detail::check_problem(A, b, x0, cfg);
  detail::Tracker<Scalar> track(A, b, cfg);
  const Vector<Scalar> r0 = true_residual(A, b, x0);
  const Vector<Scalar> y0 = make_shadow_vector(cfg.y_choice, r0);

  auto started = detail::a12_start(A, b, x0, y0, cfg, track);
  if (auto* done = std::get_if<SolveOutcome<Scalar>>(&started)) return std::move(*done);
  A12State<Scalar>& st = std::get<A12State<Scalar>>(started);

  // Sliding windows: r[0..2] = r_{k-3}, r_{k-2}, r_{k-1}; likewise x.
  // y[0..3] = y_{k-3} .. y_k.
  auto& r = st.r;
  auto& x = st.x;
  auto& y = st.y;
  const Index cap = cfg.iteration_limit(A.rows());

  for (Index k = 3;; ++k) {
    if (k > cap) return track.finish(SolveStatus::IterationCap);

    const Vector<Scalar> y_next = matvec_transpose(A, y[3]);
    const Vector<Scalar> q1 = matvec(A, r[1]);  // A r_{k-2}
    const Vector<Scalar> q2 = matvec(A, q1);    // A^2 r_{k-2}
    const Vector<Scalar> q3 = matvec(A, r[0]);  // A r_{k-3}

    A12Inputs<Scalar> in;
    in.a11 = dot(y[1], r[1]);
    in.a13 = dot(y[0], r[0]);
    in.a21 = dot(y[2], r[1]);
    in.a23 = dot(y[1], r[0]);
    in.a31 = dot(y[3], r[1]);
    in.a33 = dot(y[2], r[0]);
    in.s = dot(y_next, r[1]);
    in.t = dot(y[3], r[0]);

    auto solved = a12_coefficients(in, cfg.breakdown_tol);
    if (auto* kind = std::get_if<BreakdownKind>(&solved)) return track.breakdown(*kind);
    const auto& c = std::get<A12Coefficients<Scalar>>(solved);

    Vector<Scalar> r_k = c.A * (q2 + c.B * q1 + c.C * r[1] + c.F * q3 + c.G * r[0]);
    Vector<Scalar> x_k = c.A * (c.C * x[1] + c.G * x[0] - (q1 + c.B * r[1] + c.F * r[0]));
    if (!track.usable(x_k, r_k)) return track.breakdown(BreakdownKind::non_finite("r_k"));

    const Scalar r_norm = norm2(r_k);
    track.accept(k, x_k, r_k, r_norm);
    if (r_norm < cfg.epsilon) return track.finish(SolveStatus::Converged);

    r[0] = std::move(r[1]);
    r[1] = std::move(r[2]);
    r[2] = std::move(r_k);
    x[0] = std::move(x[1]);
    x[1] = std::move(x[2]);
    x[2] = std::move(x_k);
    y[0] = std::move(y[1]);
    y[1] = std::move(y[2]);
    y[2] = std::move(y[3]);
    y[3] = y_next;
  }
}

}  // namespace fopk
