#include "fopk/problems.hpp"
#include "fopk/solvers.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <functional>
#include <random>
#include <string>
#include <vector>

using namespace fopk;

namespace {

using Solver = std::function<SolveOutcome<double>(const DenseMatrix<double>&, const Vector<double>&,
                                                  const Vector<double>&, const SolveConfig<double>&)>;

struct Named {
  std::string name;
  Solver solve;
};

std::vector<Named> all_solvers() {
  return {{"a12", solve_a12<double>}, {"a8b10", solve_a8_b10<double>}, {"fom", solve_arnoldi_fom<double>}};
}

std::vector<Named> lanczos_solvers() { return {{"a12", solve_a12<double>}, {"a8b10", solve_a8_b10<double>}}; }

SolveConfig<double> config(double eps) {
  SolveConfig<double> cfg;
  cfg.epsilon = eps;
  return cfg;
}

bool all_fields_finite(const SolveOutcome<double>& out) {
  if (!out.x.allFinite() || !std::isfinite(out.recursive_residual_norm) || !std::isfinite(out.true_residual_norm))
    return false;
  for (const auto& row : out.trace)
    if (!std::isfinite(row.recursive_rnorm) || !std::isfinite(row.true_rnorm)) return false;
  return true;
}

}  // namespace

TEST_CASE("identity system converges in one step for every solver") {
  const DenseMatrix<double> I = DenseMatrix<double>::Identity(4, 4);
  Vector<double> b(4);
  b << 1, -2, 3, 0.5;
  const Vector<double> x0 = Vector<double>::Zero(4);
  for (const auto& s : all_solvers()) {
    CAPTURE(s.name);
    const auto out = s.solve(I, b, x0, config(1e-10));
    CHECK(out.status == SolveStatus::Converged);
    CHECK(out.iterations == 1);
    CHECK((out.x - b).norm() <= 1e-14);
    CHECK(out.true_residual_norm <= 1e-14);
  }
}

TEST_CASE("a12_init: worked 2x2 example is exact after two steps") {
  DenseMatrix<double> A(2, 2);
  A << 1, 0, 0, 2;
  const Vector<double> b = Vector<double>::Ones(2);
  const Vector<double> x0 = Vector<double>::Zero(2);
  const auto started = a12_init(A, b, x0, b, config(1e-12));
  REQUIRE(std::holds_alternative<SolveOutcome<double>>(started));
  const auto& out = std::get<SolveOutcome<double>>(started);
  CHECK(out.status == SolveStatus::Converged);
  CHECK(out.iterations == 2);
  CHECK(out.recursive_residual_norm == 0.0);
  CHECK((out.x - direct_solve(A, b)).norm() <= 1e-15);
}

TEST_CASE("a12_init: moments and delta") {
  DenseMatrix<double> A(3, 3);
  A << 1, 0, 0, 0, 2, 0, 0, 0, 3;
  const Vector<double> b = Vector<double>::Ones(3);
  const auto started = a12_init(A, b, Vector<double>::Zero(3), b, config(1e-12));
  REQUIRE(std::holds_alternative<A12State<double>>(started));
  const auto& st = std::get<A12State<double>>(started);
  // c_i = 1 + 2^i + 3^i
  CHECK(st.c0 == 3.0);
  CHECK(st.c1 == 6.0);
  CHECK(st.c2 == 14.0);
  CHECK(st.c3 == 36.0);
  CHECK(st.delta == 6.0 * 36.0 - 14.0 * 14.0);
  CHECK(st.trace.empty());
  CHECK(st.y[3] == Vector<double>((Vector<double>(3) << 1, 8, 27).finished()));
}

TEST_CASE("a12_init: delta equals hankel_det(c, 2) bit for bit") {
  auto gen = std::mt19937_64(21);
  for (int trial = 0; trial < 20; ++trial) {
    const DenseMatrix<double> A = test::random_diagonally_dominant(7, gen);
    const Vector<double> b = test::random_vector(7, gen);
    const Vector<double> y = test::random_vector(7, gen);
    const auto started = a12_init(A, b, Vector<double>::Zero(7), y, config(1e-14));
    REQUIRE(std::holds_alternative<A12State<double>>(started));
    const auto& st = std::get<A12State<double>>(started);
    const auto c = moments(A, y, b, 3);
    CHECK(hankel_det(c, 2) == st.delta);
    CHECK(hankel_det(c, 1) == st.c1);
  }
}

TEST_CASE("a12_init: early exits and initial breakdowns") {
  DenseMatrix<double> A(2, 2);
  A << 1, 0, 0, 2;
  Vector<double> x_exact(2);
  x_exact << 0.25, -1.0;
  const Vector<double> b = A * x_exact;

  SUBCASE("exact x0") {
    const auto started = a12_init(A, b, x_exact, Vector<double>::Ones(2), config(1e-12));
    const auto& out = std::get<SolveOutcome<double>>(started);
    CHECK(out.status == SolveStatus::Converged);
    CHECK(out.iterations == 0);
  }
  SUBCASE("y orthogonal to A r0") {
    Vector<double> rhs(2);
    rhs << 2, -1;  // A r0 = (2, -2)
    const auto started = a12_init(A, rhs, Vector<double>::Zero(2), Vector<double>::Ones(2), config(1e-12));
    const auto& out = std::get<SolveOutcome<double>>(started);
    REQUIRE(out.status == SolveStatus::Breakdown);
    CHECK(out.breakdown->reason == BreakdownKind::Reason::InitMomentZero);
    CHECK(out.breakdown->name == "c1");
    CHECK(out.iterations == 0);
  }
  SUBCASE("vanishing delta") {
    Vector<double> y(2);
    y << 0, 1;
    const auto started = a12_init(A, Vector<double>::Ones(2).eval(), Vector<double>::Zero(2), y, config(1e-12));
    const auto& out = std::get<SolveOutcome<double>>(started);
    REQUIRE(out.status == SolveStatus::Breakdown);
    CHECK(out.breakdown->name == "delta");
    CHECK(out.iterations == 1);
    CHECK(out.x.allFinite());
  }
  SUBCASE("zero y is a usage error") {
    CHECK_THROWS_AS(a12_init(A, b, Vector<double>::Zero(2), Vector<double>::Zero(2), config(1e-12)),
                    std::invalid_argument);
  }
}

TEST_CASE("A12 on the delta = 0 block problem, n = 10") {
  const auto p = gen_disc5point<double>(10, 0.0);
  const auto out = solve_a12(p.A, p.b, Vector<double>::Zero(10), config(1e-5));
  CHECK(out.status == SolveStatus::Converged);
  CHECK(out.true_residual_norm <= 1e-4);
}

TEST_CASE("A8/B10 fails on the delta = 0.2 block problem, n = 80") {
  const auto p = gen_disc5point<double>(80, 0.2);
  const auto out = solve_a8_b10(p.A, p.b, Vector<double>::Zero(80), config(1e-3));
  CHECK(out.status != SolveStatus::Converged);
  CHECK(all_fields_finite(out));
}

TEST_CASE("FOM") {
  DenseMatrix<double> D = DenseMatrix<double>::Zero(3, 3);
  D.diagonal() << 1, 2, 3;
  Vector<double> b(3);
  b << 1, -1, 2;
  const auto out = solve_arnoldi_fom(D, b, Vector<double>::Zero(3), config(1e-10));
  CHECK(out.status == SolveStatus::Converged);
  CHECK(out.iterations <= 3);

  const auto h = gen_hilbert<double>(10);
  const auto hout = solve_arnoldi_fom(h.A, h.b, Vector<double>::Zero(10), config(1e-6));
  CHECK(hout.status == SolveStatus::Converged);
  CHECK(hout.true_residual_norm <= 1e-6);
}

TEST_CASE("solvers match direct_solve on random diagonally dominant systems") {
  auto gen = std::mt19937_64(22);
  for (int trial = 0; trial < 10; ++trial) {
    const DenseMatrix<double> A = test::random_diagonally_dominant(8, gen);
    const Vector<double> b = test::random_vector(8, gen);
    const Vector<double> ref = direct_solve(A, b);
    for (const auto& s : all_solvers()) {
      CAPTURE(s.name);
      const auto out = s.solve(A, b, Vector<double>::Zero(8), config(1e-12));
      REQUIRE(out.status == SolveStatus::Converged);
      CHECK((out.x - ref).norm() <= 1e-6 * ref.norm());
      CHECK(out.true_residual_norm <= 10 * 1e-12 * (1 + b.norm()));
    }
  }
}

TEST_CASE("true_residual") {
  auto gen = std::mt19937_64(23);
  const DenseMatrix<double> A = test::random_diagonally_dominant(6, gen);
  const Vector<double> b = test::random_vector(6, gen);
  CHECK(true_residual(A, b, Vector<double>::Zero(6)) == b);
  CHECK(true_residual(A, b, direct_solve(A, b)).norm() <= 1e-10 * (1 + b.norm()));
}

TEST_CASE("orthogonality of Lanczos residuals to the shadow Krylov space") {
  auto gen = std::mt19937_64(24);
  for (int trial = 0; trial < 10; ++trial) {
    const Index n = 20;
    const DenseMatrix<double> A = test::random_diagonally_dominant(n, gen);
    const Vector<double> b = test::random_vector(n, gen);
    for (const auto& s : lanczos_solvers()) {
      CAPTURE(s.name);
      auto cfg = config(1e-300);
      cfg.max_iter = 6;
      std::vector<Vector<double>> ys{b};  // y = r0 = b for x0 = 0
      for (int i = 1; i < 6; ++i) ys.push_back(A.transpose() * ys.back());
      int checked = 0;
      cfg.on_iterate = [&](Index k, const Vector<double>&, const Vector<double>& r) {
        for (Index i = 0; i < k && k <= 6; ++i) {
          const auto& yi = ys[static_cast<std::size_t>(i)];
          CHECK(std::abs(yi.dot(r)) <= 1e-8 * yi.norm() * r.norm() + 1e-10);
          ++checked;
        }
      };
      s.solve(A, b, Vector<double>::Zero(n), cfg);
      CHECK(checked == 21);
    }
  }
}

TEST_CASE("FOM residuals satisfy the Galerkin condition") {
  auto gen = std::mt19937_64(25);
  const Index n = 20;
  const DenseMatrix<double> A = test::random_diagonally_dominant(n, gen);
  const Vector<double> b = test::random_vector(n, gen);
  std::vector<Vector<double>> krylov{b};
  for (int i = 1; i < 6; ++i) krylov.push_back(A * krylov.back());
  auto cfg = config(1e-300);
  cfg.max_iter = 6;
  cfg.on_iterate = [&](Index k, const Vector<double>&, const Vector<double>& r) {
    for (Index i = 0; i < k; ++i) {
      const auto& v = krylov[static_cast<std::size_t>(i)];
      CHECK(std::abs(v.dot(r)) <= 1e-8 * v.norm() * r.norm() + 1e-10);
    }
  };
  solve_arnoldi_fom(A, b, Vector<double>::Zero(n), cfg);
}

TEST_CASE("recursive and true residuals stay consistent on the block problems") {
  for (Index n = 10; n <= 50; n += 10) {
    for (double delta : {0.0, 0.2}) {
      const auto p = gen_disc5point<double>(n, delta);
      const double bound = 1e-6 * (1 + p.b.norm());
      for (const auto& s : lanczos_solvers()) {
        CAPTURE(s.name);
        CAPTURE(n);
        auto cfg = config(1e-8);
        bool above = true;
        cfg.on_iterate = [&](Index, const Vector<double>& x, const Vector<double>& r) {
          if (!above || r.norm() < 1e-8) {
            above = false;
            return;
          }
          CHECK((r - (p.b - p.A * x)).norm() <= bound);
        };
        s.solve(p.A, p.b, Vector<double>::Zero(n), cfg);
      }
    }
  }
}

TEST_CASE("finite termination on small well-conditioned systems") {
  auto gen = std::mt19937_64(26);
  for (int trial = 0; trial < 30; ++trial) {
    const Index n = 4 + trial % 3;
    const DenseMatrix<double> A = test::random_diagonally_dominant(n, gen);
    const Vector<double> b = test::random_vector(n, gen);
    for (const auto& s : all_solvers()) {
      CAPTURE(s.name);
      auto cfg = config(1e-8);
      cfg.max_iter = 5 * n;
      const auto out = s.solve(A, b, Vector<double>::Zero(n), cfg);
      CHECK(out.status != SolveStatus::IterationCap);
      if (out.status == SolveStatus::Converged) CHECK(out.iterations <= n + 1);
    }
  }
}

TEST_CASE("singular and rank-deficient inputs never leak non-finite values") {
  auto gen = std::mt19937_64(27);
  for (int trial = 0; trial < 60; ++trial) {
    const Index n = 3 + trial % 6;
    DenseMatrix<double> A = test::random_matrix(n, gen);
    A.row(n - 1) = A.row(0);  // rank deficient
    if (trial % 3 == 0) A.col(1).setZero();
    const Vector<double> b = test::random_vector(n, gen);
    for (const auto& s : all_solvers()) {
      CAPTURE(s.name);
      auto cfg = config(1e-10);
      cfg.record_trace = true;
      const auto out = s.solve(A, b, Vector<double>::Zero(n), cfg);
      CHECK(all_fields_finite(out));
      if (out.status == SolveStatus::Breakdown) {
        REQUIRE(out.breakdown.has_value());
        CHECK_FALSE(out.breakdown->name.empty());
      } else {
        CHECK_FALSE(out.breakdown.has_value());
      }
      if (out.status == SolveStatus::Converged) CHECK(out.recursive_residual_norm <= cfg.epsilon);
    }
  }
}

TEST_CASE("zero matrix breaks down immediately") {
  const DenseMatrix<double> Z = DenseMatrix<double>::Zero(3, 3);
  const Vector<double> b = Vector<double>::Ones(3);
  for (const auto& s : all_solvers()) {
    CAPTURE(s.name);
    const auto out = s.solve(Z, b, Vector<double>::Zero(3), config(1e-8));
    CHECK(out.status == SolveStatus::Breakdown);
    CHECK(out.iterations == 0);
    CHECK(out.x.isZero(0));
  }
}

TEST_CASE("Arnoldi basis stays orthonormal while the residual is large") {
  const auto p = gen_disc5point<double>(40, 0.2);
  const auto fom = solve_arnoldi_fom(p.A, p.b, Vector<double>::Zero(40), config(1e-6));
  REQUIRE(fom.status == SolveStatus::Converged);

  ArnoldiProcess<double> arnoldi(p.A, p.b, fom.iterations);
  for (Index j = 0; j < fom.iterations; ++j) arnoldi.step();
  // Columns 0..iterations-1 were built while the residual was >= 1e-6.
  const auto V = arnoldi.basis().leftCols(fom.iterations);
  const Eigen::MatrixXd gram = V.transpose() * V;
  CHECK((gram - Eigen::MatrixXd::Identity(fom.iterations, fom.iterations)).cwiseAbs().maxCoeff() <= 1e-8);

  // A V_j = V_{j+1} H_j
  const Index j = fom.iterations;
  const Eigen::MatrixXd lhs = p.A * arnoldi.basis().leftCols(j);
  const Eigen::MatrixXd rhs = arnoldi.basis().leftCols(j + 1) * arnoldi.hessenberg().topLeftCorner(j + 1, j);
  CHECK((lhs - rhs).norm() <= 1e-12 * p.A.norm());
}

TEST_CASE("iteration cap and trace bookkeeping") {
  const auto p = gen_disc5point<double>(50, 0.0);
  for (const auto& s : all_solvers()) {
    CAPTURE(s.name);
    auto cfg = config(1e-14);
    cfg.max_iter = 4;
    cfg.record_trace = true;
    const auto out = s.solve(p.A, p.b, Vector<double>::Zero(50), cfg);
    CHECK(out.status == SolveStatus::IterationCap);
    CHECK(out.iterations == 4);
    REQUIRE(out.trace.size() == 5);
    for (std::size_t i = 0; i < out.trace.size(); ++i) CHECK(out.trace[i].k == static_cast<Index>(i));
    CHECK(out.trace.back().true_rnorm == doctest::Approx(out.true_residual_norm).epsilon(1e-12));
  }

  auto cfg = config(1e-5);
  cfg.record_trace = true;
  const auto a12 = solve_a12(p.A, p.b, Vector<double>::Zero(50), cfg);
  REQUIRE(a12.status == SolveStatus::Converged);
  CHECK(a12.trace.size() == static_cast<std::size_t>(a12.iterations + 1));
  CHECK(a12.trace.back().recursive_rnorm == a12.recursive_residual_norm);
}

TEST_CASE("shadow vector choices") {
  Vector<double> r0(3);
  r0 << 1, 2, 3;
  CHECK(make_shadow_vector(ShadowVector::copy_of_r0(), r0) == r0);
  CHECK(make_shadow_vector(ShadowVector::all_ones(), r0) == Vector<double>::Ones(3));
  const auto a = make_shadow_vector(ShadowVector::seeded(7), r0);
  CHECK(a == make_shadow_vector(ShadowVector::seeded(7), r0));
  CHECK(a != make_shadow_vector(ShadowVector::seeded(8), r0));
  CHECK(a.cwiseAbs().maxCoeff() <= 1.0);

  const auto p = gen_disc5point<double>(20, 0.2);
  for (auto choice : {ShadowVector::all_ones(), ShadowVector::seeded(3)}) {
    auto cfg = config(1e-8);
    cfg.y_choice = choice;
    CHECK(solve_a12(p.A, p.b, Vector<double>::Zero(20), cfg).converged());
  }
}

TEST_CASE("configuration and input validation") {
  const DenseMatrix<double> I = DenseMatrix<double>::Identity(2, 2);
  const Vector<double> b = Vector<double>::Ones(2);
  const Vector<double> x0 = Vector<double>::Zero(2);
  auto cfg = config(0.0);
  CHECK_THROWS_AS(solve_a12(I, b, x0, cfg), std::invalid_argument);
  cfg = config(1e-6);
  cfg.max_iter = 0;
  CHECK_THROWS_AS(solve_a8_b10(I, b, x0, cfg), std::invalid_argument);
  cfg = config(1e-6);
  CHECK_THROWS_AS(solve_arnoldi_fom(I, Vector<double>::Ones(3).eval(), x0, cfg), DimensionError);
  Vector<double> bad = b;
  bad(0) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(solve_a12(I, bad, x0, cfg), std::invalid_argument);
}

TEST_CASE("solvers are generic over the scalar type") {
  const auto p = gen_disc5point<long double>(20, 0.0L);
  SolveConfig<long double> cfg;
  cfg.epsilon = 1e-10L;
  const Vector<long double> x0 = Vector<long double>::Zero(20);
  for (const auto& out : {solve_a12(p.A, p.b, x0, cfg), solve_a8_b10(p.A, p.b, x0, cfg), solve_arnoldi_fom(p.A, p.b, x0, cfg)}) {
    CHECK(out.status == SolveStatus::Converged);
    CHECK(static_cast<double>((out.x - *p.x_true).norm()) <= 1e-8);
  }
}
