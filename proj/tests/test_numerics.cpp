#include <cmath>
#include <random>

#include "doctest.h"
#include "rissr/errors.hpp"
#include "rissr/numerics.hpp"

using namespace rissr;

namespace {

CMatrix random_hpd(std::mt19937_64& g, int n, double shift) {
  std::normal_distribution<double> nd;
  CMatrix A(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) A(i, j) = {nd(g), nd(g)};
  }
  return A * A.adjoint() + shift * CMatrix::Identity(n, n);
}

}  // namespace

TEST_CASE("hermitian matrix validation") {
  CMatrix m(2, 2);
  m << 1.0, cdouble(0, 1), cdouble(0, -1), 2.0;
  CHECK_NOTHROW(HermitianMatrix{m});
  m(0, 1) = 3.0;
  CHECK_THROWS_AS(HermitianMatrix{m}, ValidationError);
  CHECK_THROWS_AS(HermitianMatrix{CMatrix::Zero(2, 3)}, ValidationError);
}

TEST_CASE("solve_hpd") {
  const CVector b = CVector::Random(3);
  CHECK((solve_hpd(HermitianMatrix::identity(3), b) - b).norm() <= 1e-15);

  CMatrix d = CMatrix::Zero(2, 2);
  d(0, 0) = 2.0;
  d(1, 1) = 4.0;
  CVector rhs(2);
  rhs << 2.0, 4.0;
  const CVector x = solve_hpd(HermitianMatrix(d), rhs);
  CHECK(std::abs(x[0] - 1.0) <= 1e-15);
  CHECK(std::abs(x[1] - 1.0) <= 1e-15);

  std::mt19937_64 g(1);
  for (int t = 0; t < 50; ++t) {
    const CMatrix A = random_hpd(g, 4, 0.1);
    const CVector r = CVector::Random(4);
    const CVector sol = solve_hpd(HermitianMatrix(A), r);
    CHECK((A * sol - r).norm() <= 1e-10 * r.norm());
  }

  CMatrix singular = CMatrix::Zero(2, 2);
  singular(0, 0) = 1.0;
  CHECK_THROWS_AS(solve_hpd(HermitianMatrix(singular), rhs), SingularMatrix);
  CMatrix indefinite = CMatrix::Identity(2, 2);
  indefinite(1, 1) = -1.0;
  CHECK_THROWS_AS(solve_hpd(HermitianMatrix(indefinite), rhs), SingularMatrix);
}

TEST_CASE("psd_project") {
  std::mt19937_64 g(2);
  const CMatrix psd = random_hpd(g, 5, 0.0);
  CHECK((psd_project(HermitianMatrix(psd)).matrix() - psd).norm() <= 1e-12 * psd.norm());

  CMatrix d = CMatrix::Identity(2, 2);
  d(1, 1) = -1.0;
  const CMatrix p = psd_project(HermitianMatrix(d)).matrix();
  CHECK(std::abs(p(0, 0) - 1.0) <= 1e-15);
  CHECK(std::abs(p(1, 1)) <= 1e-15);

  std::normal_distribution<double> nd;
  for (int t = 0; t < 20; ++t) {
    CMatrix A(4, 4);
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 4; ++j) A(i, j) = {nd(g), nd(g)};
    }
    A = (A + A.adjoint()).eval();
    const CMatrix P = psd_project(HermitianMatrix(A)).matrix();
    // Oracle: clamp the eigenvalues.
    Eigen::SelfAdjointEigenSolver<CMatrix> eig(A);
    RVector lam = eig.eigenvalues();
    for (int i = 0; i < 4; ++i) lam[i] = std::max(lam[i], 0.0);
    const CMatrix ref = eig.eigenvectors() * lam.asDiagonal() * eig.eigenvectors().adjoint();
    CHECK((P - ref).norm() <= 1e-12 * A.norm());
    // Idempotent, and no other PSD matrix sampled nearby is closer.
    CHECK((psd_project(HermitianMatrix(P)).matrix() - P).norm() <= 1e-12 * A.norm());
    for (int s = 0; s < 20; ++s) {
      const CMatrix other = psd_project(HermitianMatrix(P + 0.1 * random_hpd(g, 4, 0.0) / 4.0 -
                                                        0.05 * CMatrix::Identity(4, 4)))
                                .matrix();
      CHECK((A - P).norm() <= (A - other).norm() + 1e-12);
    }
  }
}

TEST_CASE("maximize_concave_1d") {
  CHECK(maximize_concave_1d([](double x) { return -(x - 0.3) * (x - 0.3); }, 0.0, 1.0) ==
        doctest::Approx(0.3).epsilon(1e-6));
  CHECK(maximize_concave_1d([](double x) { return std::sqrt(x); }, 0.0, 1.0) == 1.0);
  CHECK(maximize_concave_1d([](double x) { return -x; }, 0.0, 1.0) == 0.0);

  // -a x + b sqrt(x) + c cbrt(1 - x) with a = b = c = 1 against a 1e-6 grid.
  const auto f = [](double x) { return -x + std::sqrt(x) + std::cbrt(1.0 - x); };
  double best = 0.0, best_x = 0.0;
  for (int i = 0; i <= 1000000; ++i) {
    const double x = i * 1e-6;
    if (f(x) > best) {
      best = f(x);
      best_x = x;
    }
  }
  CHECK(std::abs(maximize_concave_1d(f, 0.0, 1.0) - best_x) <= 1e-5);
  CHECK(std::abs(maximize_concave_1d(f, 1.0, 0.0) - best_x) <= 1e-5);
}

TEST_CASE("seeded generator") {
  Rng a(42), b(42), c(43);
  for (int i = 0; i < 10; ++i) {
    const double x = a.uniform();
    CHECK(x == b.uniform());
    CHECK(x >= 0.0);
    CHECK(x < 1.0);
  }
  CHECK(a.uniform() != c.uniform());
  CHECK(derive_seed(1, {2, 3}) == derive_seed(1, {2, 3}));
  CHECK(derive_seed(1, {2, 3}) != derive_seed(1, {3, 2}));

  Rng r(7);
  double s = 0.0, s2 = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double v = std::norm(r.complex_normal(2.0));
    s += v;
    s2 += v * v;
  }
  const double mean = s / n;
  CHECK(mean == doctest::Approx(2.0).epsilon(0.02));
}
