#include "rissr/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rissr/errors.hpp"

namespace rissr {

HermitianMatrix::HermitianMatrix(CMatrix m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols()) throw ValidationError("hermitian matrix must be square");
  const double scale = std::max(1.0, m_.cwiseAbs().maxCoeff());
  if ((m_ - m_.adjoint()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw ValidationError("matrix is not hermitian");
  }
  // Symmetrize so downstream solvers see an exactly hermitian input.
  m_ = 0.5 * (m_ + m_.adjoint()).eval();
}

HermitianMatrix HermitianMatrix::identity(Eigen::Index dim) {
  return HermitianMatrix(CMatrix::Identity(dim, dim));
}

CVector solve_hpd(const HermitianMatrix& a, const CVector& b) {
  const CMatrix& m = a.matrix();
  if (m.rows() != b.size()) throw ValidationError("solve_hpd dimension mismatch");
  Eigen::SelfAdjointEigenSolver<CMatrix> eig(m);
  if (eig.info() != Eigen::Success) throw SingularMatrix("eigendecomposition failed");
  const RVector& lambda = eig.eigenvalues();
  const double top = lambda.cwiseAbs().maxCoeff();
  if (!(lambda.minCoeff() > 1e-14 * top) || top == 0.0) {
    throw SingularMatrix("matrix is not positive definite");
  }
  Eigen::LLT<CMatrix> llt(m);
  if (llt.info() != Eigen::Success) throw SingularMatrix("Cholesky factorization failed");
  CVector x = llt.solve(b);
  // One round of refinement keeps the residual small on poorly conditioned inputs.
  const CVector r = b - m * x;
  x += llt.solve(r);
  return x;
}

HermitianMatrix psd_project(const HermitianMatrix& a) {
  Eigen::SelfAdjointEigenSolver<CMatrix> eig(a.matrix());
  const RVector clamped = eig.eigenvalues().cwiseMax(0.0);
  CMatrix out = eig.eigenvectors() * clamped.asDiagonal() * eig.eigenvectors().adjoint();
  out = 0.5 * (out + out.adjoint()).eval();
  return HermitianMatrix(std::move(out));
}

double maximize_concave_1d(const std::function<double(double)>& f, double lo, double hi,
                           double tol) {
  if (hi < lo) std::swap(lo, hi);
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo;
  double b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  while (b - a > tol) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  double best = 0.5 * (a + b);
  double f_best = f(best);
  for (double x : {lo, hi}) {
    const double fx = f(x);
    if (fx > f_best) {
      best = x;
      f_best = fx;
    }
  }
  return best;
}

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t root, std::initializer_list<std::uint64_t> keys) {
  std::uint64_t h = mix64(root);
  for (std::uint64_t k : keys) h = mix64(h ^ mix64(k + 0x632be59bd9b4e019ULL));
  return h;
}

double Rng::uniform() {
  // 53 random bits -> [0, 1).
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u1 = uniform();
  while (u1 <= std::numeric_limits<double>::min()) u1 = uniform();
  const double u2 = uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  spare_ = radius * std::sin(kTwoPi * u2);
  has_spare_ = true;
  return radius * std::cos(kTwoPi * u2);
}

cdouble Rng::complex_normal(double variance) {
  const double s = std::sqrt(0.5 * variance);
  const double re = normal();
  const double im = normal();
  return {s * re, s * im};
}

}  // namespace rissr
