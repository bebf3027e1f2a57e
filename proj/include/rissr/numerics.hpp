#pragma once

#include <cstdint>
#include <functional>
#include <initializer_list>
#include <random>

#include "rissr/types.hpp"

namespace rissr {

/// Dense complex matrix checked to be conjugate-symmetric on construction.
class HermitianMatrix {
 public:
  HermitianMatrix() = default;
  /// Throws ValidationError unless `m` is square and hermitian within 1e-12 relative.
  explicit HermitianMatrix(CMatrix m);
  static HermitianMatrix identity(Eigen::Index dim);

  Eigen::Index dim() const { return m_.rows(); }
  const CMatrix& matrix() const { return m_; }

 private:
  CMatrix m_;
};

/// Solves A x = b for hermitian positive definite A. Throws SingularMatrix when
/// the smallest eigenvalue is not positive relative to the largest.
CVector solve_hpd(const HermitianMatrix& a, const CVector& b);

/// Nearest positive semidefinite matrix in Frobenius norm (negative eigenvalues clamped).
HermitianMatrix psd_project(const HermitianMatrix& a);

/// Golden-section search for the maximizer of a concave function on [lo, hi].
/// The endpoints are candidates, so boundary maxima are found exactly.
double maximize_concave_1d(const std::function<double(double)>& f, double lo, double hi,
                           double tol = 1e-7);

/// splitmix64 finalizer; used to derive independent seeds from keys.
std::uint64_t mix64(std::uint64_t x);
std::uint64_t derive_seed(std::uint64_t root, std::initializer_list<std::uint64_t> keys);

/// Seeded generator with platform-independent uniform and normal draws.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1).
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  double normal();
  /// Circularly symmetric complex Gaussian with E|z|^2 = variance.
  cdouble complex_normal(double variance = 1.0);

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace rissr
