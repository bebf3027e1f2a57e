#include "rissr/sdr.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "rissr/errors.hpp"

namespace rissr {

LiftedProblem build_lifted(const CMatrix& U, const CVector& z) {
  const Eigen::Index n = U.rows();
  if (U.cols() != n || z.size() != n) throw ValidationError("build_lifted: U must be N x N and z length N");
  CMatrix Q = CMatrix::Zero(n + 1, n + 1);
  Q.topLeftCorner(n, n) = -U;
  Q.topRightCorner(n, 1) = z;
  Q.bottomLeftCorner(1, n) = z.adjoint();
  return {Q};
}

SdpSolution solve_diag_sdp(const LiftedProblem& lp, const SdrSettings& settings,
                           const SdpWarmStart* warm) {
  const Eigen::Index n = lp.Q.rows();
  if (lp.Q.cols() != n || n == 0) throw ValidationError("solve_diag_sdp: Q must be square and non-empty");
  const HermitianMatrix herm(lp.Q);
  const double scale = herm.matrix().cwiseAbs().maxCoeff();

  SdpSolution sol;
  if (scale == 0.0) {
    sol.V = CMatrix::Identity(n, n);
    sol.warm = {sol.V, CMatrix::Zero(n, n)};
    return sol;
  }
  const CMatrix Qn = herm.matrix() / scale;
  double rho = settings.rho;

  CMatrix Z = CMatrix::Identity(n, n);
  CMatrix Y = CMatrix::Zero(n, n);
  if (warm && warm->Z.rows() == n && warm->Y.rows() == n) {
    Z = warm->Z;
    Y = warm->Y;
  }
  CMatrix X = Z;
  const double root_n = std::sqrt(static_cast<double>(n));
  bool converged = false;
  int it = 0;
  while (it < settings.max_iters) {
    ++it;
    CMatrix T = Z - Y + Qn / rho;
    X = psd_project(HermitianMatrix(0.5 * (T + T.adjoint()))).matrix();
    const CMatrix Z_prev = Z;
    Z = X + Y;
    Z.diagonal().setOnes();
    Y += X - Z;
    const double primal = (X - Z).norm();
    const double dual = rho * (Z - Z_prev).norm();
    const double eps_primal = settings.tol * (root_n + std::max(X.norm(), Z.norm()));
    const double eps_dual = settings.tol * (root_n + rho * Y.norm());
    if (primal <= eps_primal && dual <= eps_dual) {
      converged = true;
      break;
    }
    // Residual balancing; Y is the scaled dual, so it rescales with rho.
    if (it % 25 == 0) {
      if (primal / eps_primal > 10.0 * dual / eps_dual) {
        rho *= 2.0;
        Y /= 2.0;
      } else if (dual / eps_dual > 10.0 * primal / eps_primal) {
        rho /= 2.0;
        Y *= 2.0;
      }
    }
  }
  if (!converged) throw NonConvergence("diagonal SDP did not reach tolerance in " + std::to_string(it) + " iterations");

  // Rescale the PSD iterate so the unit-diagonal constraint holds exactly.
  RVector d = X.diagonal().real();
  for (Eigen::Index i = 0; i < n; ++i) d[i] = d[i] > 0.0 ? 1.0 / std::sqrt(d[i]) : 0.0;
  CMatrix V = d.asDiagonal() * X * d.asDiagonal();
  for (Eigen::Index i = 0; i < n; ++i) V(i, i) = 1.0;
  V = 0.5 * (V + V.adjoint()).eval();

  sol.V = V;
  sol.objective = (herm.matrix().cwiseProduct(V.conjugate())).sum().real();
  sol.iterations = it;
  sol.warm = {Z, Y};
  return sol;
}

RVector gaussian_randomize(const CMatrix& V, const PhaseQuadratic& f3, int trials, PhaseMode mode,
                           Rng& rng) {
  const Eigen::Index n = V.rows();
  if (n < 2 || V.cols() != n) throw ValidationError("gaussian_randomize: V must be square of size >= 2");
  if (trials < 1) throw ValidationError("gaussian_randomize: trials >= 1");
  Eigen::SelfAdjointEigenSolver<CMatrix> eig(0.5 * (V + V.adjoint()));
  // Eigenvalues at roundoff level would add sqrt(eps) noise to every sample.
  const RVector lam = eig.eigenvalues();
  const double floor = 64.0 * std::numeric_limits<double>::epsilon() * std::max(lam.maxCoeff(), 0.0) * n;
  const RVector scale = lam.unaryExpr([floor](double x) { return x > floor ? std::sqrt(x) : 0.0; });
  const CMatrix L = eig.eigenvectors() * scale.asDiagonal();

  RVector best;
  double best_value = -std::numeric_limits<double>::infinity();
  CVector xi(n);
  RVector phases(n - 1);
  for (int t = 0; t < trials; ++t) {
    for (Eigen::Index i = 0; i < n; ++i) xi[i] = rng.complex_normal();
    const CVector u = L * xi;
    const double ref = std::arg(u[n - 1]);
    for (Eigen::Index i = 0; i + 1 < n; ++i) {
      const double theta = wrap_phase(std::arg(u[i]) - ref);
      phases[i] = mode.continuous() ? theta : snap_to_grid(theta, mode.bits);
    }
    const double value = f3.value_of_phases(phases);
    if (value > best_value) {
      best_value = value;
      best = phases;
    }
  }
  return best;
}

RVector monotone_accept(const RVector& phi_old, const RVector& phi_candidate,
                        const std::function<double(const RVector&)>& f3) {
  return f3(phi_candidate) > f3(phi_old) ? phi_candidate : phi_old;
}

}  // namespace rissr
