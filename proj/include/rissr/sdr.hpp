#pragma once

#include <functional>
#include <optional>

#include "rissr/numerics.hpp"
#include "rissr/phase_quadratic.hpp"
#include "rissr/types.hpp"

namespace rissr {

struct SdrSettings {
  double rho = 1.0;
  int max_iters = 2000;
  double tol = 1e-6;
  int trials = 200;
};

/// Q = [[-U, z], [z^H, 0]] so that v^H Q v = -phi^H U phi + 2 Re{rho* z^H phi}
/// for v = [phi; rho].
struct LiftedProblem {
  CMatrix Q;
};

LiftedProblem build_lifted(const CMatrix& U, const CVector& z);

/// State of the splitting iteration, reusable as a warm start.
struct SdpWarmStart {
  CMatrix Z;
  CMatrix Y;  // scaled dual
};

struct SdpSolution {
  CMatrix V;  // PSD with unit diagonal
  double objective = 0.0;  // tr(Q V)
  int iterations = 0;
  SdpWarmStart warm;
};

/// max tr(Q V) subject to V PSD and diag(V) = 1, by ADMM between the
/// unit-diagonal affine set and the PSD cone. Throws NonConvergence if the
/// residuals exceed tol after max_iters.
SdpSolution solve_diag_sdp(const LiftedProblem& lp, const SdrSettings& settings,
                           const SdpWarmStart* warm = nullptr);

/// Draws `trials` samples u ~ CN(0, V), de-rotates by the phase of the last
/// entry, projects to unit modulus (or to the b-bit grid) and returns the
/// phases of the sample with the largest f3.
RVector gaussian_randomize(const CMatrix& V, const PhaseQuadratic& f3, int trials, PhaseMode mode,
                           Rng& rng);

/// The candidate if it strictly improves f3, otherwise the old phases.
RVector monotone_accept(const RVector& phi_old, const RVector& phi_candidate,
                        const std::function<double(const RVector&)>& f3);

}  // namespace rissr
