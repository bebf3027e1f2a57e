#include "rissr/optimizer.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <optional>

#include "rissr/errors.hpp"
#include "rissr/numerics.hpp"

namespace rissr {

namespace {

constexpr double kLn2 = 0.69314718055994530942;

double ratio_or_zero(double num, double den) { return den > 0.0 ? num / den : 0.0; }

// sqrt(weight * (1 + eta)) multiplying the numerator inside the quadratic transform.
double primary_coeff(const Problem& p, const OptState& s, std::size_t k, std::size_t j) {
  return std::sqrt(primary_weight(p, j) * (1.0 + s.eta.primary[k][j]));
}

double secondary_coeff(const Problem& p, const OptState& s, std::size_t k) {
  return std::sqrt(secondary_weight(p) * p.cfg.Q() * (1.0 + s.eta.secondary[k]));
}

// Sum over auxiliaries of user k weighting its denominators.
double denominator_weight(const Problem& p, const RatioAux& aux, std::size_t k) {
  double w = 0.0;
  for (std::size_t j = 0; j < p.symbols().size(); ++j) w += std::norm(aux.primary[k][j]);
  if (p.has_secondary()) w += std::norm(aux.secondary[k]);
  return w;
}

struct SymbolMoments {
  double first = 0.0;   // E[c]
  double second = 0.0;  // E[c^2]
};

SymbolMoments moments(std::span<const SymbolPoint> symbols) {
  SymbolMoments m;
  for (const auto& s : symbols) {
    m.first += s.weight * s.c;
    m.second += s.weight * s.c * s.c;
  }
  return m;
}

double local_term(const Problem& p, const OptState& s, std::size_t k) {
  const double duration = p.processing_time();
  if (duration <= 0.0) return 0.0;
  return duration / p.cfg.cycles_per_bit *
         local_frequency(s.beta[k], p.energy.offload[k], p.cfg);
}

double elapsed_ms(std::chrono::steady_clock::time_point since) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - since).count();
}

}  // namespace

void AOSettings::validate() const {
  if (max_iters < 1) throw ValidationError("max_iters >= 1");
  if (phase_sweeps < 1) throw ValidationError("phase_sweeps >= 1");
  if (!(rel_tol > 0.0)) throw ValidationError("rel_tol > 0");
  if (sdr.trials < 1) throw ValidationError("sdr trials >= 1");
  if (sdr.max_iters < 1 || !(sdr.tol > 0.0) || !(sdr.rho > 0.0)) {
    throw ValidationError("sdr settings need max_iters >= 1, tol > 0, rho > 0");
  }
}

double primary_weight(const Problem& problem, std::size_t j) {
  return problem.symbols()[j].weight * problem.processing_time() * problem.cfg.bandwidth / kLn2;
}

double secondary_weight(const Problem& problem) {
  return problem.processing_time() * problem.cfg.bandwidth / (problem.cfg.Q() * kLn2);
}

SurrogateTerms surrogate_terms(const Problem& problem, const OptState& state) {
  SurrogateTerms t;
  if (problem.processing_time() <= 0.0) return t;
  const Links l = evaluate_links(problem, state);
  const double Q = problem.cfg.Q();
  for (std::size_t k = 0; k < problem.cfg.K(); ++k) {
    const double n = l.noise[k];
    for (std::size_t j = 0; j < problem.symbols().size(); ++j) {
      const double wp = primary_weight(problem, j);
      const double eta = state.eta.primary[k][j];
      const double signal = std::norm(l.x[k][j]);
      t.log_primary += wp * std::log1p(eta);
      t.linear_primary -= wp * eta;
      t.ratio_primary += wp * (1.0 + eta) * ratio_or_zero(signal, signal + n);
    }
    if (problem.has_secondary()) {
      const double ws = secondary_weight(problem);
      const double eta = state.eta.secondary[k];
      const double signal = Q * std::norm(l.y[k]);
      t.log_secondary += ws * std::log1p(eta);
      t.linear_secondary -= ws * eta;
      t.ratio_secondary += ws * (1.0 + eta) * ratio_or_zero(signal, signal + n);
    }
    t.local += local_term(problem, state, k);
  }
  return t;
}

double surrogate_f1(const Problem& problem, const OptState& state) {
  return surrogate_terms(problem, state).total();
}

double quadratic_surrogate(const Problem& problem, const OptState& state, const RatioAux& aux) {
  SurrogateTerms t = surrogate_terms(problem, state);
  t.ratio_primary = 0.0;
  t.ratio_secondary = 0.0;
  if (problem.processing_time() <= 0.0) return t.total();
  const Links l = evaluate_links(problem, state);
  const double Q = problem.cfg.Q();
  for (std::size_t k = 0; k < problem.cfg.K(); ++k) {
    const double n = l.noise[k];
    for (std::size_t j = 0; j < problem.symbols().size(); ++j) {
      const cdouble g = aux.primary[k][j];
      const cdouble x = l.x[k][j];
      t.ratio_primary += 2.0 * (std::conj(g) * primary_coeff(problem, state, k, j) * x).real() -
                         std::norm(g) * (std::norm(x) + n);
    }
    if (problem.has_secondary()) {
      const cdouble g = aux.secondary[k];
      const cdouble y = l.y[k];
      t.ratio_secondary += 2.0 * (std::conj(g) * secondary_coeff(problem, state, k) * y).real() -
                           std::norm(g) * (Q * std::norm(y) + n);
    }
  }
  return t.total();
}

RateAux update_eta(const Problem& problem, const OptState& state) {
  RateAux eta = RateAux::zeros(problem.cfg.K());
  if (problem.processing_time() <= 0.0) return eta;
  const Links l = evaluate_links(problem, state);
  for (std::size_t k = 0; k < problem.cfg.K(); ++k) {
    for (std::size_t j = 0; j < problem.symbols().size(); ++j) {
      eta.primary[k][j] = ratio_or_zero(std::norm(l.x[k][j]), l.noise[k]);
    }
    if (problem.has_secondary()) {
      eta.secondary[k] = ratio_or_zero(problem.cfg.Q() * std::norm(l.y[k]), l.noise[k]);
    }
  }
  return eta;
}

RatioAux optimal_ratio_aux(const Problem& problem, const OptState& state) {
  RatioAux aux = RatioAux::zeros(problem.cfg.K());
  if (problem.processing_time() <= 0.0) return aux;
  const Links l = evaluate_links(problem, state);
  const double Q = problem.cfg.Q();
  for (std::size_t k = 0; k < problem.cfg.K(); ++k) {
    const double n = l.noise[k];
    for (std::size_t j = 0; j < problem.symbols().size(); ++j) {
      const cdouble x = l.x[k][j];
      const double den = std::norm(x) + n;
      if (den > 0.0) aux.primary[k][j] = primary_coeff(problem, state, k, j) * x / den;
    }
    if (problem.has_secondary()) {
      const cdouble y = l.y[k];
      const double den = Q * std::norm(y) + n;
      if (den > 0.0) aux.secondary[k] = secondary_coeff(problem, state, k) * y / den;
    }
  }
  return aux;
}

BeamformerQuadratic beamformer_quadratic(const Problem& problem, const OptState& state, int k) {
  const auto& ch = problem.channels;
  const std::size_t M = problem.cfg.M();
  const auto symbols = problem.symbols();
  const auto b = backscatter_channels(ch, state.phases);
  const auto p = transmit_powers(problem, state.beta);
  const double amp = std::sqrt(p[k]);

  CMatrix delta = problem.cfg.noise_power * CMatrix::Identity(M, M);
  for (int i = 0; i < static_cast<int>(ch.K()); ++i) {
    if (!problem.order.decoded_after(i, k)) continue;
    for (const auto& s : symbols) {
      const CVector h = ch.h_d[i] + s.c * b[i];
      delta += p[i] * s.weight * h * h.adjoint();
    }
  }

  BeamformerQuadratic q{CVector::Zero(M), CMatrix::Zero(M, M)};
  for (std::size_t j = 0; j < symbols.size(); ++j) {
    const cdouble g = state.gamma.primary[k][j];
    const CVector h = ch.h_d[k] + symbols[j].c * b[k];
    q.a += std::conj(g) * primary_coeff(problem, state, k, j) * amp * h;
    q.B += std::norm(g) * (p[k] * h * h.adjoint() + delta);
  }
  if (problem.has_secondary()) {
    const cdouble g = state.gamma.secondary[k];
    q.a += std::conj(g) * secondary_coeff(problem, state, k) * amp * b[k];
    q.B += std::norm(g) * (problem.cfg.Q() * p[k] * b[k] * b[k].adjoint() + delta);
  }
  q.B = 0.5 * (q.B + q.B.adjoint()).eval();
  return q;
}

CVector maximize_in_unit_ball(const BeamformerQuadratic& q) {
  const HermitianMatrix B(q.B);
  CVector x = solve_hpd(B, q.a);
  if (x.norm() <= 1.0) return x;

  // Boundary solution (B + mu I)^{-1} a with ||.|| = 1, mu > 0.
  Eigen::SelfAdjointEigenSolver<CMatrix> eig(B.matrix());
  const RVector lambda = eig.eigenvalues().cwiseMax(0.0);
  const CVector c = eig.eigenvectors().adjoint() * q.a;
  const auto norm_at = [&](double mu) {
    return (c.array().abs2() / (lambda.array() + mu).square()).sum();
  };
  double lo = 0.0;
  double hi = q.a.norm();
  for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (norm_at(mid) > 1.0 ? lo : hi) = mid;
  }
  CVector scaled = c.array() / (lambda.array() + hi);
  x = eig.eigenvectors() * scaled;
  const double nrm = x.norm();
  if (nrm > 1.0) x /= nrm;
  return x;
}

CMatrix update_w(const Problem& problem, const OptState& state) {
  CMatrix W = state.W;
  for (int k = 0; k < static_cast<int>(problem.cfg.K()); ++k) {
    const BeamformerQuadratic q = beamformer_quadratic(problem, state, k);
    if (q.a.squaredNorm() == 0.0) continue;
    CVector w;
    try {
      w = maximize_in_unit_ball(q);
    } catch (const SingularMatrix&) {
      continue;
    }
    const CVector w_old = state.W.col(k);
    if (q.value(w) >= q.value(w_old)) W.col(k) = w;
  }
  return W;
}

PhaseQuadratic phase_quadratic(const Problem& problem, const OptState& state, int k) {
  const auto& ch = problem.channels;
  const std::size_t N = problem.cfg.N();
  const auto symbols = problem.symbols();
  const SymbolMoments mom = moments(symbols);
  const auto p = transmit_powers(problem, state.beta);
  const double amp = std::sqrt(p[k]);
  const RatioAux& xi = state.xi;

  // Row vector mapping RIS-k reflections to decoder `dec`: amp * conj(G_k w_dec) .* h_r,k.
  const auto reflect_row = [&](int dec) -> CVector {
    const CVector gw = ch.G[k] * state.W.col(dec);
    return amp * gw.conjugate().cwiseProduct(ch.h_r[k]);
  };

  PhaseQuadratic pq{CMatrix::Zero(N, N), CVector::Zero(N)};

  const CVector r = reflect_row(k);
  const cdouble hd = amp * state.W.col(k).dot(ch.h_d[k]);
  double own = 0.0;
  cdouble lin = 0.0;
  for (std::size_t j = 0; j < symbols.size(); ++j) {
    const cdouble g = xi.primary[k][j];
    own += std::norm(g) * symbols[j].c * symbols[j].c;
    lin += symbols[j].c * (g * primary_coeff(problem, state, k, j) - std::norm(g) * hd);
  }
  if (problem.has_secondary()) {
    own += problem.cfg.Q() * std::norm(xi.secondary[k]);
    lin += xi.secondary[k] * secondary_coeff(problem, state, k);
  }
  pq.U += own * r.conjugate() * r.transpose();
  pq.z += lin * r.conjugate();

  // RIS k reflects user k's signal into the decoders of users decoded before k.
  for (int i = 0; i < static_cast<int>(ch.K()); ++i) {
    if (!problem.order.decoded_after(k, i)) continue;
    const double wi = denominator_weight(problem, xi, static_cast<std::size_t>(i));
    if (wi == 0.0) continue;
    const CVector s = reflect_row(i);
    const cdouble d = amp * state.W.col(i).dot(ch.h_d[k]);
    pq.U += wi * mom.second * s.conjugate() * s.transpose();
    pq.z -= wi * mom.first * d * s.conjugate();
  }
  pq.U = 0.5 * (pq.U + pq.U.adjoint()).eval();
  return pq;
}

double element_phase(cdouble a1, PhaseMode mode, double previous) {
  if (std::abs(a1) == 0.0) return previous;
  const double angle = wrap_phase(std::arg(a1));
  return mode.continuous() ? angle : snap_to_grid(angle, mode.bits);
}

std::vector<RVector> update_phases(const Problem& problem, const OptState& state) {
  std::vector<RVector> phases = state.phases;
  const PhaseMode mode = problem.cfg.phase_mode;
  for (int k = 0; k < static_cast<int>(problem.cfg.K()); ++k) {
    const PhaseQuadratic pq = phase_quadratic(problem, state, k);
    RVector& theta = phases[k];
    CVector v = unit_modulus(theta);
    CVector t = pq.U * v;
    for (Eigen::Index n = 0; n < v.size(); ++n) {
      const cdouble a1 = pq.z[n] - (t[n] - pq.U(n, n) * v[n]);
      theta[n] = element_phase(a1, mode, theta[n]);
      const cdouble v_new = std::polar(1.0, theta[n]);
      t += pq.U.col(n) * (v_new - v[n]);
      v[n] = v_new;
    }
  }
  return phases;
}

BetaCoefficients beta_coefficients(const Problem& problem, const OptState& state, int k) {
  BetaCoefficients coef;
  const double duration = problem.processing_time();
  const double e_off = problem.energy.offload[k];
  if (duration <= 0.0 || e_off <= 0.0) return coef;

  const auto& ch = problem.channels;
  const auto symbols = problem.symbols();
  const auto b = backscatter_channels(ch, state.phases);
  const double unit_amp = std::sqrt(e_off / duration);  // sqrt(p_k) = sqrt(beta) * unit_amp
  const CVector w = state.W.col(k);
  const RatioAux& lam = state.lambda;

  cdouble linear = 0.0;
  for (std::size_t j = 0; j < symbols.size(); ++j) {
    const cdouble g = unit_amp * w.dot(ch.h_d[k] + symbols[j].c * b[k]);
    coef.a += std::norm(lam.primary[k][j]) * std::norm(g);
    linear += std::conj(lam.primary[k][j]) * primary_coeff(problem, state, k, j) * g;
  }
  if (problem.has_secondary()) {
    const cdouble g = unit_amp * w.dot(b[k]);
    coef.a += problem.cfg.Q() * std::norm(lam.secondary[k]) * std::norm(g);
    linear += std::conj(lam.secondary[k]) * secondary_coeff(problem, state, k) * g;
  }
  for (int i = 0; i < static_cast<int>(ch.K()); ++i) {
    if (!problem.order.decoded_after(k, i)) continue;
    const double wi = denominator_weight(problem, lam, static_cast<std::size_t>(i));
    if (wi == 0.0) continue;
    const CVector wd = state.W.col(i);
    double gain = 0.0;
    for (const auto& s : symbols) gain += s.weight * std::norm(wd.dot(ch.h_d[k] + s.c * b[k]));
    coef.a += wi * unit_amp * unit_amp * gain;
  }
  coef.b = 2.0 * linear.real();
  coef.c = duration / problem.cfg.cycles_per_bit *
           std::cbrt(e_off / (duration * problem.cfg.kappa));
  return coef;
}

RVector update_beta(const Problem& problem, const OptState& state) {
  RVector beta = state.beta;
  for (int k = 0; k < static_cast<int>(problem.cfg.K()); ++k) {
    if (problem.processing_time() <= 0.0 || problem.energy.offload[k] <= 0.0) continue;
    const BetaCoefficients coef = beta_coefficients(problem, state, k);
    const auto f = [&](double x) { return coef.value(x); };
    const double best = maximize_concave_1d(f, 0.0, 1.0, 1e-7);
    if (f(best) >= f(beta[k])) beta[k] = best;
  }
  return beta;
}

OptState initial_state(const Problem& problem, std::uint64_t seed) {
  const std::size_t K = problem.cfg.K();
  const std::size_t M = problem.cfg.M();
  const std::size_t N = problem.cfg.N();
  const PhaseMode mode = problem.cfg.phase_mode;
  OptState s;
  Rng rng(derive_seed(seed, {0x1417}));
  s.phases.assign(K, RVector(N));
  for (auto& theta : s.phases) {
    for (Eigen::Index n = 0; n < theta.size(); ++n) {
      const double t = rng.uniform(0.0, kTwoPi);
      theta[n] = mode.continuous() ? wrap_phase(t) : snap_to_grid(t, mode.bits);
    }
  }
  s.beta = RVector::Constant(K, 0.5);
  s.W = CMatrix::Zero(M, K);
  const auto b = backscatter_channels(problem.channels, s.phases);
  for (std::size_t k = 0; k < K; ++k) {
    CVector w = problem.channels.h_d[k] + b[k];
    const double nrm = w.norm();
    if (nrm > 0.0) {
      w /= nrm;
    } else {
      w = CVector::Unit(M, 0);
    }
    s.W.col(k) = w;
  }
  s.eta = RateAux::zeros(K);
  s.gamma = s.xi = s.lambda = RatioAux::zeros(K);
  return s;
}

namespace {

TraceRow make_row(const Problem& problem, const OptState& state, int iteration, double surrogate,
                  double wall_ms) {
  const Metrics m = completed_bits(problem, state);
  return TraceRow{iteration, surrogate, m.objective, m.R_p, m.R_s, m.local_bits, wall_ms};
}

std::vector<RVector> sdr_phase_block(const Problem& problem, const OptState& state,
                                     const SdrSettings& sdr, Rng& rng,
                                     std::vector<std::optional<SdpWarmStart>>& warm) {
  std::vector<RVector> phases = state.phases;
  for (int k = 0; k < static_cast<int>(problem.cfg.K()); ++k) {
    const PhaseQuadratic pq = phase_quadratic(problem, state, k);
    const LiftedProblem lp = build_lifted(pq.U, pq.z);
    SdpSolution sol;
    try {
      sol = solve_diag_sdp(lp, sdr, warm[k] ? &*warm[k] : nullptr);
    } catch (const NonConvergence&) {
      warm[k].reset();
      continue;
    }
    warm[k] = sol.warm;
    const RVector candidate =
        gaussian_randomize(sol.V, pq, sdr.trials, problem.cfg.phase_mode, rng);
    phases[k] = monotone_accept(phases[k], candidate,
                                [&](const RVector& th) { return pq.value_of_phases(th); });
  }
  return phases;
}

}  // namespace

AOResult run_ao(Problem problem, OptState state, const AOSettings& settings) {
  settings.validate();
  const auto start = std::chrono::steady_clock::now();
  const auto clock = [&] { return settings.record_timing ? elapsed_ms(start) : 0.0; };

  if (settings.order) {
    if (settings.order->order.size() != problem.cfg.K()) throw ValidationError("decode order size != K");
    problem.order = *settings.order;
  } else {
    const auto b = backscatter_channels(problem.channels, state.phases);
    const auto p = transmit_powers(problem, state.beta);
    problem.order = decode_order(problem.channels, b, p, problem.model);
  }

  Rng rng(derive_seed(settings.seed, {0x5d2}));
  std::vector<std::optional<SdpWarmStart>> warm(problem.cfg.K());

  AOResult result;
  state.eta = update_eta(problem, state);
  result.trace.rows.push_back(make_row(problem, state, 0, surrogate_f1(problem, state), clock()));
  const auto watched = [&](const TraceRow& row) {
    return settings.stop_on == StopOn::kSurrogate ? row.surrogate : row.objective;
  };
  double previous = watched(result.trace.rows.back());

  for (int it = 1; it <= settings.max_iters; ++it) {
    state.eta = update_eta(problem, state);
    if (settings.optimize_w) {
      state.gamma = update_gamma(problem, state);
      state.W = update_w(problem, state);
    }
    if (settings.optimize_phases) {
      state.xi = update_xi(problem, state);
      if (settings.phase_solver == PhaseSolver::kSdr) {
        state.phases = sdr_phase_block(problem, state, settings.sdr, rng, warm);
      } else {
        for (int s = 0; s < settings.phase_sweeps; ++s) state.phases = update_phases(problem, state);
      }
    }
    if (settings.optimize_beta) {
      state.lambda = update_lambda(problem, state);
      state.beta = update_beta(problem, state);
    }
    result.trace.rows.push_back(make_row(problem, state, it, surrogate_f1(problem, state), clock()));
    const double current = watched(result.trace.rows.back());
    const double scale = std::max(std::abs(previous), std::numeric_limits<double>::min());
    if (std::abs(current - previous) <= settings.rel_tol * scale) {
      result.trace.converged = true;
      break;
    }
    previous = current;
  }

  result.metrics = completed_bits(problem, state);
  result.order = problem.order;
  result.state = std::move(state);
  return result;
}

Frontier feasibility_frontier(std::span<const double> alphas, std::span<const double> sensed,
                              std::span<const double> completed) {
  Frontier f{std::numeric_limits<double>::quiet_NaN(), std::numeric_limits<double>::quiet_NaN()};
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    if (completed[i] <= sensed[i]) f.grid_alpha = alphas[i];
  }
  for (std::size_t i = 0; i + 1 < alphas.size(); ++i) {
    const double d0 = completed[i] - sensed[i];
    const double d1 = completed[i + 1] - sensed[i + 1];
    if (d0 <= 0.0 && d1 > 0.0) {
      f.crossing = alphas[i] + (alphas[i + 1] - alphas[i]) * (-d0) / (d1 - d0);
      break;
    }
  }
  return f;
}

AlphaSweep evaluate_alpha_sweep(const SystemConfig& cfg, const ChannelSet& channels,
                                std::span<const double> alphas, const AOSettings& settings) {
  AlphaSweep sweep;
  for (double alpha : alphas) {
    SystemConfig c = cfg;
    c.alpha = alpha;
    Problem problem = Problem::make(c, channels);
    const AOResult r = run_ao(problem, initial_state(problem, settings.seed), settings);
    AlphaPoint pt;
    pt.alpha = alpha;
    pt.sensed_user = r.metrics.sum_M_p();
    pt.sensed_ris = r.metrics.sum_M_s();
    pt.completed_user = r.metrics.sum_R_p();
    pt.completed_ris = r.metrics.sum_R_s();
    sweep.points.push_back(pt);
  }
  std::vector<double> su, sr, st, cu, cr, ct;
  for (const auto& p : sweep.points) {
    su.push_back(p.sensed_user);
    sr.push_back(p.sensed_ris);
    st.push_back(p.sensed_total());
    cu.push_back(p.completed_user);
    cr.push_back(p.completed_ris);
    ct.push_back(p.completed_total());
  }
  sweep.users = feasibility_frontier(alphas, su, cu);
  sweep.ris = feasibility_frontier(alphas, sr, cr);
  sweep.total = feasibility_frontier(alphas, st, ct);
  return sweep;
}

}  // namespace rissr
