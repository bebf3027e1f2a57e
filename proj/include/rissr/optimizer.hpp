#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "rissr/model.hpp"
#include "rissr/phase_quadratic.hpp"
#include "rissr/sdr.hpp"

namespace rissr {

enum class PhaseSolver { kElementwise, kSdr };

/// Quantity whose relative change stops the iterations. Both are traced.
enum class StopOn { kSurrogate, kObjective };

struct AOSettings {
  int max_iters = 200;
  double rel_tol = 1e-4;
  PhaseSolver phase_solver = PhaseSolver::kElementwise;
  int phase_sweeps = 1;  // element sweeps per outer iteration
  StopOn stop_on = StopOn::kSurrogate;
  SdrSettings sdr{};
  bool optimize_w = true;
  bool optimize_phases = true;
  bool optimize_beta = true;
  std::uint64_t seed = 1;  // initial phases and SDR randomization
  bool record_timing = true;
  std::optional<DecodeOrder> order;  // derived from the initial state when empty

  void validate() const;
};

/// The seven groups of terms of the rate surrogate. The log/linear/ratio
/// terms are in bits; together they equal the offloaded bits when eta
/// holds the current SINRs.
struct SurrogateTerms {
  double log_primary = 0.0;
  double linear_primary = 0.0;
  double log_secondary = 0.0;
  double linear_secondary = 0.0;
  double ratio_primary = 0.0;
  double ratio_secondary = 0.0;
  double local = 0.0;

  double total() const {
    return log_primary + linear_primary + log_secondary + linear_secondary + ratio_primary +
           ratio_secondary + local;
  }
};

SurrogateTerms surrogate_terms(const Problem& problem, const OptState& state);
double surrogate_f1(const Problem& problem, const OptState& state);

/// Weight of the primary-rate surrogate for symbol j: pi_j alpha T B / ln 2.
double primary_weight(const Problem& problem, std::size_t j);
/// Weight of the secondary-rate surrogate: alpha T B / (Q ln 2).
double secondary_weight(const Problem& problem);

/// Quadratic-transform lower bound of f1 for a given set of complex auxiliaries.
/// Equal to surrogate_f1 when `aux` is the closed-form optimum for `state`.
double quadratic_surrogate(const Problem& problem, const OptState& state, const RatioAux& aux);

/// eta at its optimum: the current SINRs.
RateAux update_eta(const Problem& problem, const OptState& state);

/// Closed-form quadratic-transform auxiliaries for the current state. The
/// receive-beamforming, phase and energy blocks each refresh them before
/// their own update, under the names gamma, xi and lambda.
RatioAux optimal_ratio_aux(const Problem& problem, const OptState& state);
inline RatioAux update_gamma(const Problem& p, const OptState& s) { return optimal_ratio_aux(p, s); }
inline RatioAux update_xi(const Problem& p, const OptState& s) { return optimal_ratio_aux(p, s); }
inline RatioAux update_lambda(const Problem& p, const OptState& s) { return optimal_ratio_aux(p, s); }

/// Part of f2 that depends on w_k:  2 Re{w^H a} - w^H B w.
struct BeamformerQuadratic {
  CVector a;
  CMatrix B;

  double value(const CVector& w) const {
    return 2.0 * w.dot(a).real() - w.dot(B * w).real();
  }
};

BeamformerQuadratic beamformer_quadratic(const Problem& problem, const OptState& state, int k);

/// Maximizer of 2 Re{w^H a} - w^H B w over ||w|| <= 1.
CVector maximize_in_unit_ball(const BeamformerQuadratic& q);

/// New receive beamformers from state.gamma. A user whose auxiliaries are all
/// zero keeps its previous beamformer.
CMatrix update_w(const Problem& problem, const OptState& state);

/// U_k and z_k of RIS k from state.xi (user k's own terms plus the
/// interference it causes at the decoders of users decoded before it).
PhaseQuadratic phase_quadratic(const Problem& problem, const OptState& state, int k);

/// Optimal angle for one element given A1 = z_n - sum_{i != n} u_ni v_i.
/// Continuous: arg(A1). Discrete: the grid angle nearest to arg(A1).
double element_phase(cdouble a1, PhaseMode mode, double previous);

/// One sweep over every element of every RIS.
std::vector<RVector> update_phases(const Problem& problem, const OptState& state);

/// f(beta) = -a beta + b sqrt(beta) + c cbrt(1 - beta): the part of f4 that depends on beta_k.
struct BetaCoefficients {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;

  double value(double beta) const {
    return -a * beta + b * std::sqrt(beta) + c * std::cbrt(1.0 - beta);
  }
};

BetaCoefficients beta_coefficients(const Problem& problem, const OptState& state, int k);

/// New energy partition from state.lambda.
RVector update_beta(const Problem& problem, const OptState& state);

/// Random phases, beta = 1/2, matched-filter beamformers.
OptState initial_state(const Problem& problem, std::uint64_t seed);

struct TraceRow {
  int iteration = 0;
  double surrogate = 0.0;
  double objective = 0.0;
  std::vector<double> R_p, R_s, local_bits;
  double wall_ms = 0.0;
};

struct Trace {
  std::vector<TraceRow> rows;
  bool converged = false;

  /// Number of completed AO iterations.
  int iterations() const { return rows.empty() ? 0 : rows.back().iteration; }
};

struct AOResult {
  OptState state;
  Trace trace;
  Metrics metrics;
  DecodeOrder order;
};

/// Alternates the eta, (gamma, W), (xi, Theta) and (lambda, beta) updates
/// until the relative change of f1 falls below rel_tol. The decoding order
/// is fixed for the whole run: settings.order if given, else derived from `init`.
AOResult run_ao(Problem problem, OptState init, const AOSettings& settings);

struct AlphaPoint {
  double alpha = 0.0;
  double sensed_user = 0.0;
  double sensed_ris = 0.0;
  double completed_user = 0.0;
  double completed_ris = 0.0;
  double sensed_total() const { return sensed_user + sensed_ris; }
  double completed_total() const { return completed_user + completed_ris; }
};

/// Largest grid alpha whose completed bits do not exceed the sensed bits,
/// plus the linearly interpolated crossing (NaN if the curves never cross).
struct Frontier {
  double grid_alpha = 0.0;
  double crossing = 0.0;
};

struct AlphaSweep {
  std::vector<AlphaPoint> points;
  Frontier users, ris, total;
};

Frontier feasibility_frontier(std::span<const double> alphas, std::span<const double> sensed,
                              std::span<const double> completed);

AlphaSweep evaluate_alpha_sweep(const SystemConfig& cfg, const ChannelSet& channels,
                                std::span<const double> alphas, const AOSettings& settings);

}  // namespace rissr
