#include "rissr/benchmarks.hpp"

#include <array>
#include <utility>

#include "rissr/errors.hpp"
#include "rissr/numerics.hpp"

namespace rissr {

namespace {

constexpr std::array<std::pair<Scheme, std::string_view>, 7> kNames{{
    {Scheme::kProposed, "proposed"},
    {Scheme::kProposedSdr, "proposed_sdr"},
    {Scheme::kWithoutSr, "without_sr"},
    {Scheme::kRandomPhase, "random_phase"},
    {Scheme::kWithoutRis, "without_ris"},
    {Scheme::kLocalOnly, "local_only"},
    {Scheme::kRandomBeta, "random_beta"},
}};

SchemeResult finish(Scheme scheme, AOResult&& r) {
  SchemeResult out;
  out.scheme = scheme;
  out.metrics = std::move(r.metrics);
  out.trace = std::move(r.trace);
  out.state = std::move(r.state);
  out.order = std::move(r.order);
  out.mean_beta = out.state.beta.size() ? out.state.beta.mean() : 0.0;
  return out;
}

SchemeResult run_from(Scheme scheme, const Problem& problem, OptState init, const AOSettings& settings) {
  return finish(scheme, run_ao(problem, std::move(init), settings));
}

}  // namespace

std::string scheme_name(Scheme s) {
  for (const auto& [id, name] : kNames) {
    if (id == s) return std::string(name);
  }
  return "unknown";
}

Scheme parse_scheme(std::string_view name) {
  for (const auto& [id, n] : kNames) {
    if (n == name) return id;
  }
  throw ValidationError("unknown scheme '" + std::string(name) + "'");
}

std::vector<Scheme> all_schemes() {
  std::vector<Scheme> v;
  for (const auto& entry : kNames) v.push_back(entry.first);
  return v;
}

CMatrix zero_forcing(const std::vector<CVector>& h_d) {
  if (h_d.empty()) throw EmptyInput("zero_forcing: no users");
  const Eigen::Index M = h_d.front().size();
  const Eigen::Index K = static_cast<Eigen::Index>(h_d.size());
  if (M < K) throw RankDeficient("zero forcing needs M >= K");
  CMatrix H(M, K);
  for (Eigen::Index k = 0; k < K; ++k) H.col(k) = h_d[k];
  const CMatrix gram = H.adjoint() * H;
  // Scale out the path gains before the singularity test.
  const RVector scale = gram.diagonal().real().cwiseSqrt();
  if ((scale.array() <= 0.0).any()) throw RankDeficient("zero forcing: a user has a zero channel");
  const RVector inv = scale.cwiseInverse();
  const CMatrix normalized = inv.asDiagonal() * gram * inv.asDiagonal();
  Eigen::SelfAdjointEigenSolver<CMatrix> eig(0.5 * (normalized + normalized.adjoint()));
  if (eig.eigenvalues().minCoeff() <= 1e-12 * eig.eigenvalues().maxCoeff()) {
    throw RankDeficient("zero forcing: H^H H is singular");
  }
  const CMatrix inv_norm = eig.eigenvectors() * eig.eigenvalues().cwiseInverse().asDiagonal() *
                           eig.eigenvectors().adjoint();
  CMatrix W = H * (inv.asDiagonal() * inv_norm * inv.asDiagonal());
  for (Eigen::Index k = 0; k < K; ++k) W.col(k).normalize();
  return W;
}

ChannelSet without_reflection(const ChannelSet& channels) {
  ChannelSet c = channels;
  for (auto& h : c.h_r) h.setZero();
  return c;
}

RVector random_beta_draw(std::size_t users, std::uint64_t seed) {
  Rng rng(derive_seed(seed, {0xbe7a}));
  RVector beta(static_cast<Eigen::Index>(users));
  for (Eigen::Index k = 0; k < beta.size(); ++k) beta[k] = rng.uniform();
  return beta;
}

SchemeResult run_proposed(const SystemConfig& cfg, const ChannelSet& channels, const AOSettings& settings) {
  const Problem p = Problem::make(cfg, channels);
  AOSettings s = settings;
  s.phase_solver = PhaseSolver::kElementwise;
  return run_from(Scheme::kProposed, p, initial_state(p, s.seed), s);
}

SchemeResult run_proposed_sdr(const SystemConfig& cfg, const ChannelSet& channels, const AOSettings& settings) {
  const Problem p = Problem::make(cfg, channels);
  AOSettings s = settings;
  s.phase_solver = PhaseSolver::kSdr;
  return run_from(Scheme::kProposedSdr, p, initial_state(p, s.seed), s);
}

SchemeResult run_without_sr(const SystemConfig& cfg, const ChannelSet& channels, const AOSettings& settings) {
  const Problem p = Problem::make(cfg, channels, SignalModel::kAssistOnly);
  AOSettings s = settings;
  s.phase_solver = PhaseSolver::kElementwise;
  return run_from(Scheme::kWithoutSr, p, initial_state(p, s.seed), s);
}

SchemeResult run_random_phase(const SystemConfig& cfg, const ChannelSet& channels, const AOSettings& settings) {
  const Problem p = Problem::make(cfg, channels);
  AOSettings s = settings;
  s.optimize_phases = false;
  return run_from(Scheme::kRandomPhase, p, initial_state(p, s.seed), s);
}

SchemeResult run_without_ris(const SystemConfig& cfg, const ChannelSet& channels, const AOSettings& settings) {
  const Problem p = Problem::make(cfg, without_reflection(channels));
  OptState init = initial_state(p, settings.seed);
  init.W = zero_forcing(p.channels.h_d);
  AOSettings s = settings;
  s.optimize_w = false;
  s.optimize_phases = false;
  return run_from(Scheme::kWithoutRis, p, std::move(init), s);
}

SchemeResult run_local_only(const SystemConfig& cfg, const ChannelSet& channels, const AOSettings& settings) {
  const Problem p = Problem::make(cfg, channels);
  OptState init = initial_state(p, settings.seed);
  init.beta.setZero();
  AOSettings s = settings;
  s.optimize_w = false;
  s.optimize_phases = false;
  s.optimize_beta = false;
  s.max_iters = 1;
  return run_from(Scheme::kLocalOnly, p, std::move(init), s);
}

SchemeResult run_random_beta(const SystemConfig& cfg, const ChannelSet& channels, const AOSettings& settings) {
  const Problem p = Problem::make(cfg, channels);
  OptState init = initial_state(p, settings.seed);
  init.beta = random_beta_draw(cfg.K(), settings.seed);
  AOSettings s = settings;
  s.optimize_beta = false;
  return run_from(Scheme::kRandomBeta, p, std::move(init), s);
}

SchemeResult run_scheme(Scheme scheme, const SystemConfig& cfg, const ChannelSet& channels,
                        const AOSettings& settings) {
  switch (scheme) {
    case Scheme::kProposed: return run_proposed(cfg, channels, settings);
    case Scheme::kProposedSdr: return run_proposed_sdr(cfg, channels, settings);
    case Scheme::kWithoutSr: return run_without_sr(cfg, channels, settings);
    case Scheme::kRandomPhase: return run_random_phase(cfg, channels, settings);
    case Scheme::kWithoutRis: return run_without_ris(cfg, channels, settings);
    case Scheme::kLocalOnly: return run_local_only(cfg, channels, settings);
    case Scheme::kRandomBeta: return run_random_beta(cfg, channels, settings);
  }
  throw ValidationError("unknown scheme");
}

}  // namespace rissr
