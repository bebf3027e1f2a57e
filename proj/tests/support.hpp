// Independent reference computations and instance generators for the tests.
// Everything here is written with plain loops over std::complex so that the
// library's Eigen-based code paths are checked against a second derivation.
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "rissr/channels.hpp"
#include "rissr/model.hpp"
#include "rissr/optimizer.hpp"

namespace oracle {

using cd = std::complex<double>;

inline cd inner(const rissr::CVector& w, const rissr::CVector& h) {
  cd s = 0.0;
  for (Eigen::Index m = 0; m < w.size(); ++m) s += std::conj(w[m]) * h[m];
  return s;
}

inline rissr::CVector reflected(const rissr::CMatrix& G, const rissr::RVector& theta,
                                const rissr::CVector& h_r) {
  rissr::CVector b = rissr::CVector::Zero(G.cols());
  for (Eigen::Index m = 0; m < G.cols(); ++m) {
    for (Eigen::Index n = 0; n < G.rows(); ++n) {
      b[m] += std::conj(G(n, m)) * std::exp(cd(0.0, theta[n])) * h_r[n];
    }
  }
  return b;
}

struct Evaluation {
  std::vector<double> power, freq, sinr_s, r_p, r_s, R_p, R_s, noise;
  std::vector<std::vector<double>> sinr_p;  // [k][j], j over the symbol points
  std::vector<int> rank;
  double objective = 0.0;
  double offloaded = 0.0;  // bits sent over the air (primary + secondary)
  double local = 0.0;
};

/// Full evaluation of the system from its definition. `rank` gives the
/// decoding position of every user (smaller is decoded first).
inline Evaluation evaluate(const rissr::SystemConfig& cfg, const rissr::ChannelSet& ch,
                           const rissr::OptState& s, bool symbiotic, const std::vector<int>& rank) {
  const std::size_t K = cfg.K();
  const double T = cfg.cycle;
  const double a = cfg.alpha;
  const std::vector<std::pair<double, double>> points =
      symbiotic ? std::vector<std::pair<double, double>>{{-1.0, 0.5}, {1.0, 0.5}}
                : std::vector<std::pair<double, double>>{{1.0, 1.0}};
  Evaluation e;
  e.rank = rank;
  std::vector<rissr::CVector> b(K);
  for (std::size_t k = 0; k < K; ++k) {
    const double sensed = (1.0 - a) * T * cfg.user_sense_rate[k];
    const double e_off = cfg.energy_max[k] - cfg.sense_cost[k] * sensed;
    const double dur = a * T;
    e.power.push_back(dur > 0 ? s.beta[k] * e_off / dur : 0.0);
    e.freq.push_back(dur > 0 ? std::cbrt((1.0 - s.beta[k]) * e_off / (dur * cfg.kappa)) : 0.0);
    b[k] = reflected(ch.G[k], s.phases[k], ch.h_r[k]);
  }
  for (std::size_t k = 0; k < K; ++k) {
    const rissr::CVector w = s.W.col(static_cast<Eigen::Index>(k));
    double n = cfg.noise_power * w.squaredNorm();
    for (std::size_t i = 0; i < K; ++i) {
      if (rank[i] <= rank[k]) continue;
      for (const auto& [c, pi] : points) n += e.power[i] * pi * std::norm(inner(w, ch.h_d[i] + c * b[i]));
    }
    e.noise.push_back(n);
    std::vector<double> sp;
    double rate = 0.0;
    for (const auto& [c, pi] : points) {
      const double sinr = n > 0 ? e.power[k] * std::norm(inner(w, ch.h_d[k] + c * b[k])) / n : 0.0;
      sp.push_back(sinr);
      rate += pi * cfg.bandwidth * std::log2(1.0 + sinr);
    }
    e.sinr_p.push_back(sp);
    const double ss = symbiotic && n > 0 ? cfg.Q() * e.power[k] * std::norm(inner(w, b[k])) / n : 0.0;
    e.sinr_s.push_back(ss);
    e.r_p.push_back(rate);
    e.r_s.push_back(cfg.bandwidth / cfg.Q() * std::log2(1.0 + ss));
    const double dur = a * T;
    const double local = e.freq[k] * dur / cfg.cycles_per_bit;
    e.R_p.push_back(e.r_p[k] * dur + local);
    e.R_s.push_back(e.r_s[k] * dur);
    e.objective += e.R_p[k] + e.R_s[k];
    e.offloaded += (e.r_p[k] + e.r_s[k]) * dur;
    e.local += local;
  }
  return e;
}

/// Rate surrogate from its definition for arbitrary eta.
inline double f1(const rissr::Problem& p, const rissr::OptState& s, const rissr::RateAux& eta) {
  const auto& cfg = p.cfg;
  const bool sym = p.has_secondary();
  const Evaluation ev = evaluate(cfg, p.channels, s, sym, p.order.rank);
  const double dur = cfg.alpha * cfg.cycle;
  const double ln2 = std::log(2.0);
  const std::vector<double> pis = sym ? std::vector<double>{0.5, 0.5} : std::vector<double>{1.0};
  const auto term = [](double e, double g) { return std::log(1.0 + e) - e + (1.0 + e) * g / (1.0 + g); };
  double f = ev.local;
  for (std::size_t k = 0; k < cfg.K(); ++k) {
    for (std::size_t j = 0; j < pis.size(); ++j) {
      f += pis[j] * dur * cfg.bandwidth / ln2 * term(eta.primary[k][j], ev.sinr_p[k][j]);
    }
    if (sym) f += dur * cfg.bandwidth / (cfg.Q() * ln2) * term(eta.secondary[k], ev.sinr_s[k]);
  }
  return f;
}

inline std::vector<int> identity_rank(std::size_t k) {
  std::vector<int> r(k);
  std::iota(r.begin(), r.end(), 0);
  return r;
}

inline rissr::CVector random_unit_ball(std::mt19937_64& g, Eigen::Index m) {
  std::normal_distribution<double> nd;
  std::uniform_real_distribution<double> ud;
  rissr::CVector v(m);
  for (Eigen::Index i = 0; i < m; ++i) v[i] = cd(nd(g), nd(g));
  v.normalize();
  return v * std::pow(ud(g), 1.0 / (2.0 * static_cast<double>(m)));
}

struct Instance {
  rissr::SystemConfig cfg;
  rissr::ChannelSet channels;
  rissr::OptState state;
};

/// Physical channels from the reference geometry with a random feasible state.
inline Instance physical(std::uint64_t seed, int K = 4, int M = 4, int N = 8) {
  Instance in;
  in.cfg.set_users(K);
  in.cfg.antennas = M;
  in.cfg.elements = N;
  in.channels = rissr::sample_channels(rissr::Geometry::reference(K), rissr::FadingParams{}, in.cfg, seed);
  std::mt19937_64 g(seed * 7919 + 3);
  std::uniform_real_distribution<double> ud;
  std::normal_distribution<double> nd;
  in.state = rissr::OptState{};
  in.state.W = rissr::CMatrix(M, K);
  for (int k = 0; k < K; ++k) {
    for (int m = 0; m < M; ++m) in.state.W(m, k) = cd(nd(g), nd(g));
    in.state.W.col(k) *= (0.2 + 0.8 * ud(g)) / in.state.W.col(k).norm();
  }
  in.state.phases.assign(K, rissr::RVector(N));
  for (auto& th : in.state.phases) {
    for (int n = 0; n < N; ++n) th[n] = rissr::kTwoPi * ud(g);
  }
  in.state.beta = rissr::RVector(K);
  for (int k = 0; k < K; ++k) in.state.beta[k] = 0.05 + 0.9 * ud(g);
  in.state.eta = rissr::RateAux::zeros(K);
  in.state.gamma = in.state.xi = in.state.lambda = rissr::RatioAux::zeros(K);
  return in;
}

/// Like `physical`, but with i.i.d. Rayleigh channels scaled so that the
/// reflected path is comparable to the direct one.
inline Instance synthetic(std::uint64_t seed, int K = 3, int M = 3, int N = 6) {
  Instance in = physical(seed, K, M, N);
  std::mt19937_64 g(seed * 104729 + 11);
  std::normal_distribution<double> nd;
  const auto cn = [&](double var) { return cd(nd(g), nd(g)) * std::sqrt(var / 2.0); };
  for (int k = 0; k < K; ++k) {
    for (int m = 0; m < M; ++m) in.channels.h_d[k][m] = cn(1e-8);
    for (int n = 0; n < N; ++n) in.channels.h_r[k][n] = cn(1e-4);
    for (int n = 0; n < N; ++n) {
      for (int m = 0; m < M; ++m) in.channels.G[k](n, m) = cn(1e-4 / N);
    }
  }
  return in;
}

}  // namespace oracle
