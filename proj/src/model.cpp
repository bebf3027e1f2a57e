#include "rissr/model.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <numeric>
#include <string>

#include "rissr/errors.hpp"

namespace rissr {

namespace {

constexpr std::array<SymbolPoint, 2> kSymbioticPoints{{{-1.0, 0.5}, {1.0, 0.5}}};
constexpr std::array<SymbolPoint, 1> kAssistPoints{{{1.0, 1.0}}};

double sum(const std::vector<double>& v) { return std::accumulate(v.begin(), v.end(), 0.0); }

void require(bool ok, const std::string& what) {
  if (!ok) throw ValidationError(what);
}

}  // namespace

PhaseMode PhaseMode::parse(std::string_view text) {
  if (text == "continuous") return PhaseMode{0};
  if (text.size() >= 2 && text.front() == 'b') {
    int bits = 0;
    auto [ptr, ec] = std::from_chars(text.data() + 1, text.data() + text.size(), bits);
    if (ec == std::errc() && ptr == text.data() + text.size() && bits >= 1 && bits <= 16) {
      return PhaseMode{bits};
    }
  }
  throw ValidationError("phase mode must be 'continuous' or 'b<bits>' with 1 <= bits <= 16, got '" +
                        std::string(text) + "'");
}

std::string PhaseMode::name() const {
  return continuous() ? std::string("continuous") : "b" + std::to_string(bits);
}

void SystemConfig::set_users(int k) {
  users = k;
  for (auto* v : {&user_sense_rate, &ris_sense_rate, &sense_cost, &energy_max}) {
    const double fill = v->empty() ? 0.0 : v->front();
    v->assign(static_cast<std::size_t>(std::max(k, 0)), fill);
  }
}

void SystemConfig::set_energy_max(double joules) { energy_max.assign(K(), joules); }

void SystemConfig::validate() const {
  require(users >= 1, "K >= 1");
  require(antennas >= 1, "M >= 1");
  require(elements >= 1, "N >= 1");
  require(symbols_per_secondary >= 2, "Q >= 2");
  require(bandwidth > 0.0, "B > 0");
  require(cycle > 0.0, "T > 0");
  require(noise_power > 0.0, "noise_power > 0");
  require(alpha >= 0.0 && alpha <= 1.0, "0 <= alpha <= 1");
  require(kappa > 0.0, "kappa_l > 0");
  require(cycles_per_bit >= 1.0, "C >= 1");
  require(phase_mode.bits >= 0 && phase_mode.bits <= 16, "phase bits in [0, 16]");
  const auto per_user = [&](const std::vector<double>& v, const char* name) {
    require(v.size() == K(), std::string(name) + " has one entry per user");
    for (double x : v) require(std::isfinite(x) && x >= 0.0, std::string(name) + " >= 0");
  };
  per_user(user_sense_rate, "v_p");
  per_user(ris_sense_rate, "v_s");
  per_user(sense_cost, "p_sense");
  per_user(energy_max, "E_max");
}

void ChannelSet::validate(const SystemConfig& cfg) const {
  require(h_d.size() == cfg.K() && h_r.size() == cfg.K() && G.size() == cfg.K(),
          "channel set has one entry per user");
  for (std::size_t k = 0; k < cfg.K(); ++k) {
    require(static_cast<std::size_t>(h_d[k].size()) == cfg.M(), "h_d has length M");
    require(static_cast<std::size_t>(h_r[k].size()) == cfg.N(), "h_r has length N");
    require(static_cast<std::size_t>(G[k].rows()) == cfg.N() &&
                static_cast<std::size_t>(G[k].cols()) == cfg.M(),
            "G is N x M");
    require(h_d[k].allFinite() && h_r[k].allFinite() && G[k].allFinite(),
            "channel entries are finite");
  }
}

DecodeOrder DecodeOrder::identity(std::size_t k) {
  DecodeOrder d;
  d.order.resize(k);
  std::iota(d.order.begin(), d.order.end(), 0);
  d.rank = d.order;
  return d;
}

RateAux RateAux::zeros(std::size_t k) {
  return RateAux{std::vector<std::array<double, 2>>(k, {0.0, 0.0}), std::vector<double>(k, 0.0)};
}

RatioAux RatioAux::zeros(std::size_t k) {
  return RatioAux{std::vector<std::array<cdouble, 2>>(k, {cdouble{}, cdouble{}}),
                  std::vector<cdouble>(k, cdouble{})};
}

double Metrics::sum_R_p() const { return sum(R_p); }
double Metrics::sum_R_s() const { return sum(R_s); }
double Metrics::sum_local() const { return sum(local_bits); }
double Metrics::sum_M_p() const { return sum(M_p); }
double Metrics::sum_M_s() const { return sum(M_s); }

std::span<const SymbolPoint> symbol_points(SignalModel model) {
  if (model == SignalModel::kSymbiotic) return kSymbioticPoints;
  return kAssistPoints;
}

SensedData sensed_data(const SystemConfig& cfg) {
  SensedData s;
  const double sensing_time = (1.0 - cfg.alpha) * cfg.cycle;
  for (std::size_t k = 0; k < cfg.K(); ++k) {
    s.user.push_back(sensing_time * cfg.user_sense_rate[k]);
    s.ris.push_back(sensing_time * cfg.ris_sense_rate[k]);
  }
  return s;
}

EnergyBudget energy_budget(const SystemConfig& cfg) {
  const SensedData sensed = sensed_data(cfg);
  EnergyBudget e;
  for (std::size_t k = 0; k < cfg.K(); ++k) {
    const double spent = cfg.sense_cost[k] * sensed.user[k];
    const double left = cfg.energy_max[k] - spent;
    if (left < 0.0) throw NegativeBudget(k, left);
    e.sense.push_back(spent);
    e.offload.push_back(left);
  }
  return e;
}

double transmit_power(double beta, double e_off, const SystemConfig& cfg) {
  const double duration = cfg.alpha * cfg.cycle;
  if (duration == 0.0) throw DivisionByZero("transmit power needs alpha * T > 0");
  return beta * e_off / duration;
}

double local_frequency(double beta, double e_off, const SystemConfig& cfg) {
  const double energy = std::max(0.0, (1.0 - beta) * e_off);
  return std::cbrt(energy / (cfg.alpha * cfg.cycle * cfg.kappa));
}

CVector backscatter_channel(const CMatrix& G, const RVector& phases, const CVector& h_r) {
  CVector reflected(h_r.size());
  for (Eigen::Index n = 0; n < h_r.size(); ++n) {
    reflected[n] = std::polar(1.0, phases[n]) * h_r[n];
  }
  return G.adjoint() * reflected;
}

std::vector<CVector> backscatter_channels(const ChannelSet& channels,
                                          const std::vector<RVector>& phases) {
  std::vector<CVector> b;
  b.reserve(channels.K());
  for (std::size_t k = 0; k < channels.K(); ++k) {
    b.push_back(backscatter_channel(channels.G[k], phases[k], channels.h_r[k]));
  }
  return b;
}

std::vector<double> channel_conditions(const ChannelSet& channels, const std::vector<CVector>& b,
                                       std::span<const double> powers, SignalModel model) {
  std::vector<double> cond(channels.K(), 0.0);
  for (std::size_t k = 0; k < channels.K(); ++k) {
    double gain = 0.0;
    for (const auto& s : symbol_points(model)) {
      gain += s.weight * (channels.h_d[k] + s.c * b[k]).squaredNorm();
    }
    cond[k] = powers[k] * gain;
  }
  return cond;
}

DecodeOrder decode_order(const ChannelSet& channels, const std::vector<CVector>& b,
                         std::span<const double> powers, SignalModel model) {
  const auto cond = channel_conditions(channels, b, powers, model);
  DecodeOrder d = DecodeOrder::identity(channels.K());
  std::stable_sort(d.order.begin(), d.order.end(),
                   [&](int lhs, int rhs) { return cond[lhs] > cond[rhs]; });
  for (std::size_t pos = 0; pos < d.order.size(); ++pos) d.rank[d.order[pos]] = static_cast<int>(pos);
  return d;
}

Problem Problem::make(SystemConfig cfg, ChannelSet channels, SignalModel model) {
  cfg.validate();
  channels.validate(cfg);
  Problem p;
  p.energy = energy_budget(cfg);
  p.sensed = sensed_data(cfg);
  p.order = DecodeOrder::identity(cfg.K());
  p.cfg = std::move(cfg);
  p.channels = std::move(channels);
  p.model = model;
  return p;
}

std::vector<double> transmit_powers(const Problem& problem, const RVector& beta) {
  std::vector<double> p(problem.cfg.K(), 0.0);
  if (problem.processing_time() == 0.0) return p;
  for (std::size_t k = 0; k < p.size(); ++k) {
    p[k] = transmit_power(beta[k], problem.energy.offload[k], problem.cfg);
  }
  return p;
}

double interference_plus_noise(const Problem& problem, const CVector& w, int k,
                               const std::vector<CVector>& b, std::span<const double> powers) {
  const auto& ch = problem.channels;
  double n = w.squaredNorm() * problem.cfg.noise_power;
  for (int i = 0; i < static_cast<int>(ch.K()); ++i) {
    if (!problem.order.decoded_after(i, k)) continue;
    const cdouble direct = w.dot(ch.h_d[i]);  // w^H h_d,i
    const cdouble reflected = w.dot(b[i]);
    double gain = 0.0;
    for (const auto& s : problem.symbols()) gain += s.weight * std::norm(direct + s.c * reflected);
    n += powers[i] * gain;
  }
  return n;
}

Links evaluate_links(const Problem& problem, const OptState& state) {
  const std::size_t K = problem.cfg.K();
  const auto symbols = problem.symbols();
  Links l;
  l.b = backscatter_channels(problem.channels, state.phases);
  l.power = transmit_powers(problem, state.beta);
  l.x.assign(K, {cdouble{}, cdouble{}});
  l.y.assign(K, cdouble{});
  l.noise.assign(K, 0.0);
  for (std::size_t k = 0; k < K; ++k) {
    const CVector w = state.W.col(static_cast<Eigen::Index>(k));
    const double amp = std::sqrt(l.power[k]);
    const cdouble direct = w.dot(problem.channels.h_d[k]);
    const cdouble reflected = w.dot(l.b[k]);
    for (std::size_t j = 0; j < symbols.size(); ++j) {
      l.x[k][j] = amp * (direct + symbols[j].c * reflected);
    }
    l.y[k] = amp * reflected;
    l.noise[k] = interference_plus_noise(problem, w, static_cast<int>(k), l.b, l.power);
  }
  return l;
}

namespace {

double ratio_or_zero(double num, double den) { return den > 0.0 ? num / den : 0.0; }

}  // namespace

double sinr_primary(const Problem& problem, const OptState& state, int k, double c) {
  const auto b = backscatter_channels(problem.channels, state.phases);
  const auto p = transmit_powers(problem, state.beta);
  const CVector w = state.W.col(k);
  const double signal = p[k] * std::norm(w.dot(problem.channels.h_d[k] + c * b[k]));
  return ratio_or_zero(signal, interference_plus_noise(problem, w, k, b, p));
}

double sinr_secondary(const Problem& problem, const OptState& state, int k) {
  if (!problem.has_secondary()) return 0.0;
  const auto b = backscatter_channels(problem.channels, state.phases);
  const auto p = transmit_powers(problem, state.beta);
  const CVector w = state.W.col(k);
  const double signal = problem.cfg.Q() * p[k] * std::norm(w.dot(b[k]));
  return ratio_or_zero(signal, interference_plus_noise(problem, w, k, b, p));
}

double rate_primary(const Problem& problem, const OptState& state, int k) {
  double r = 0.0;
  for (const auto& s : problem.symbols()) {
    r += s.weight * std::log2(1.0 + sinr_primary(problem, state, k, s.c));
  }
  return problem.cfg.bandwidth * r;
}

double rate_secondary(const Problem& problem, const OptState& state, int k) {
  return problem.cfg.bandwidth / problem.cfg.Q() *
         std::log2(1.0 + sinr_secondary(problem, state, k));
}

Metrics completed_bits(const Problem& problem, const OptState& state) {
  const auto& cfg = problem.cfg;
  const std::size_t K = cfg.K();
  const double duration = problem.processing_time();
  const auto symbols = problem.symbols();

  Metrics m;
  m.M_p = problem.sensed.user;
  m.M_s = problem.sensed.ris;
  m.E_sense = problem.energy.sense;
  m.E_off = problem.energy.offload;
  m.r_p.assign(K, 0.0);
  m.r_s.assign(K, 0.0);
  m.f_loc.assign(K, 0.0);
  m.local_bits.assign(K, 0.0);
  m.R_p.assign(K, 0.0);
  m.R_s.assign(K, 0.0);
  m.p_tx.assign(K, 0.0);

  if (duration > 0.0) {
    const Links l = evaluate_links(problem, state);
    m.p_tx = l.power;
    for (std::size_t k = 0; k < K; ++k) {
      double rp = 0.0;
      for (std::size_t j = 0; j < symbols.size(); ++j) {
        rp += symbols[j].weight * std::log2(1.0 + ratio_or_zero(std::norm(l.x[k][j]), l.noise[k]));
      }
      m.r_p[k] = cfg.bandwidth * rp;
      if (problem.has_secondary()) {
        m.r_s[k] = cfg.bandwidth / cfg.Q() *
                   std::log2(1.0 + ratio_or_zero(cfg.Q() * std::norm(l.y[k]), l.noise[k]));
      }
      m.f_loc[k] = local_frequency(state.beta[k], problem.energy.offload[k], cfg);
      m.local_bits[k] = m.f_loc[k] * duration / cfg.cycles_per_bit;
      m.R_p[k] = m.r_p[k] * duration + m.local_bits[k];
      m.R_s[k] = m.r_s[k] * duration;
    }
  }
  m.objective = m.sum_R_p() + m.sum_R_s();
  for (std::size_t k = 0; k < K; ++k) {
    m.c4_user_ok.push_back(m.R_p[k] <= m.M_p[k]);
    m.c4_ris_ok.push_back(m.R_s[k] <= m.M_s[k]);
  }
  return m;
}

}  // namespace rissr
