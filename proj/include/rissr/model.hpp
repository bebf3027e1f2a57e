#pragma once

#include <span>
#include <vector>

#include "rissr/types.hpp"

namespace rissr {

/// How the RIS contributes at the BS.
///   kSymbiotic: the RIS modulates a BPSK symbol c in {-1,+1} onto the
///     reflected path; the primary rate averages over c and the RIS has
///     its own (secondary) rate.
///   kAssistOnly: the reflected path is a fixed extra channel (c = +1);
///     no secondary rate.
enum class SignalModel { kSymbiotic, kAssistOnly };

/// A value of the RIS symbol and its probability.
struct SymbolPoint {
  double c;
  double weight;
};

/// The symbol points the primary rate is averaged over. Interference from
/// other users is averaged over the same set.
std::span<const SymbolPoint> symbol_points(SignalModel model);

struct SensedData {
  std::vector<double> user;  // M_p, bits
  std::vector<double> ris;   // M_s, bits
};

struct EnergyBudget {
  std::vector<double> sense;    // E_s, J
  std::vector<double> offload;  // E_o = E_max - E_s, J
};

SensedData sensed_data(const SystemConfig& cfg);

/// Throws NegativeBudget if sensing alone exceeds a user's budget.
EnergyBudget energy_budget(const SystemConfig& cfg);

/// beta * E_off / (alpha T). Throws DivisionByZero if alpha T == 0.
double transmit_power(double beta, double e_off, const SystemConfig& cfg);

/// CPU frequency that spends (1 - beta) E_off over alpha T under the cubic power model.
double local_frequency(double beta, double e_off, const SystemConfig& cfg);

/// b = G^H diag(e^{j theta}) h_r.
CVector backscatter_channel(const CMatrix& G, const RVector& phases, const CVector& h_r);
std::vector<CVector> backscatter_channels(const ChannelSet& channels,
                                          const std::vector<RVector>& phases);

/// p_k * E_c ||h_d,k + c b_k||^2, which is p_k (||h_d,k||^2 + ||b_k||^2) in the
/// symbiotic model.
std::vector<double> channel_conditions(const ChannelSet& channels, const std::vector<CVector>& b,
                                       std::span<const double> powers,
                                       SignalModel model = SignalModel::kSymbiotic);

/// Users sorted by channel condition, strongest first; ties keep index order.
DecodeOrder decode_order(const ChannelSet& channels, const std::vector<CVector>& b,
                         std::span<const double> powers,
                         SignalModel model = SignalModel::kSymbiotic);

/// Everything that stays fixed during one optimization run.
struct Problem {
  SystemConfig cfg;
  ChannelSet channels;
  EnergyBudget energy;
  SensedData sensed;
  DecodeOrder order;
  SignalModel model = SignalModel::kSymbiotic;

  /// Validates inputs and evaluates the energy budget. Order starts as identity.
  static Problem make(SystemConfig cfg, ChannelSet channels,
                      SignalModel model = SignalModel::kSymbiotic);

  double processing_time() const { return cfg.alpha * cfg.cycle; }
  std::span<const SymbolPoint> symbols() const { return symbol_points(model); }
  bool has_secondary() const { return model == SignalModel::kSymbiotic; }
};

std::vector<double> transmit_powers(const Problem& problem, const RVector& beta);

/// Per-decoder quantities for one state. x[k][j] and y[k] already include sqrt(p_k).
struct Links {
  std::vector<CVector> b;
  std::vector<double> power;
  std::vector<std::array<cdouble, 2>> x;  // sqrt(p_k) w_k^H (h_d,k + c_j b_k)
  std::vector<cdouble> y;                 // sqrt(p_k) w_k^H b_k
  std::vector<double> noise;              // n_k, interference from later users plus ||w_k||^2 sigma^2
};

Links evaluate_links(const Problem& problem, const OptState& state);

/// n_k for an arbitrary receive vector w at decoder k.
double interference_plus_noise(const Problem& problem, const CVector& w, int k,
                               const std::vector<CVector>& b, std::span<const double> powers);

/// SINR of the primary symbol of user k given RIS symbol c. Zero when n_k == 0.
double sinr_primary(const Problem& problem, const OptState& state, int k, double c);
/// SINR of the RIS symbol (Q-fold processing gain). Zero in the assist-only model.
double sinr_secondary(const Problem& problem, const OptState& state, int k);

/// B * E_c log2(1 + SINR_p(c)), exact over the symbol points.
double rate_primary(const Problem& problem, const OptState& state, int k);
/// (B / Q) log2(1 + SINR_s).
double rate_secondary(const Problem& problem, const OptState& state, int k);

/// Rates, powers, completed and sensed bits, and the sensing-data feasibility flags.
Metrics completed_bits(const Problem& problem, const OptState& state);

}  // namespace rissr
