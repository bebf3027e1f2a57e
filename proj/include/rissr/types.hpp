#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace rissr {

using cdouble = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using RVector = Eigen::VectorXd;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

/// RIS phase resolution: continuous, or a uniform grid of 2^bits angles.
struct PhaseMode {
  int bits = 0;

  bool continuous() const { return bits == 0; }
  int levels() const { return 1 << bits; }

  /// Accepts "continuous" or "b<bits>" (e.g. "b2").
  static PhaseMode parse(std::string_view text);
  std::string name() const;

  friend bool operator==(const PhaseMode&, const PhaseMode&) = default;
};

/// Scalar parameters of one scenario. All quantities in SI units
/// (W, Hz, s, bit, J). A default-constructed config holds the
/// reference simulation setup with four user/RIS pairs.
struct SystemConfig {
  int users = 4;                   // K
  int antennas = 4;                // M
  int elements = 100;              // N, per RIS
  int symbols_per_secondary = 128; // Q
  double bandwidth = 1e5;          // B
  double noise_power = 1e-13;      // sigma^2, -100 dBm
  double cycle = 5.0;              // T
  double alpha = 0.4;              // processing fraction of the cycle
  std::vector<double> user_sense_rate = std::vector<double>(4, 2.5e6);  // v_p, bit/s
  std::vector<double> ris_sense_rate = std::vector<double>(4, 5e4);     // v_s, bit/s
  std::vector<double> sense_cost = std::vector<double>(4, 0.5e-6);      // J/bit
  std::vector<double> energy_max = std::vector<double>(4, 10.0);        // J
  double kappa = 1e-25;            // effective capacitance, J s^2/cycle^3
  double cycles_per_bit = 600.0;   // C
  PhaseMode phase_mode{};

  std::size_t K() const { return static_cast<std::size_t>(users); }
  std::size_t M() const { return static_cast<std::size_t>(antennas); }
  std::size_t N() const { return static_cast<std::size_t>(elements); }
  double Q() const { return static_cast<double>(symbols_per_secondary); }

  /// Resizes the per-user vectors to `k`, repeating the first entry.
  void set_users(int k);
  void set_energy_max(double joules);

  /// Throws ValidationError naming the first violated invariant.
  void validate() const;
};

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

inline double distance(const Point2& a, const Point2& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

/// Per-user channels. Vectors are indexed by user/RIS index k.
struct ChannelSet {
  std::vector<CVector> h_d;  // user k -> BS, length M
  std::vector<CVector> h_r;  // user k -> RIS k, length N
  std::vector<CMatrix> G;    // RIS k -> BS, N x M

  // Realization metadata; empty for hand-built channel sets.
  std::vector<Point2> user_positions;
  std::vector<double> gain_d;  // path gain user -> BS
  std::vector<double> gain_r;  // path gain user -> RIS
  std::vector<double> gain_g;  // path gain RIS -> BS

  std::size_t K() const { return h_d.size(); }

  /// Throws ValidationError if dimensions disagree with cfg or entries are not finite.
  void validate(const SystemConfig& cfg) const;
};

/// Decoding order at the BS: order[pos] is the user decoded at position pos;
/// rank[user] is the inverse permutation.
struct DecodeOrder {
  std::vector<int> order;
  std::vector<int> rank;

  static DecodeOrder identity(std::size_t k);
  /// Users decoded after `user` (these interfere with its decoder).
  bool decoded_after(int other, int user) const { return rank[other] > rank[user]; }
};

/// Real auxiliaries of the log terms: primary[k][j] for symbol j, secondary[k].
struct RateAux {
  std::vector<std::array<double, 2>> primary;
  std::vector<double> secondary;

  static RateAux zeros(std::size_t k);
};

/// Complex auxiliaries of the quadratic transform (shared shape of gamma, xi, lambda).
struct RatioAux {
  std::vector<std::array<cdouble, 2>> primary;
  std::vector<cdouble> secondary;

  static RatioAux zeros(std::size_t k);
};

/// Decision variables plus the fractional-programming auxiliaries.
struct OptState {
  CMatrix W;                    // M x K, column k is w_k
  std::vector<RVector> phases;  // phases[k][n] in [0, 2pi)
  RVector beta;                 // energy partition, [0, 1]
  RateAux eta;
  RatioAux gamma;
  RatioAux xi;
  RatioAux lambda;

  std::size_t K() const { return phases.size(); }
};

struct Metrics {
  std::vector<double> r_p, r_s;         // bit/s
  std::vector<double> p_tx;             // W
  std::vector<double> f_loc;            // cycle/s
  std::vector<double> R_p, R_s;         // completed bits
  std::vector<double> local_bits;       // part of R_p computed locally
  std::vector<double> M_p, M_s;         // sensed bits
  std::vector<double> E_sense, E_off;   // J
  std::vector<bool> c4_user_ok, c4_ris_ok;
  double objective = 0.0;

  double sum_R_p() const;
  double sum_R_s() const;
  double sum_local() const;
  double sum_M_p() const;
  double sum_M_s() const;
};

}  // namespace rissr
