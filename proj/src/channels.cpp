#include "rissr/channels.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "rissr/errors.hpp"
#include "rissr/numerics.hpp"

namespace rissr {

namespace {

enum StreamTag : std::uint64_t {
  kPlacement = 1,
  kDirect = 2,
  kUserRis = 3,
  kRisBs = 4,
};

double azimuth(const Point2& from, const Point2& to) { return std::atan2(to.y - from.y, to.x - from.x); }

Point2 rotate(const Point2& p, double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  return {c * p.x - s * p.y, s * p.x + c * p.y};
}

// Weights of the line-of-sight and scattered parts for Rician factor k.
std::pair<double, double> rician_weights(double k) {
  if (std::isinf(k)) return {1.0, 0.0};
  return {std::sqrt(k / (k + 1.0)), std::sqrt(1.0 / (k + 1.0))};
}

}  // namespace

Geometry Geometry::reference(int k) {
  Geometry g;
  if (k == 4) return g;
  const Point2 ris0 = g.ris_pos.front();
  const Point2 user0 = g.user_center.front();
  g.ris_pos.clear();
  g.user_center.clear();
  for (int i = 0; i < k; ++i) {
    const double angle = kTwoPi * i / k;
    g.ris_pos.push_back(rotate(ris0, angle));
    g.user_center.push_back(rotate(user0, angle));
  }
  return g;
}

void Geometry::validate(std::size_t users) const {
  if (ris_pos.size() != users || user_center.size() != users) {
    throw ValidationError("geometry needs one RIS position and one user center per user");
  }
  if (!(user_radius >= 0.0)) throw ValidationError("user_radius >= 0");
  for (std::size_t k = 0; k < users; ++k) {
    const double margin = user_radius;
    if (distance(ris_pos[k], bs_pos) <= 0.0) throw ValidationError("RIS and BS positions coincide");
    if (distance(user_center[k], bs_pos) <= margin) {
      throw ValidationError("user circle " + std::to_string(k) + " reaches the BS");
    }
    if (distance(user_center[k], ris_pos[k]) <= margin) {
      throw ValidationError("user circle " + std::to_string(k) + " reaches its RIS");
    }
  }
}

void FadingParams::validate() const {
  if (!(beta0 > 0.0)) throw ValidationError("beta0 > 0");
  if (!(K1 >= 0.0) || !(K2 >= 0.0)) throw ValidationError("Rician factors K1, K2 >= 0");
}

double path_loss(double d, double exponent, double beta0) {
  if (d == 0.0) throw ZeroDistance("path loss at zero distance");
  return beta0 * std::pow(d, exponent);
}

CVector steering_vector(int n_elems, double angle) {
  CVector a(n_elems);
  const double step = kPi * std::sin(angle);
  for (int i = 0; i < n_elems; ++i) a[i] = std::polar(1.0, step * i);
  return a;
}

ChannelSet sample_channels(const Geometry& geometry, const FadingParams& fading,
                           const SystemConfig& cfg, std::uint64_t seed) {
  cfg.validate();
  geometry.validate(cfg.K());
  fading.validate();
  const int M = cfg.antennas;
  const int N = cfg.elements;
  const auto [los_r, nlos_r] = rician_weights(fading.K1);
  const auto [los_g, nlos_g] = rician_weights(fading.K2);

  ChannelSet ch;
  for (std::size_t k = 0; k < cfg.K(); ++k) {
    Rng place(derive_seed(seed, {kPlacement, k}));
    const double radius = geometry.user_radius * std::sqrt(place.uniform());
    const double theta = kTwoPi * place.uniform();
    const Point2 user{geometry.user_center[k].x + radius * std::cos(theta),
                      geometry.user_center[k].y + radius * std::sin(theta)};
    const Point2 ris = geometry.ris_pos[k];

    const double gain_d = path_loss(distance(user, geometry.bs_pos), fading.alpha_ub, fading.beta0);
    const double gain_r = path_loss(distance(user, ris), fading.alpha_ur, fading.beta0);
    const double gain_g = path_loss(distance(ris, geometry.bs_pos), fading.alpha_rb, fading.beta0);

    Rng direct(derive_seed(seed, {kDirect, k}));
    CVector h_d(M);
    for (int m = 0; m < M; ++m) h_d[m] = std::sqrt(gain_d) * direct.complex_normal();

    const CVector a_r = steering_vector(N, azimuth(ris, user));
    const CVector a_ris_bs = steering_vector(N, azimuth(ris, geometry.bs_pos));
    const CVector a_bs = steering_vector(M, azimuth(geometry.bs_pos, ris));

    CVector h_r(N);
    CMatrix G(N, M);
    for (int n = 0; n < N; ++n) {
      Rng elem_r(derive_seed(seed, {kUserRis, k, static_cast<std::uint64_t>(n)}));
      h_r[n] = std::sqrt(gain_r) * (los_r * a_r[n] + nlos_r * elem_r.complex_normal());
      Rng elem_g(derive_seed(seed, {kRisBs, k, static_cast<std::uint64_t>(n)}));
      for (int m = 0; m < M; ++m) {
        const cdouble los = a_ris_bs[n] * std::conj(a_bs[m]);
        G(n, m) = std::sqrt(gain_g) * (los_g * los + nlos_g * elem_g.complex_normal());
      }
    }

    ch.h_d.push_back(std::move(h_d));
    ch.h_r.push_back(std::move(h_r));
    ch.G.push_back(std::move(G));
    ch.user_positions.push_back(user);
    ch.gain_d.push_back(gain_d);
    ch.gain_r.push_back(gain_r);
    ch.gain_g.push_back(gain_g);
  }
  return ch;
}

}  // namespace rissr
