#pragma once

#include <cstdint>
#include <vector>

#include "rissr/types.hpp"

namespace rissr {

/// Node placement in the 2-D plane, meters.
struct Geometry {
  Point2 bs_pos{0.0, 0.0};
  std::vector<Point2> ris_pos{{200.0, 0.0}, {0.0, 200.0}, {-200.0, 0.0}, {0.0, -200.0}};
  std::vector<Point2> user_center{{200.0, 30.0}, {-30.0, 200.0}, {-200.0, -30.0}, {30.0, -200.0}};
  double user_radius = 10.0;

  /// Reference layout generalized to k pairs by rotating the first pair about the BS.
  static Geometry reference(int k);
  void validate(std::size_t users) const;
};

/// Large-scale fading parameters (linear units).
struct FadingParams {
  double beta0 = 1e-3;     // path gain at 1 m (-30 dB)
  double alpha_ub = -2.0;  // user -> BS exponent
  double alpha_ur = -2.2;  // user -> RIS exponent
  double alpha_rb = -3.6;  // RIS -> BS exponent
  double K1 = 10.0;        // Rician factor of user -> RIS
  double K2 = 10.0;        // Rician factor of RIS -> BS

  void validate() const;
};

/// beta0 * d^exponent. Throws ZeroDistance for d == 0.
double path_loss(double d, double exponent, double beta0);

/// Half-wavelength ULA response: entry i is exp(j pi i sin(angle)).
CVector steering_vector(int n_elems, double angle);

/// Draws one channel realization (user placement plus small-scale fading).
///
/// Every random quantity is drawn from its own stream keyed by (seed, link,
/// user, element), so a realization with N elements is the N-element prefix
/// of a realization with more elements under the same seed, and the direct
/// channels and placements do not depend on N at all.
ChannelSet sample_channels(const Geometry& geometry, const FadingParams& fading,
                           const SystemConfig& cfg, std::uint64_t seed);

}  // namespace rissr
