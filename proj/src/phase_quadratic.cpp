#include "rissr/phase_quadratic.hpp"

#include <cmath>

namespace rissr {

double PhaseQuadratic::value_of_phases(const RVector& phases) const {
  return value(unit_modulus(phases));
}

CVector unit_modulus(const RVector& phases) {
  CVector v(phases.size());
  for (Eigen::Index n = 0; n < phases.size(); ++n) v[n] = std::polar(1.0, phases[n]);
  return v;
}

double wrap_phase(double theta) {
  double t = std::fmod(theta, kTwoPi);
  if (t < 0.0) t += kTwoPi;
  return t >= kTwoPi ? 0.0 : t;
}

double snap_to_grid(double theta, int bits) {
  const int levels = 1 << bits;
  const double step = kTwoPi / levels;
  const long idx = std::lround(wrap_phase(theta) / step) % levels;
  return step * static_cast<double>(idx);
}

}  // namespace rissr
