#pragma once

#include "rissr/types.hpp"

namespace rissr {

/// Per-RIS phase objective  -v^H U v + 2 Re{z^H v}  over unit-modulus v.
struct PhaseQuadratic {
  CMatrix U;  // hermitian PSD, N x N
  CVector z;

  double value(const CVector& v) const {
    return -(v.dot(U * v)).real() + 2.0 * z.dot(v).real();
  }
  double value_of_phases(const RVector& phases) const;
};

/// e^{j theta} entrywise.
CVector unit_modulus(const RVector& phases);

/// Wraps to [0, 2 pi).
double wrap_phase(double theta);

/// Grid angle of a b-bit phase shifter closest to theta on the circle.
double snap_to_grid(double theta, int bits);

}  // namespace rissr
