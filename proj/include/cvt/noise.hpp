#pragma once

#include "cvt/errors.hpp"

// Classical-noise renormalization of the EPR parameter. Noise adds to finite
// squeezing in power, not amplitude: e^{-2r'} = e^{-2r} + N^2. Valid for
// Gaussian entanglement and uncorrelated Gaussian noise only; the scalar API
// assumes isotropic noise (same amplitude on both quadratures). Anisotropic
// noise is expressible through the characteristic-function pathway of the
// phase-space engine.

namespace cvt::noise {

/// Vacuum-normalized classical noise amplitude, N >= 0.
struct NoiseLevel {
  double amplitude;

  explicit NoiseLevel(double amplitude_);
};

/// r' = -(1/2) ln(e^{-2r} + N^2); may be negative (noise can push the
/// channel below the classical limit).
double noisy_r(double r, NoiseLevel n);

/// Noise amplitude at which noisy_r(r, .) = 0: N* = sqrt(1 - e^{-2r}).
/// Requires r > 0.
NoiseLevel break_even_noise(double r);

/// Same renormalization applied to broadband effective quantities.
double noisy_r_eff(double r_eff, double n_eff);

}  // namespace cvt::noise
