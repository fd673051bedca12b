#pragma once

#include "cvt/errors.hpp"

// Closed-form negativity and threshold formulas for teleportation of a
// photon-subtracted squeezed vacuum through a finitely squeezed EPR channel.
//
// Conventions (hbar = 1): the vacuum Wigner function is the normalized 2-D
// Gaussian of per-axis standard deviation 1/sqrt(2); teleportation with EPR
// parameter r convolves the input Wigner function with an isotropic Gaussian
// kernel of per-axis standard deviation exp(-r).

namespace cvt {

/// Three-parameter input-state model: squeezing s >= 0, beam-splitter
/// transmission eta in (0, 1], false-trigger mixing fraction epsilon in
/// [0, 1]. epsilon is one minus the modal purity of the heralding detector.
struct InputStateParams {
  double s;
  double eta;
  double epsilon;

  InputStateParams(double s_, double eta_, double epsilon_ = 0.0);
};

/// EPR correlation strength of the shared two-mode squeezed resource.
/// r = 0 is the classical limit; construction rejects negative values
/// (degraded, possibly negative effective parameters are plain doubles
/// produced by the noise renormalization, never channel resources).
struct TeleporterParamsScalar {
  double r;

  explicit TeleporterParamsScalar(double r_);
};

/// Gaussian widths induced by the loss channel and its composition with
/// teleportation, plus the recurring shorthand g_r = 1 + 2 exp(-2r).
struct DerivedWidths {
  double lambda;        // sqrt((1 - eta) / (2 eta))
  double lambda_prime;  // sqrt(lambda^2 + exp(-2r) / eta)
  double g_r;           // 1 + 2 exp(-2r), in (1, 3] for r >= 0
};

DerivedWidths derived_widths(double eta, double r);

/// Coefficients of the quadratic satisfied by g_r at the epsilon-corrected
/// output threshold: g_r^2 + 2 b eta g_r - c eta^2 = 0.
struct ThresholdCoefficients {
  double b;  // epsilon (1 + 2 sinh^2 s) - 1
  double c;  // 4 epsilon sinh^2 s
};

ThresholdCoefficients threshold_coefficients(double epsilon, double s);

namespace analytic {

/// sinh^2(s) via (e^s - e^-s)^2 / 4; no series truncation.
double sinh_sq(double s);

/// Wigner function of the ideal reference state (squeezed single photon)
/// evaluated at (q, p):
///   2 (e^{2s} q^2 + e^{-2s} p^2 - 1/2) G_{1/sqrt(2)}(e^s q, e^{-s} p).
/// Central value is -1/pi for every s.
double ref_wigner_value(double s, double q, double p);

/// Central negativity of the teleported ideal reference state,
///   g_r (g_r - 2) / (pi (g_r^2 + 8 e^{-2r} sinh^2 s)^{3/2}).
/// Crosses zero at r = ln sqrt(2) independently of s (the 3 dB rule).
//
// Note: one printed form of this expression circulates with the first power
// of g_r inside the bracket. Direct evaluation of the defining convolution
// (see the grid engine and the Fock-basis test oracle) fixes the square, and
// only the squared form degenerates correctly from the lossy formula at
// eta = 1.
double ref_output_negativity(double s, double r);

/// Central negativity of the lossy, possibly dark-count-mixed input state:
///   (1 - 2 eta) / (pi D^{3/2})
///     + 2 eps eta (1 + 2 (1 - eta) sinh^2 s) / (pi D^{3/2}),
/// with D = 1 + 4 eta (1 - eta) sinh^2 s.
double input_negativity(const InputStateParams& params);

/// Central negativity after unity-gain teleportation with EPR parameter r
/// (r may be +infinity, giving the identity channel, or negative, as
/// produced by noise renormalization):
///   g_r (g_r - 2 eta) / (pi E^{3/2})
///     + 2 eps eta (g_r + 2 (g_r - eta) sinh^2 s) / (pi E^{3/2}),
/// with E = g_r^2 + 4 eta (g_r - eta) sinh^2 s.
//
// The mixing correction is sometimes printed with (g_r - 2 eta) in E's place
// inside the correction denominator; re-deriving the linear mixing transform
// shows both terms share the same E, and only this form reproduces the
// pipeline of the grid engine.
double output_negativity(const InputStateParams& params, double r);

/// EPR parameter at which the output negativity crosses zero.
/// epsilon = 0: ln sqrt(2 / (2 eta - 1)), independent of s.
/// epsilon > 0: ln sqrt(2 / (eta (sqrt(b^2 + c) - b) - 1)) from the physical
/// root of the threshold quadratic.
/// Throws NoThresholdError when no finite threshold exists.
double threshold_r(double eta, double s, double epsilon);

/// Mixing fraction at which the input negativity crosses zero,
///   (2 eta - 1) / (2 eta (1 + 2 (1 - eta) sinh^2 s)).
/// Nonpositive return (eta <= 1/2) signals an input that is never negative.
double input_threshold_epsilon(double eta, double s);

/// Input loss also degrades the channel: r -> r + ln sqrt(eta).
double effective_r_after_input_loss(double r, double eta);

}  // namespace analytic
}  // namespace cvt
