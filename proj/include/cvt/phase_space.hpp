#pragma once

#include <vector>

#include "cvt/analytic.hpp"
#include "cvt/grid.hpp"

// Discretized Wigner-function engine: state construction, Gaussian channels,
// mixing, diffusion evolution, and characteristic-function transforms. Serves
// as the brute-force cross-check for the closed forms in cvt/analytic.hpp.
//
// All operations take and return immutable grids; none mutate shared state,
// so concurrent evaluation over parameter lattices needs no synchronization.

namespace cvt::phase {

// -- state construction -------------------------------------------------------
// Constructors sample closed-form expressions pointwise and verify that the
// window keeps the Riemann integral within 1e-3 of one, throwing
// DomainTooSmallError otherwise.

WignerGrid wigner_vacuum(const GridSpec& spec);
WignerGrid wigner_reference(double s, const GridSpec& spec);

/// Squeezed vacuum G_{1/sqrt(2)}(e^s x, e^{-s} p); the false-trigger state.
WignerGrid wigner_squeezed_vacuum(double s, const GridSpec& spec);

/// Closed-form lossy (and optionally dark-count-mixed) input state sampled
/// analytically; no grid channel is involved, so this is an independent
/// surface to compare full pipelines against.
WignerGrid model_input_state(const InputStateParams& params, const GridSpec& spec);

/// Closed-form output state after loss and unity-gain teleportation at r.
WignerGrid model_output_state(const InputStateParams& params, double r,
                              const GridSpec& spec);

// -- Gaussian channels --------------------------------------------------------

/// Convolution with the isotropic normalized Gaussian of per-axis standard
/// deviation sigma, computed spectrally with 2x zero padding per axis.
/// sigma = 0 is the identity. Throws AliasingError when more than 1e-6 of
/// (absolute) mass leaks past the retained window.
WignerGrid convolve_gaussian(const WignerGrid& w, double sigma);

/// Beam-splitter loss 1 - eta:
///   (1/eta) (W o G_lambda)(x / sqrt(eta), p / sqrt(eta)),
/// lambda = sqrt((1 - eta)/(2 eta)). The coordinate rescaling uses bilinear
/// resampling on the padded convolution output followed by explicit
/// renormalization, so resampling drift cannot masquerade as physics.
WignerGrid apply_loss(const WignerGrid& w, double eta);

/// Unity-gain teleportation: convolution with G_{exp(-r)}. r = +infinity is
/// the identity channel.
WignerGrid teleport(const WignerGrid& w, double r);

/// Statistical mixture (1 - epsilon) a + epsilon b.
WignerGrid mix(const WignerGrid& a, const WignerGrid& b, double epsilon);

// -- evaluation ---------------------------------------------------------------

/// Bicubic (Catmull-Rom) interpolation at an arbitrary interior point.
/// On default symmetric even-count grids the origin is a node and the read
/// is exact there.
double value_at(const WignerGrid& w, double x, double p);

/// The figure of merit: W(0, 0).
double origin_value(const WignerGrid& w);

// -- diffusion oracle ---------------------------------------------------------

/// Integrates dW/dt = kappa (d^2/dx^2 + d^2/dp^2) W with explicit central
/// differences over `steps` equal steps. Enforces the stability bound
/// kappa dt <= 0.25 min(dx^2, dp^2) (StabilityError; no silent substepping).
/// Equals convolve_gaussian(w, sqrt(2 kappa t)) up to discretization error.
WignerGrid evolve_diffusion(const WignerGrid& w, double kappa, double t,
                            std::size_t steps);

// -- characteristic function --------------------------------------------------
// chi(u, v) = Int W(x, p) exp(-i (u x + v p)) dx dp, u conjugate to x and v
// to p; W(x, p) = (1/4 pi^2) Int chi exp(+i (u x + v p)) du dv. A Gaussian
// channel acts on chi multiplicatively.

CharacteristicGrid to_characteristic(const WignerGrid& w);

/// Inverse transform. The conjugate grid determines the real-space window
/// only up to a periodic shift; reconstruction uses the symmetric window, so
/// the round trip is exact for the symmetric windows every state constructor
/// produces.
WignerGrid from_characteristic(const CharacteristicGrid& chi);

enum class ConjugateAxis { u, v };

/// Multiplies chi by exp(-gamma^2 u^2 / 2) (axis u; x-quadrature noise) or
/// the v analogue. Applying both axes and inverting equals
/// convolve_gaussian(., gamma).
CharacteristicGrid apply_quadrature_noise_factor(const CharacteristicGrid& chi,
                                                 double gamma, ConjugateAxis axis);

// -- diagnostics used by tests and reports ------------------------------------

std::vector<double> marginal_x(const WignerGrid& w);  // Int W dp per x node
std::vector<double> marginal_p(const WignerGrid& w);
double moment_x2(const WignerGrid& w);  // <x^2>
double moment_p2(const WignerGrid& w);

}  // namespace cvt::phase
