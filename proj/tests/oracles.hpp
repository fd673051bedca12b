#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "cvt/grid.hpp"

// Independent test oracles. Everything here deliberately avoids the code
// paths it is used to check: the Fock oracle builds states from number-basis
// coefficients and a direct transform integral, the quadrature oracle is
// adaptive Simpson on continuum functions, and the root finder is plain
// bisection.

namespace oracles {

/// Fock coefficients c_n of the squeezed single photon (odd n only),
/// truncated at n_max, oriented so the x quadrature is the squeezed one.
std::vector<double> squeezed_photon_fock_coeffs(double s, std::size_t n_max);

/// Wigner function of the squeezed single photon at (q, p), synthesized from
/// the truncated Fock expansion through the position-basis transform
/// W(q,p) = (1/pi) Int psi(q+y) psi(q-y) cos(2 p y) dy (Simpson quadrature).
double fock_wigner(double s, double q, double p, std::size_t n_max = 20);

/// <q^2> of the truncated Fock state via ladder-operator matrix elements.
double fock_q2_moment(double s, std::size_t n_max = 20);

/// Recursive adaptive Simpson quadrature.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol = 1e-12);

/// Bisection root of f on [lo, hi]; requires a sign change.
double bisect(const std::function<double(double)>& f, double lo, double hi,
              double tol = 1e-13);

/// Directly sampled isotropic centered Gaussian state of per-axis standard
/// deviation sigma (bypasses every library state constructor).
cvt::WignerGrid sampled_gaussian(double sigma, const cvt::GridSpec& spec);

}  // namespace oracles
