#pragma once

#include <complex>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "cvt/errors.hpp"

// Effective single-mode reduction of broadband teleportation. A wave-packet
// mode function f(Omega) weights the squeezing spectrum r(Omega) into one
// effective EPR parameter, e^{-r_eff} = Int f e^{-r(Omega)} dOmega, and the
// same weighting turns noise spectra and classical-channel transfer
// functions into scalar figures.
//
// All frequency arguments are sidebands Omega = omega - omega_0; the carrier
// never appears numerically. Quadrature is composite trapezoid on the
// supplied grid; resampling between grids is explicit, never implicit.

namespace cvt::multimode {

enum class Normalization { l1, l2 };

/// Frequency-domain wave-packet weights. Factory functions normalize to the
/// requested convention: Int f = 1 (l1, the default for spectral averages)
/// or Int |f|^2 = 1 (l2, the operator-norm convention).
struct ModeFunction {
  std::vector<double> omega;
  std::vector<std::complex<double>> weights;
  Normalization normalization = Normalization::l1;

  /// Validates monotone omega, then normalizes per the convention.
  static ModeFunction make(std::vector<double> omega,
                           std::vector<std::complex<double>> weights,
                           Normalization norm);

  bool real_valued(double tol = 1e-12) const;
  bool has_negative_lobes(double tol = 1e-12) const;
};

/// Frequency-resolved EPR correlation r(Omega), stored as r values;
/// equivalently S_-(Omega) = e^{-r(Omega)}.
struct SqueezingSpectrum {
  std::vector<double> omega;
  std::vector<double> r_values;

  static SqueezingSpectrum from_r(std::vector<double> omega, std::vector<double> r);
  static SqueezingSpectrum from_s_minus(std::vector<double> omega,
                                        std::vector<double> s_minus);

  std::vector<double> s_minus() const;
};

/// Complex classical-channel transfer samples g(Omega); |g| bounded by
/// max_abs (default 10).
struct TransferFunction {
  std::vector<double> omega;
  std::vector<std::complex<double>> g;

  static TransferFunction make(std::vector<double> omega,
                               std::vector<std::complex<double>> g,
                               double max_abs = 10.0);

  /// g(Omega) = exp(-i Omega dt), the pure linear delay.
  static TransferFunction pure_delay(std::span<const double> omega, double dt);

  /// g(Omega) = 1 / (1 + i Omega / omega_c), one-pole low-pass.
  static TransferFunction low_pass(std::span<const double> omega, double omega_c);
};

struct GainMoments {
  std::complex<double> g_plus;
  std::complex<double> g_minus;
};

struct Warning {
  std::string code;
  std::string message;
};
using WarningList = std::vector<Warning>;

/// Unnormalized Lorentzian line shape gamma / (pi (gamma^2 + Omega^2)).
double lorentzian_pdf(double gamma, double omega);

/// Samples the Lorentzian wave-packet mode on the given grid and normalizes.
/// The grid must span at least +-20 gamma (GridSpanError otherwise).
ModeFunction lorentzian_mode(double gamma, std::span<const double> omega_grid,
                             Normalization norm = Normalization::l1);

/// Below-threshold OPO squeezing spectrum
///   S_-(Omega) = 1 - 4 x / ((1 + x)^2 + (Omega / kappa)^2),
/// x in [0, 1), kappa > 0. S_-(0) = (1-x)^2/(1+x)^2 and S_- -> 1 far from
/// the carrier.
SqueezingSpectrum opo_squeezing_spectrum(double x_pump, double kappa_cav,
                                         std::span<const double> omega_grid);

/// r_eff = -ln Int f e^{-r(Omega)} dOmega. Requires an l1-normalized,
/// real-valued f on the same grid as the spectrum. Negative lobes of f are
/// reported through `warnings` (when given) but do not fail the average.
double effective_epr(const ModeFunction& f, const SqueezingSpectrum& spec,
                     WarningList* warnings = nullptr);

/// g+- = Int f g e^{+-(r(Omega) - r_eff)} dOmega, the antisqueezing /
/// squeezing contamination moments of nonunity-gain teleportation.
GainMoments gain_moments(const ModeFunction& f, const TransferFunction& g,
                         const SqueezingSpectrum& spec, double r_eff);

/// Pointwise product f g (no renormalization) plus the fraction of the
/// mode's l2 norm that survives the channel.
struct OutputMode {
  ModeFunction mode;  // raw product samples, not renormalized
  double modal_transmission;
};
OutputMode output_mode_function(const ModeFunction& f, const TransferFunction& g);

/// N_eff = Int f N(Omega) dOmega; N must be nonnegative samples on f's grid.
double effective_noise(const ModeFunction& f, std::span<const double> n_spectrum,
                       WarningList* warnings = nullptr);

// -- grids ----------------------------------------------------------------------

/// Linear-interpolation resample onto a new grid (explicit; nothing resamples
/// behind the caller's back). The new grid must lie inside the old span.
ModeFunction resample(const ModeFunction& f, std::span<const double> new_omega);
SqueezingSpectrum resample(const SqueezingSpectrum& s, std::span<const double> new_omega);
TransferFunction resample(const TransferFunction& g, std::span<const double> new_omega);

/// Uniform sideband grid spanning [-half_span, half_span] with n samples
/// (n odd keeps Omega = 0 on the grid).
std::vector<double> uniform_grid(double half_span, std::size_t n);

// -- CSV ingestion ----------------------------------------------------------------
// Two accepted layouts, with a header row: "omega,value" for real samples and
// "omega,re,im" for complex ones.

ModeFunction read_mode_csv(const std::filesystem::path& path,
                           Normalization norm = Normalization::l1);
SqueezingSpectrum read_squeezing_csv(const std::filesystem::path& path);
TransferFunction read_transfer_csv(const std::filesystem::path& path);
std::pair<std::vector<double>, std::vector<double>> read_real_csv(
    const std::filesystem::path& path);

}  // namespace cvt::multimode
