#pragma once

#include <stdexcept>
#include <string>

namespace cvt {

/// Base class of every error thrown by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A constructor or operation received a value outside its domain.
class InvalidParameter : public Error {
 public:
  using Error::Error;
};

// -- analytic_core -----------------------------------------------------------

/// The requested negativity threshold does not exist for these parameters
/// (the state can never yield a negative output). Distinct from numerical
/// failure so that parameter sweeps can tell the two apart.
class NoThresholdError : public Error {
 public:
  using Error::Error;
};

// -- phase_space --------------------------------------------------------------

/// Grid window clips more probability mass than the construction tolerance.
class DomainTooSmallError : public Error {
 public:
  using Error::Error;
};

/// Spectral convolution leaked more mass past the retained window than allowed.
class AliasingError : public Error {
 public:
  using Error::Error;
};

/// Two grids that must share a sampling window do not.
class GridMismatchError : public Error {
 public:
  using Error::Error;
};

/// Explicit diffusion step violates the stability bound.
class StabilityError : public Error {
 public:
  using Error::Error;
};

/// A requested evaluation point lies outside the grid window.
class DomainError : public Error {
 public:
  using Error::Error;
};

// -- multimode ----------------------------------------------------------------

/// Frequency grid does not span enough of the mode function.
class GridSpanError : public Error {
 public:
  using Error::Error;
};

/// Pump parameter at or above oscillation threshold.
class PumpRangeError : public Error {
 public:
  using Error::Error;
};

/// Noise spectrum contains negative samples.
class NegativeNoiseError : public Error {
 public:
  using Error::Error;
};

// -- metrics ------------------------------------------------------------------

/// Purity too close to zero for the normalized overlap to be defined.
class DegeneratePurityError : public Error {
 public:
  using Error::Error;
};

// -- cli / scenario -----------------------------------------------------------

/// Configuration file is malformed or fails validation; message carries the
/// offending field.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Figure name not recognized.
class UnknownFigureError : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

/// Sweep exceeds the point budget for the selected engine.
class BudgetExceededError : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

}  // namespace cvt
