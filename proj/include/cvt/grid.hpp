#pragma once

#include <complex>
#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

#include "cvt/errors.hpp"

namespace cvt {

/// Rectangular phase-space sampling window. Samples sit at
/// x_i = x_min + i * dx with dx = (x_max - x_min) / n_x, i = 0 .. n_x - 1
/// (half-open: x_max itself is not sampled), and likewise for p. With even
/// counts and a symmetric window the origin falls exactly on a node.
/// Sample counts must be powers of two >= 64 (spectral convolution).
struct GridSpec {
  double x_min, x_max;
  double p_min, p_max;
  std::size_t n_x, n_p;

  GridSpec(double x_min_, double x_max_, double p_min_, double p_max_,
           std::size_t n_x_, std::size_t n_p_);

  double dx() const { return (x_max - x_min) / static_cast<double>(n_x); }
  double dp() const { return (p_max - p_min) / static_cast<double>(n_p); }
  double x(std::size_t i) const { return x_min + static_cast<double>(i) * dx(); }
  double p(std::size_t j) const { return p_min + static_cast<double>(j) * dp(); }
  std::size_t size() const { return n_x * n_p; }

  bool operator==(const GridSpec&) const = default;
};

/// Default window [-6, 6]^2 at 512 x 512; the CVT_DEFAULT_GRID environment
/// variable overrides the per-axis sample count.
GridSpec default_grid_spec();
GridSpec default_grid_spec(std::size_t n);

/// Discretized real-valued quasi-probability distribution. Immutable after
/// construction; all channel operations return new grids.
class WignerGrid {
 public:
  WignerGrid(GridSpec spec, std::vector<double> values);

  const GridSpec& spec() const { return spec_; }
  std::span<const double> values() const { return values_; }
  double at(std::size_t ix, std::size_t ip) const {
    return values_[ix * spec_.n_p + ip];
  }

  /// Riemann integral over the window (rectangle rule, spectrally accurate
  /// for smooth decaying samples).
  double integral() const;

  /// Largest absolute sample.
  double max_abs() const;

 private:
  GridSpec spec_;
  std::vector<double> values_;
};

/// Conjugate-domain sibling of WignerGrid: complex samples of the
/// characteristic function chi(u, v), u conjugate to x and v to p.
/// chi(0,0) = 1 expresses trace normalization.
class CharacteristicGrid {
 public:
  CharacteristicGrid(GridSpec spec, std::vector<std::complex<double>> values);

  const GridSpec& spec() const { return spec_; }
  std::span<const std::complex<double>> values() const { return values_; }
  std::complex<double> at(std::size_t iu, std::size_t iv) const {
    return values_[iu * spec_.n_p + iv];
  }

 private:
  GridSpec spec_;
  std::vector<std::complex<double>> values_;
};

// -- serialization ------------------------------------------------------------
// CSV: header row "x,p,w", one sample per row, row-major (x outer loop).
// Binary: little-endian f64 triples (min, max, count) for each axis, then the
// row-major f64 values; used for regression fixtures.

void write_csv(const WignerGrid& w, std::ostream& os);
WignerGrid read_csv(std::istream& is);
void write_csv(const WignerGrid& w, const std::filesystem::path& path);
WignerGrid read_csv(const std::filesystem::path& path);

void write_binary(const WignerGrid& w, std::ostream& os);
WignerGrid read_binary(std::istream& is);
void write_binary(const WignerGrid& w, const std::filesystem::path& path);
WignerGrid read_binary(const std::filesystem::path& path);

}  // namespace cvt
