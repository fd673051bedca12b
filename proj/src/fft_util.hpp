#pragma once

#include <complex>
#include <cstddef>
#include <vector>

// Thin FFTW wrappers. FFTW's planner is not thread-safe; these helpers
// serialize planning behind a mutex and are otherwise safe to call
// concurrently.

namespace cvt::fft {

/// In-place 2-D real <-> half-complex transforms for one n0 x n1 field.
/// Layout: real row-major n0 x n1; spectrum row-major n0 x (n1/2 + 1).
void forward_r2c(const double* in, std::complex<double>* out, std::size_t n0,
                 std::size_t n1);
void inverse_c2r(const std::complex<double>* in, double* out, std::size_t n0,
                 std::size_t n1);  // unnormalized (scale by 1/(n0*n1) yourself)

/// Full complex 2-D DFT, in place over a copy: out may alias in.
void forward_c2c(const std::complex<double>* in, std::complex<double>* out,
                 std::size_t n0, std::size_t n1);
void inverse_c2c(const std::complex<double>* in, std::complex<double>* out,
                 std::size_t n0, std::size_t n1);  // unnormalized

}  // namespace cvt::fft
