#pragma once

#include <complex>
#include <cstddef>
#include <span>

// Data-parallel building blocks of the grid engine. Every kernel exists in a
// serial reference version and an OpenMP version; the dispatching overloads
// pick one according to the process-wide execution mode. The serial versions
// are kept as the ground truth the parallel ones are tested and benchmarked
// against.

namespace cvt::kernels {

enum class Exec { serial, parallel };

/// Process-wide default used by the dispatching overloads.
Exec default_execution();
void set_default_execution(Exec exec);

// out = (1 - t) * a + t * b
void lerp_serial(std::span<const double> a, std::span<const double> b, double t,
                 std::span<double> out);
void lerp_parallel(std::span<const double> a, std::span<const double> b, double t,
                   std::span<double> out);
void lerp(std::span<const double> a, std::span<const double> b, double t,
          std::span<double> out);

// x *= factor
void scale_serial(std::span<double> x, double factor);
void scale_parallel(std::span<double> x, double factor);
void scale(std::span<double> x, double factor);

double sum_serial(std::span<const double> x);
double sum_parallel(std::span<const double> x);
double sum(std::span<const double> x);

double sum_abs_serial(std::span<const double> x);
double sum_abs_parallel(std::span<const double> x);
double sum_abs(std::span<const double> x);

double dot_serial(std::span<const double> a, std::span<const double> b);
double dot_parallel(std::span<const double> a, std::span<const double> b);
double dot(std::span<const double> a, std::span<const double> b);

// a[i] *= b[i]
void cmul_serial(std::span<std::complex<double>> a,
                 std::span<const std::complex<double>> b);
void cmul_parallel(std::span<std::complex<double>> a,
                   std::span<const std::complex<double>> b);
void cmul(std::span<std::complex<double>> a,
          std::span<const std::complex<double>> b);

/// One explicit Euler step of the 2-D heat equation with 5-point central
/// differences; values beyond the window edge are taken as zero.
/// cx = kappa*dt/dx^2, cp = kappa*dt/dp^2, layout row-major (x slow, p fast).
void diffusion_step_serial(const double* in, double* out, std::size_t n_x,
                           std::size_t n_p, double cx, double cp);
void diffusion_step_parallel(const double* in, double* out, std::size_t n_x,
                             std::size_t n_p, double cx, double cp);
void diffusion_step(const double* in, double* out, std::size_t n_x,
                    std::size_t n_p, double cx, double cp);

/// Bilinear resample: out(i,j) = src(scale_x * x_i, scale_p * p_j) where the
/// source coordinate box is [sx0, sx0 + s_nx*sdx) x [sp0, ...); points outside
/// the source box read as zero.
struct ResampleSpec {
  const double* src;
  std::size_t s_nx, s_np;
  double sx0, sdx, sp0, sdp;
  double* dst;
  std::size_t d_nx, d_np;
  double dx0, ddx, dp0, ddp;
  double scale_x, scale_p;
};
void resample_bilinear_serial(const ResampleSpec& rs);
void resample_bilinear_parallel(const ResampleSpec& rs);
void resample_bilinear(const ResampleSpec& rs);

/// Sample f(x_i, p_j) over a row-major grid.
template <class F>
void sample_serial(double* out, std::size_t n_x, std::size_t n_p, double x0,
                   double dx, double p0, double dp, F&& f) {
  for (std::size_t i = 0; i < n_x; ++i) {
    const double x = x0 + static_cast<double>(i) * dx;
    double* row = out + i * n_p;
    for (std::size_t j = 0; j < n_p; ++j)
      row[j] = f(x, p0 + static_cast<double>(j) * dp);
  }
}

template <class F>
void sample_parallel(double* out, std::size_t n_x, std::size_t n_p, double x0,
                     double dx, double p0, double dp, F&& f) {
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n_x); ++i) {
    const double x = x0 + static_cast<double>(i) * dx;
    double* row = out + static_cast<std::size_t>(i) * n_p;
    for (std::size_t j = 0; j < n_p; ++j)
      row[j] = f(x, p0 + static_cast<double>(j) * dp);
  }
}

template <class F>
void sample(double* out, std::size_t n_x, std::size_t n_p, double x0, double dx,
            double p0, double dp, F&& f) {
  if (default_execution() == Exec::parallel)
    sample_parallel(out, n_x, n_p, x0, dx, p0, dp, std::forward<F>(f));
  else
    sample_serial(out, n_x, n_p, x0, dx, p0, dp, std::forward<F>(f));
}

}  // namespace cvt::kernels
