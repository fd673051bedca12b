#include "cvt/kernels.hpp"

#include <atomic>
#include <cmath>
#include <cstdint>

namespace cvt::kernels {

namespace {
std::atomic<Exec> g_exec{Exec::parallel};
}

Exec default_execution() { return g_exec.load(std::memory_order_relaxed); }
void set_default_execution(Exec exec) { g_exec.store(exec, std::memory_order_relaxed); }

void lerp_serial(std::span<const double> a, std::span<const double> b, double t,
                 std::span<double> out) {
  const double u = 1.0 - t;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = u * a[i] + t * b[i];
}

void lerp_parallel(std::span<const double> a, std::span<const double> b, double t,
                   std::span<double> out) {
  const double u = 1.0 - t;
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(out.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = u * a[i] + t * b[i];
}

void lerp(std::span<const double> a, std::span<const double> b, double t,
          std::span<double> out) {
  default_execution() == Exec::parallel ? lerp_parallel(a, b, t, out)
                                        : lerp_serial(a, b, t, out);
}

void scale_serial(std::span<double> x, double factor) {
  for (double& v : x) v *= factor;
}

void scale_parallel(std::span<double> x, double factor) {
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(x.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) x[i] *= factor;
}

void scale(std::span<double> x, double factor) {
  default_execution() == Exec::parallel ? scale_parallel(x, factor)
                                        : scale_serial(x, factor);
}

double sum_serial(std::span<const double> x) {
  double acc = 0.0;
  for (double v : x) acc += v;
  return acc;
}

double sum_parallel(std::span<const double> x) {
  double acc = 0.0;
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(x.size());
#pragma omp parallel for schedule(static) reduction(+ : acc)
  for (std::ptrdiff_t i = 0; i < n; ++i) acc += x[i];
  return acc;
}

double sum(std::span<const double> x) {
  return default_execution() == Exec::parallel ? sum_parallel(x) : sum_serial(x);
}

double sum_abs_serial(std::span<const double> x) {
  double acc = 0.0;
  for (double v : x) acc += std::fabs(v);
  return acc;
}

double sum_abs_parallel(std::span<const double> x) {
  double acc = 0.0;
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(x.size());
#pragma omp parallel for schedule(static) reduction(+ : acc)
  for (std::ptrdiff_t i = 0; i < n; ++i) acc += std::fabs(x[i]);
  return acc;
}

double sum_abs(std::span<const double> x) {
  return default_execution() == Exec::parallel ? sum_abs_parallel(x)
                                               : sum_abs_serial(x);
}

double dot_serial(std::span<const double> a, std::span<const double> b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

double dot_parallel(std::span<const double> a, std::span<const double> b) {
  double acc = 0.0;
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(a.size());
#pragma omp parallel for schedule(static) reduction(+ : acc)
  for (std::ptrdiff_t i = 0; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

double dot(std::span<const double> a, std::span<const double> b) {
  return default_execution() == Exec::parallel ? dot_parallel(a, b)
                                               : dot_serial(a, b);
}

void cmul_serial(std::span<std::complex<double>> a,
                 std::span<const std::complex<double>> b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] *= b[i];
}

void cmul_parallel(std::span<std::complex<double>> a,
                   std::span<const std::complex<double>> b) {
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(a.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) a[i] *= b[i];
}

void cmul(std::span<std::complex<double>> a,
          std::span<const std::complex<double>> b) {
  default_execution() == Exec::parallel ? cmul_parallel(a, b) : cmul_serial(a, b);
}

namespace {

inline double stencil(const double* in, std::size_t n_x, std::size_t n_p,
                      double cx, double cp, std::size_t i, std::size_t j) {
  const std::size_t k = i * n_p + j;
  const double c = in[k];
  const double xm = i > 0 ? in[k - n_p] : 0.0;
  const double xp = i + 1 < n_x ? in[k + n_p] : 0.0;
  const double pm = j > 0 ? in[k - 1] : 0.0;
  const double pp = j + 1 < n_p ? in[k + 1] : 0.0;
  return c + cx * (xm - 2.0 * c + xp) + cp * (pm - 2.0 * c + pp);
}

}  // namespace

void diffusion_step_serial(const double* in, double* out, std::size_t n_x,
                           std::size_t n_p, double cx, double cp) {
  for (std::size_t i = 0; i < n_x; ++i)
    for (std::size_t j = 0; j < n_p; ++j)
      out[i * n_p + j] = stencil(in, n_x, n_p, cx, cp, i, j);
}

void diffusion_step_parallel(const double* in, double* out, std::size_t n_x,
                             std::size_t n_p, double cx, double cp) {
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n_x); ++i)
    for (std::size_t j = 0; j < n_p; ++j)
      out[static_cast<std::size_t>(i) * n_p + j] =
          stencil(in, n_x, n_p, cx, cp, static_cast<std::size_t>(i), j);
}

void diffusion_step(const double* in, double* out, std::size_t n_x,
                    std::size_t n_p, double cx, double cp) {
  default_execution() == Exec::parallel
      ? diffusion_step_parallel(in, out, n_x, n_p, cx, cp)
      : diffusion_step_serial(in, out, n_x, n_p, cx, cp);
}

namespace {

inline double bilinear_at(const ResampleSpec& rs, double x, double p) {
  const double fi = (x - rs.sx0) / rs.sdx;
  const double fj = (p - rs.sp0) / rs.sdp;
  if (fi < 0.0 || fj < 0.0) return 0.0;
  const auto i0 = static_cast<std::size_t>(fi);
  const auto j0 = static_cast<std::size_t>(fj);
  if (i0 + 1 >= rs.s_nx || j0 + 1 >= rs.s_np) return 0.0;
  const double tx = fi - static_cast<double>(i0);
  const double tp = fj - static_cast<double>(j0);
  const double* r0 = rs.src + i0 * rs.s_np + j0;
  const double* r1 = r0 + rs.s_np;
  const double a = r0[0] + tx * (r1[0] - r0[0]);
  const double b = r0[1] + tx * (r1[1] - r0[1]);
  return a + tp * (b - a);
}

inline void resample_row(const ResampleSpec& rs, std::size_t i) {
  const double x = rs.scale_x * (rs.dx0 + static_cast<double>(i) * rs.ddx);
  double* row = rs.dst + i * rs.d_np;
  for (std::size_t j = 0; j < rs.d_np; ++j) {
    const double p = rs.scale_p * (rs.dp0 + static_cast<double>(j) * rs.ddp);
    row[j] = bilinear_at(rs, x, p);
  }
}

}  // namespace

void resample_bilinear_serial(const ResampleSpec& rs) {
  for (std::size_t i = 0; i < rs.d_nx; ++i) resample_row(rs, i);
}

void resample_bilinear_parallel(const ResampleSpec& rs) {
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(rs.d_nx); ++i)
    resample_row(rs, static_cast<std::size_t>(i));
}

void resample_bilinear(const ResampleSpec& rs) {
  default_execution() == Exec::parallel ? resample_bilinear_parallel(rs)
                                        : resample_bilinear_serial(rs);
}

}  // namespace cvt::kernels
