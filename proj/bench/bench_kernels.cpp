// Timing comparison of the serial reference kernels against the OpenMP
// versions, plus one full grid-pipeline timing. Run with OMP_NUM_THREADS set
// to taste.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "cvt/analytic.hpp"
#include "cvt/grid.hpp"
#include "cvt/kernels.hpp"
#include "cvt/phase_space.hpp"

namespace {

using clock_type = std::chrono::steady_clock;

double time_ms(int reps, auto&& fn) {
  // one warmup, then best-of-reps
  fn();
  double best = 1e300;
  for (int i = 0; i < reps; ++i) {
    const auto t0 = clock_type::now();
    fn();
    const auto t1 = clock_type::now();
    best = std::min(best, std::chrono::duration<double, std::milli>(t1 - t0).count());
  }
  return best;
}

void report(const char* name, double serial_ms, double parallel_ms) {
  std::printf("%-28s serial %9.3f ms   parallel %9.3f ms   speedup %5.2fx\n",
              name, serial_ms, parallel_ms, serial_ms / parallel_ms);
}

}  // namespace

int main() {
#ifdef _OPENMP
  std::printf("OpenMP threads: %d\n", omp_get_max_threads());
#else
  std::printf("built without OpenMP; both columns run serially\n");
#endif

  const std::size_t n = 1024;
  const std::size_t len = n * n;
  std::vector<double> a(len), b(len), out(len);
  for (std::size_t i = 0; i < len; ++i) {
    a[i] = std::sin(static_cast<double>(i) * 1e-4);
    b[i] = std::cos(static_cast<double>(i) * 1e-4);
  }

  report("sample reference 1024^2",
         time_ms(5, [&] {
           cvt::kernels::sample_serial(out.data(), n, n, -6.0, 12.0 / n, -6.0,
                                       12.0 / n, [](double x, double p) {
                                         return cvt::analytic::ref_wigner_value(0.28, x, p);
                                       });
         }),
         time_ms(5, [&] {
           cvt::kernels::sample_parallel(out.data(), n, n, -6.0, 12.0 / n, -6.0,
                                         12.0 / n, [](double x, double p) {
                                           return cvt::analytic::ref_wigner_value(0.28, x, p);
                                         });
         }));

  report("lerp 1024^2",
         time_ms(10, [&] { cvt::kernels::lerp_serial(a, b, 0.25, out); }),
         time_ms(10, [&] { cvt::kernels::lerp_parallel(a, b, 0.25, out); }));

  report("sum 1024^2",
         time_ms(10, [&] { (void)cvt::kernels::sum_serial(a); }),
         time_ms(10, [&] { (void)cvt::kernels::sum_parallel(a); }));

  report("dot 1024^2",
         time_ms(10, [&] { (void)cvt::kernels::dot_serial(a, b); }),
         time_ms(10, [&] { (void)cvt::kernels::dot_parallel(a, b); }));

  report("diffusion step 1024^2",
         time_ms(10, [&] {
           cvt::kernels::diffusion_step_serial(a.data(), out.data(), n, n, 0.2, 0.2);
         }),
         time_ms(10, [&] {
           cvt::kernels::diffusion_step_parallel(a.data(), out.data(), n, n, 0.2, 0.2);
         }));

  {
    cvt::kernels::ResampleSpec rs;
    rs.src = a.data();
    rs.s_nx = rs.s_np = n;
    rs.sx0 = rs.sp0 = -6.0;
    rs.sdx = rs.sdp = 12.0 / n;
    rs.dst = out.data();
    rs.d_nx = rs.d_np = n;
    rs.dx0 = rs.dp0 = -6.0;
    rs.ddx = rs.ddp = 12.0 / n;
    rs.scale_x = rs.scale_p = 1.0 / std::sqrt(0.8);
    report("bilinear resample 1024^2",
           time_ms(10, [&] { cvt::kernels::resample_bilinear_serial(rs); }),
           time_ms(10, [&] { cvt::kernels::resample_bilinear_parallel(rs); }));
  }

  // full pipeline at the default grid, dispatched per execution mode
  const cvt::GridSpec spec = cvt::default_grid_spec();
  const cvt::InputStateParams params(0.28, 0.80, 0.013);
  auto pipeline = [&] {
    cvt::WignerGrid w = cvt::phase::wigner_reference(params.s, spec);
    w = cvt::phase::mix(w, cvt::phase::wigner_squeezed_vacuum(params.s, spec),
                        params.epsilon);
    w = cvt::phase::apply_loss(w, params.eta);
    w = cvt::phase::teleport(w, 0.795);
    return cvt::phase::origin_value(w);
  };
  cvt::kernels::set_default_execution(cvt::kernels::Exec::serial);
  const double pipe_serial = time_ms(3, pipeline);
  cvt::kernels::set_default_execution(cvt::kernels::Exec::parallel);
  const double pipe_parallel = time_ms(3, pipeline);
  report("mix+loss+teleport 512^2", pipe_serial, pipe_parallel);

  return 0;
}
