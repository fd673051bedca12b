#include "fft_util.hpp"

#include <fftw3.h>

#include <algorithm>
#include <mutex>
#include <vector>

namespace cvt::fft {

namespace {
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace

void forward_r2c(const double* in, std::complex<double>* out, std::size_t n0,
                 std::size_t n1) {
  fftw_plan plan;
  {
    std::lock_guard lock(planner_mutex());
    plan = fftw_plan_dft_r2c_2d(static_cast<int>(n0), static_cast<int>(n1),
                                const_cast<double*>(in),
                                reinterpret_cast<fftw_complex*>(out),
                                FFTW_ESTIMATE | FFTW_PRESERVE_INPUT);
  }
  fftw_execute(plan);
  std::lock_guard lock(planner_mutex());
  fftw_destroy_plan(plan);
}

void inverse_c2r(const std::complex<double>* in, double* out, std::size_t n0,
                 std::size_t n1) {
  // c2r destroys its input even with FFTW_PRESERVE_INPUT; work on a copy.
  const std::size_t spec_len = n0 * (n1 / 2 + 1);
  std::vector<std::complex<double>> scratch(in, in + spec_len);
  fftw_plan plan;
  {
    std::lock_guard lock(planner_mutex());
    plan = fftw_plan_dft_c2r_2d(static_cast<int>(n0), static_cast<int>(n1),
                                reinterpret_cast<fftw_complex*>(scratch.data()),
                                out, FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  std::lock_guard lock(planner_mutex());
  fftw_destroy_plan(plan);
}

namespace {

void c2c(const std::complex<double>* in, std::complex<double>* out, std::size_t n0,
         std::size_t n1, int sign) {
  if (out != in) std::copy(in, in + n0 * n1, out);
  fftw_plan plan;
  {
    std::lock_guard lock(planner_mutex());
    plan = fftw_plan_dft_2d(static_cast<int>(n0), static_cast<int>(n1),
                            reinterpret_cast<fftw_complex*>(out),
                            reinterpret_cast<fftw_complex*>(out), sign,
                            FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  std::lock_guard lock(planner_mutex());
  fftw_destroy_plan(plan);
}

}  // namespace

void forward_c2c(const std::complex<double>* in, std::complex<double>* out,
                 std::size_t n0, std::size_t n1) {
  c2c(in, out, n0, n1, FFTW_FORWARD);
}

void inverse_c2c(const std::complex<double>* in, std::complex<double>* out,
                 std::size_t n0, std::size_t n1) {
  c2c(in, out, n0, n1, FFTW_BACKWARD);
}

}  // namespace cvt::fft
