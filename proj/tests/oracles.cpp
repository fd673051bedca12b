#include "oracles.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace oracles {

namespace {

constexpr double kPi = std::numbers::pi;

/// psi(x) = sum_n c_n phi_n(x) with the harmonic-oscillator eigenfunctions of
/// vacuum variance 1/2, evaluated by the stable normalized recursion.
double psi(const std::vector<double>& c, double x) {
  double phi_prev = std::pow(kPi, -0.25) * std::exp(-0.5 * x * x);
  double out = c.empty() ? 0.0 : c[0] * phi_prev;
  if (c.size() < 2) return out;
  double phi = std::sqrt(2.0) * x * phi_prev;
  out += c[1] * phi;
  for (std::size_t n = 1; n + 1 < c.size(); ++n) {
    const double nd = static_cast<double>(n);
    const double next = std::sqrt(2.0 / (nd + 1.0)) * x * phi -
                        std::sqrt(nd / (nd + 1.0)) * phi_prev;
    phi_prev = phi;
    phi = next;
    out += c[n + 1] * phi;
  }
  return out;
}

}  // namespace

std::vector<double> squeezed_photon_fock_coeffs(double s, std::size_t n_max) {
  // S(s)|1> = sech(s)^{3/2} sum_k t^k sqrt((2k+1)!) / (2^k k!) |2k+1>,
  // t = -tanh(s) for squeezing along x in this phase convention.
  std::vector<double> c(n_max + 1, 0.0);
  const double t = -std::tanh(s);
  const double sech32 = std::pow(1.0 / std::cosh(s), 1.5);
  double tk = 1.0;           // t^k
  double ratio = 1.0;        // sqrt((2k+1)!) / (2^k k!)
  for (std::size_t k = 0; 2 * k + 1 <= n_max; ++k) {
    if (k > 0) {
      const double kd = static_cast<double>(k);
      tk *= t;
      // sqrt((2k+1)!/(2k-1)!) / (2 k) = sqrt((2k)(2k+1)) / (2k)
      ratio *= std::sqrt(2.0 * kd * (2.0 * kd + 1.0)) / (2.0 * kd);
    }
    c[2 * k + 1] = sech32 * tk * ratio;
  }
  return c;
}

double fock_wigner(double s, double q, double p, std::size_t n_max) {
  const std::vector<double> c = squeezed_photon_fock_coeffs(s, n_max);
  // composite Simpson over y in [-14, 14]; the integrand decays like
  // exp(-y^2) once the Hermite functions pass their turning points
  const std::size_t n = 4000;  // even
  const double a = -14.0, b = 14.0;
  const double h = (b - a) / static_cast<double>(n);
  auto f = [&](double y) {
    return psi(c, q + y) * psi(c, q - y) * std::cos(2.0 * p * y);
  };
  double acc = f(a) + f(b);
  for (std::size_t i = 1; i < n; ++i)
    acc += f(a + h * static_cast<double>(i)) * (i % 2 == 1 ? 4.0 : 2.0);
  return acc * h / 3.0 / kPi;
}

double fock_q2_moment(double s, std::size_t n_max) {
  const std::vector<double> c = squeezed_photon_fock_coeffs(s, n_max);
  // q^2 = (a^2 + a^+2 + 2 n + 1) / 2
  double acc = 0.0;
  for (std::size_t n = 0; n < c.size(); ++n)
    acc += c[n] * c[n] * (static_cast<double>(n) + 0.5);
  for (std::size_t n = 0; n + 2 < c.size(); ++n)
    acc += c[n] * c[n + 2] *
           std::sqrt(static_cast<double>(n + 1) * static_cast<double>(n + 2));
  return acc;
}

namespace {

double simpson_rec(const std::function<double(double)>& f, double a, double m,
                   double b, double fa, double fm, double fb, double whole,
                   double tol, int depth) {
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0) throw std::runtime_error("adaptive_simpson: depth exhausted");
  if (std::fabs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return simpson_rec(f, a, lm, m, fa, flm, fm, left, tol / 2.0, depth - 1) +
         simpson_rec(f, m, rm, b, fm, frm, fb, right, tol / 2.0, depth - 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol) {
  const double m = 0.5 * (a + b);
  const double fa = f(a), fm = f(m), fb = f(b);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson_rec(f, a, m, b, fa, fm, fb, whole, tol, 60);
}

double bisect(const std::function<double(double)>& f, double lo, double hi,
              double tol) {
  double flo = f(lo), fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0.0) == (fhi > 0.0))
    throw std::runtime_error("bisect: no sign change on the bracket");
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    const double fmid = f(mid);
    if (fmid == 0.0) return mid;
    if ((fmid > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fmid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

cvt::WignerGrid sampled_gaussian(double sigma, const cvt::GridSpec& spec) {
  std::vector<double> vals(spec.size());
  const double norm = 1.0 / (2.0 * kPi * sigma * sigma);
  const double inv = 1.0 / (2.0 * sigma * sigma);
  for (std::size_t i = 0; i < spec.n_x; ++i)
    for (std::size_t j = 0; j < spec.n_p; ++j) {
      const double x = spec.x(i), p = spec.p(j);
      vals[i * spec.n_p + j] = norm * std::exp(-(x * x + p * p) * inv);
    }
  return cvt::WignerGrid(spec, std::move(vals));
}

}  // namespace oracles
