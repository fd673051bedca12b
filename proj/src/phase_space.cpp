#include "cvt/phase_space.hpp"

#include <cmath>
#include <complex>
#include <fmt/format.h>
#include <numbers>
#include <utility>

#include "cvt/kernels.hpp"
#include "fft_util.hpp"

namespace cvt::phase {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kMassTol = 1e-3;        // window may clip at most this much mass
constexpr double kLeakTol = 1e-6;        // convolution spill past the window
constexpr double kBoundTol = 1e-9;       // slack on |W| <= 1/pi

void check_state(const WignerGrid& w, const char* what) {
  const double mass = w.integral();
  if (std::fabs(mass - 1.0) > kMassTol)
    throw DomainTooSmallError(
        fmt::format("{}: window clips probability mass (integral = {:.6f}; "
                    "enlarge the grid extents)",
                    what, mass));
  if (w.max_abs() > 1.0 / kPi + kBoundTol)
    throw DomainTooSmallError(fmt::format(
        "{}: samples exceed the physical bound 1/pi (max |W| = {:.6f})", what,
        w.max_abs()));
}

template <class F>
WignerGrid sample_state(const GridSpec& spec, const char* what, F&& f) {
  std::vector<double> vals(spec.size());
  kernels::sample(vals.data(), spec.n_x, spec.n_p, spec.x_min, spec.dx(),
                  spec.p_min, spec.dp(), std::forward<F>(f));
  WignerGrid w(spec, std::move(vals));
  check_state(w, what);
  return w;
}

void require_unit_interval(double eta) {
  if (!(eta > 0.0 && eta <= 1.0))
    throw InvalidParameter(fmt::format("eta must lie in (0, 1], got {}", eta));
}

// Closed-form building blocks of the model states. With a = e^{2s},
// b = e^{-2s}, c_a = 1 + 2 a w2, c_b = 1 + 2 b w2:
//   gauss_part(x,p)  = (W_false o G_w)(x,p)
//   photon_part(x,p) = (W_ref   o G_w)(x,p)
struct ConvolvedForms {
  double a, b, ca, cb, w2;

  ConvolvedForms(double s, double w2_) : w2(w2_) {
    a = std::exp(2.0 * s);
    b = std::exp(-2.0 * s);
    ca = 1.0 + 2.0 * a * w2;
    cb = 1.0 + 2.0 * b * w2;
  }

  double gauss_part(double x, double p) const {
    return std::exp(-a * x * x / ca - b * p * p / cb) / (kPi * std::sqrt(ca * cb));
  }

  double photon_part(double x, double p) const {
    const double e = std::exp(-a * x * x / ca - b * p * p / cb);
    const double tx = 2.0 * a * (w2 / (ca * std::sqrt(ca)) + x * x / (ca * ca * std::sqrt(ca)));
    const double tp = 2.0 * b * (w2 / (cb * std::sqrt(cb)) + p * p / (cb * cb * std::sqrt(cb)));
    return (tx / std::sqrt(cb) + tp / std::sqrt(ca) - 1.0 / std::sqrt(ca * cb)) * e / kPi;
  }
};

}  // namespace

WignerGrid wigner_vacuum(const GridSpec& spec) {
  return sample_state(spec, "wigner_vacuum", [](double x, double p) {
    return std::exp(-(x * x + p * p)) / kPi;
  });
}

WignerGrid wigner_reference(double s, const GridSpec& spec) {
  if (s < 0.0 || !std::isfinite(s))
    throw InvalidParameter(fmt::format("s must be >= 0, got {}", s));
  return sample_state(spec, "wigner_reference", [s](double x, double p) {
    return analytic::ref_wigner_value(s, x, p);
  });
}

WignerGrid wigner_squeezed_vacuum(double s, const GridSpec& spec) {
  if (s < 0.0 || !std::isfinite(s))
    throw InvalidParameter(fmt::format("s must be >= 0, got {}", s));
  const double e2s = std::exp(2.0 * s);
  const double em2s = std::exp(-2.0 * s);
  return sample_state(spec, "wigner_squeezed_vacuum", [=](double x, double p) {
    return std::exp(-(e2s * x * x + em2s * p * p)) / kPi;
  });
}

WignerGrid model_input_state(const InputStateParams& params, const GridSpec& spec) {
  const DerivedWidths dw = derived_widths(params.eta, 0.0);
  const ConvolvedForms forms(params.s, dw.lambda * dw.lambda);
  const double inv_eta = 1.0 / params.eta;
  const double scale = 1.0 / std::sqrt(params.eta);
  const double eps = params.epsilon;
  return sample_state(spec, "model_input_state", [=](double x, double p) {
    const double xs = x * scale, ps = p * scale;
    return inv_eta * ((1.0 - eps) * forms.photon_part(xs, ps) +
                      eps * forms.gauss_part(xs, ps));
  });
}

WignerGrid model_output_state(const InputStateParams& params, double r,
                              const GridSpec& spec) {
  const DerivedWidths dw = derived_widths(params.eta, r);
  const ConvolvedForms forms(params.s, dw.lambda_prime * dw.lambda_prime);
  const double inv_eta = 1.0 / params.eta;
  const double scale = 1.0 / std::sqrt(params.eta);
  const double eps = params.epsilon;
  return sample_state(spec, "model_output_state", [=](double x, double p) {
    const double xs = x * scale, ps = p * scale;
    return inv_eta * ((1.0 - eps) * forms.photon_part(xs, ps) +
                      eps * forms.gauss_part(xs, ps));
  });
}

// -- spectral convolution -----------------------------------------------------

namespace {

// Convolution working set: the state embedded centered in a 2x zero-padded
// window, convolved in place. Padded coordinates run over
// [x_min - width/2, x_max + width/2).
struct Padded {
  std::vector<double> vals;  // row-major 2 n_x x 2 n_p
  std::size_t n_x, n_p;      // original counts
  double x0, dx, p0, dp;     // padded window origin and steps
};

Padded convolve_padded(const WignerGrid& w, double sigma) {
  const GridSpec& g = w.spec();
  const std::size_t nx = g.n_x, np = g.n_p;
  const std::size_t Nx = 2 * nx, Np = 2 * np;
  const double dx = g.dx(), dp = g.dp();

  Padded out;
  out.n_x = nx;
  out.n_p = np;
  out.dx = dx;
  out.dp = dp;
  out.x0 = g.x_min - 0.5 * (g.x_max - g.x_min);
  out.p0 = g.p_min - 0.5 * (g.p_max - g.p_min);
  out.vals.assign(Nx * Np, 0.0);
  for (std::size_t i = 0; i < nx; ++i) {
    const double* src = w.values().data() + i * np;
    double* dst = out.vals.data() + (i + nx / 2) * Np + np / 2;
    std::copy(src, src + np, dst);
  }
  if (sigma == 0.0) return out;

  // Gaussian kernel sampled at wrapped displacements, normalized to unit
  // discrete mass so the convolution preserves the total sum exactly.
  std::vector<double> kernel(Nx * Np);
  const double inv2s2 = 1.0 / (2.0 * sigma * sigma);
  kernels::sample(kernel.data(), Nx, Np, 0.0, 1.0, 0.0, 1.0,
                  [&](double fi, double fj) {
                    const double di = (fi < static_cast<double>(nx) ? fi : fi - static_cast<double>(Nx)) * dx;
                    const double dj = (fj < static_cast<double>(np) ? fj : fj - static_cast<double>(Np)) * dp;
                    return std::exp(-(di * di + dj * dj) * inv2s2);
                  });
  const double ksum = kernels::sum(kernel);
  kernels::scale(kernel, 1.0 / ksum);

  const std::size_t spec_len = Nx * (Np / 2 + 1);
  std::vector<std::complex<double>> wf(spec_len), kf(spec_len);
  fft::forward_r2c(out.vals.data(), wf.data(), Nx, Np);
  fft::forward_r2c(kernel.data(), kf.data(), Nx, Np);
  kernels::cmul(wf, kf);
  fft::inverse_c2r(wf.data(), out.vals.data(), Nx, Np);
  kernels::scale(out.vals, 1.0 / static_cast<double>(Nx * Np));
  return out;
}

/// Wraparound monitor: |mass| in the outer half of the padding frame (past
/// 1.5x the window half-extent). Anything reaching that band is about to
/// alias on the padded torus; ordinary spread into the inner pad band is
/// window truncation, which the normalization tolerances govern instead.
double pad_leakage(const Padded& pw) {
  const std::size_t Nx = 2 * pw.n_x, Np = 2 * pw.n_p;
  const std::size_t x_lo = pw.n_x / 4, x_hi = pw.n_x / 4 + pw.n_x + pw.n_x / 2;
  const std::size_t p_lo = pw.n_p / 4, p_hi = pw.n_p / 4 + pw.n_p + pw.n_p / 2;
  double acc = 0.0;
  for (std::size_t i = 0; i < Nx; ++i) {
    const bool x_inside = i >= x_lo && i < x_hi;
    const double* row = pw.vals.data() + i * Np;
    for (std::size_t j = 0; j < Np; ++j) {
      const bool inside = x_inside && j >= p_lo && j < p_hi;
      if (!inside) acc += std::fabs(row[j]);
    }
  }
  return acc * pw.dx * pw.dp;
}

WignerGrid crop(const Padded& pw, const GridSpec& spec) {
  std::vector<double> vals(spec.size());
  const std::size_t Np = 2 * pw.n_p;
  for (std::size_t i = 0; i < pw.n_x; ++i) {
    const double* src = pw.vals.data() + (i + pw.n_x / 2) * Np + pw.n_p / 2;
    std::copy(src, src + pw.n_p, vals.data() + i * pw.n_p);
  }
  return WignerGrid(spec, std::move(vals));
}

}  // namespace

WignerGrid convolve_gaussian(const WignerGrid& w, double sigma) {
  if (!(sigma >= 0.0) || !std::isfinite(sigma))
    throw InvalidParameter(fmt::format("kernel sigma must be >= 0, got {}", sigma));
  if (sigma == 0.0) return w;
  Padded pw = convolve_padded(w, sigma);
  const double leak = pad_leakage(pw);
  if (leak > kLeakTol)
    throw AliasingError(
        fmt::format("convolution spreads {:.3e} of mass into the outer "
                    "padding band (> {:.0e}); wraparound imminent, enlarge "
                    "the grid extents",
                    leak, kLeakTol));
  return crop(pw, w.spec());
}

WignerGrid apply_loss(const WignerGrid& w, double eta) {
  require_unit_interval(eta);
  if (eta == 1.0) return w;
  const double lambda = std::sqrt((1.0 - eta) / (2.0 * eta));
  const Padded pw = convolve_padded(w, lambda);

  const GridSpec& g = w.spec();
  std::vector<double> vals(g.size());
  kernels::ResampleSpec rs;
  rs.src = pw.vals.data();
  rs.s_nx = 2 * pw.n_x;
  rs.s_np = 2 * pw.n_p;
  rs.sx0 = pw.x0;
  rs.sdx = pw.dx;
  rs.sp0 = pw.p0;
  rs.sdp = pw.dp;
  rs.dst = vals.data();
  rs.d_nx = g.n_x;
  rs.d_np = g.n_p;
  rs.dx0 = g.x_min;
  rs.ddx = g.dx();
  rs.dp0 = g.p_min;
  rs.ddp = g.dp();
  rs.scale_x = rs.scale_p = 1.0 / std::sqrt(eta);
  kernels::resample_bilinear(rs);
  kernels::scale(vals, 1.0 / eta);

  // Explicit renormalization: the rescaling is the one non-convolution map,
  // and its interpolation drift must not read as physics.
  const double mass = kernels::sum(vals) * g.dx() * g.dp();
  if (std::fabs(mass - 1.0) > kMassTol)
    throw DomainTooSmallError(fmt::format(
        "apply_loss: resampled mass {:.6f} deviates from 1 beyond tolerance", mass));
  kernels::scale(vals, 1.0 / mass);
  return WignerGrid(g, std::move(vals));
}

WignerGrid teleport(const WignerGrid& w, double r) {
  if (std::isnan(r)) throw InvalidParameter("EPR parameter must not be NaN");
  const double sigma = std::exp(-r);  // r = +inf -> sigma = 0 -> identity
  return convolve_gaussian(w, sigma);
}

WignerGrid mix(const WignerGrid& a, const WignerGrid& b, double epsilon) {
  if (a.spec() != b.spec())
    throw GridMismatchError("mix: grids sample different windows");
  if (!(epsilon >= 0.0 && epsilon <= 1.0))
    throw InvalidParameter(fmt::format("epsilon must lie in [0, 1], got {}", epsilon));
  std::vector<double> vals(a.spec().size());
  kernels::lerp(a.values(), b.values(), epsilon, vals);
  return WignerGrid(a.spec(), std::move(vals));
}

// -- evaluation ---------------------------------------------------------------

namespace {

inline double catmull_rom(double pm1, double p0, double p1, double p2, double t) {
  return 0.5 * (2.0 * p0 + (-pm1 + p1) * t + (2.0 * pm1 - 5.0 * p0 + 4.0 * p1 - p2) * t * t +
                (-pm1 + 3.0 * p0 - 3.0 * p1 + p2) * t * t * t);
}

}  // namespace

double value_at(const WignerGrid& w, double x, double p) {
  const GridSpec& g = w.spec();
  const double fi = (x - g.x_min) / g.dx();
  const double fj = (p - g.p_min) / g.dp();
  const double nx = static_cast<double>(g.n_x), np = static_cast<double>(g.n_p);
  if (!(fi >= 1.0 && fi <= nx - 3.0 && fj >= 1.0 && fj <= np - 3.0))
    throw DomainError(fmt::format(
        "point ({}, {}) lies outside the interpolable window of the grid", x, p));
  const auto i0 = static_cast<std::size_t>(fi);
  const auto j0 = static_cast<std::size_t>(fj);
  const double tx = fi - static_cast<double>(i0);
  const double tp = fj - static_cast<double>(j0);
  double col[4];
  for (int di = -1; di <= 2; ++di) {
    const std::size_t i = i0 + static_cast<std::size_t>(di + 1) - 1;
    col[di + 1] = catmull_rom(w.at(i, j0 - 1), w.at(i, j0), w.at(i, j0 + 1),
                              w.at(i, j0 + 2), tp);
  }
  return catmull_rom(col[0], col[1], col[2], col[3], tx);
}

double origin_value(const WignerGrid& w) { return value_at(w, 0.0, 0.0); }

// -- diffusion ----------------------------------------------------------------

WignerGrid evolve_diffusion(const WignerGrid& w, double kappa, double t,
                            std::size_t steps) {
  if (kappa < 0.0 || !std::isfinite(kappa))
    throw InvalidParameter(fmt::format("kappa must be >= 0, got {}", kappa));
  if (t < 0.0 || !std::isfinite(t))
    throw InvalidParameter(fmt::format("t must be >= 0, got {}", t));
  if (t == 0.0 || kappa == 0.0) return w;
  if (steps == 0) throw InvalidParameter("steps must be > 0 for t > 0");

  const GridSpec& g = w.spec();
  const double dt = t / static_cast<double>(steps);
  const double bound = 0.25 * std::min(g.dx() * g.dx(), g.dp() * g.dp());
  if (kappa * dt > bound)
    throw StabilityError(
        fmt::format("explicit step violates stability: kappa dt = {:.3e} > "
                    "0.25 min(dx^2, dp^2) = {:.3e}; increase steps",
                    kappa * dt, bound));

  const double cx = kappa * dt / (g.dx() * g.dx());
  const double cp = kappa * dt / (g.dp() * g.dp());
  std::vector<double> cur(w.values().begin(), w.values().end());
  std::vector<double> nxt(cur.size());
  for (std::size_t n = 0; n < steps; ++n) {
    kernels::diffusion_step(cur.data(), nxt.data(), g.n_x, g.n_p, cx, cp);
    cur.swap(nxt);
  }
  return WignerGrid(g, std::move(cur));
}

// -- characteristic function --------------------------------------------------

namespace {

GridSpec conjugate_spec(const GridSpec& g) {
  const double u_half = kPi / g.dx();
  const double v_half = kPi / g.dp();
  return GridSpec(-u_half, u_half, -v_half, v_half, g.n_x, g.n_p);
}

// Per-axis phase factors exp(-i sign * k_m * origin), delivered in the
// fftshifted order the conjugate grid uses.
std::vector<std::complex<double>> axis_phases(std::size_t n, double dk,
                                              double origin, double sign) {
  std::vector<std::complex<double>> ph(n);
  const auto half = static_cast<std::ptrdiff_t>(n / 2);
  for (std::size_t m = 0; m < n; ++m) {
    const double k = dk * static_cast<double>(static_cast<std::ptrdiff_t>(m) - half);
    ph[m] = std::polar(1.0, sign * k * origin);
  }
  return ph;
}

}  // namespace

CharacteristicGrid to_characteristic(const WignerGrid& w) {
  const GridSpec& g = w.spec();
  const GridSpec cs = conjugate_spec(g);
  const std::size_t nx = g.n_x, np = g.n_p;

  std::vector<std::complex<double>> buf(nx * np);
  for (std::size_t i = 0; i < nx * np; ++i) buf[i] = w.values()[i];
  fft::forward_c2c(buf.data(), buf.data(), nx, np);

  // fftshift both axes and attach the window-origin phases and the area
  // element so the result is the continuum transform sampled at (u_m, v_k).
  const auto phx = axis_phases(nx, cs.dx(), g.x_min, -1.0);
  const auto php = axis_phases(np, cs.dp(), g.p_min, -1.0);
  const double area = g.dx() * g.dp();
  std::vector<std::complex<double>> out(nx * np);
  for (std::size_t m = 0; m < nx; ++m) {
    const std::size_t src_m = (m + nx / 2) % nx;
    for (std::size_t k = 0; k < np; ++k) {
      const std::size_t src_k = (k + np / 2) % np;
      out[m * np + k] = area * phx[m] * php[k] * buf[src_m * np + src_k];
    }
  }
  return CharacteristicGrid(cs, std::move(out));
}

WignerGrid from_characteristic(const CharacteristicGrid& chi) {
  const GridSpec& cs = chi.spec();
  const std::size_t nx = cs.n_x, np = cs.n_p;
  const double du = cs.dx(), dv = cs.dp();
  const double dx = 2.0 * kPi / (du * static_cast<double>(nx));
  const double dp = 2.0 * kPi / (dv * static_cast<double>(np));
  const double x_min = -0.5 * dx * static_cast<double>(nx);
  const double p_min = -0.5 * dp * static_cast<double>(np);
  GridSpec g(x_min, -x_min, p_min, -p_min, nx, np);

  // undo the forward phases, unshift, inverse DFT
  const auto phx = axis_phases(nx, du, x_min, +1.0);
  const auto php = axis_phases(np, dv, p_min, +1.0);
  std::vector<std::complex<double>> buf(nx * np);
  for (std::size_t m = 0; m < nx; ++m) {
    const std::size_t dst_m = (m + nx / 2) % nx;
    for (std::size_t k = 0; k < np; ++k) {
      const std::size_t dst_k = (k + np / 2) % np;
      buf[dst_m * np + dst_k] = phx[m] * php[k] * chi.at(m, k);
    }
  }
  fft::inverse_c2c(buf.data(), buf.data(), nx, np);
  const double scale = du * dv / (4.0 * kPi * kPi);
  std::vector<double> vals(nx * np);
  for (std::size_t i = 0; i < nx * np; ++i) vals[i] = scale * buf[i].real();
  return WignerGrid(g, std::move(vals));
}

CharacteristicGrid apply_quadrature_noise_factor(const CharacteristicGrid& chi,
                                                 double gamma, ConjugateAxis axis) {
  if (gamma < 0.0 || !std::isfinite(gamma))
    throw InvalidParameter(fmt::format("gamma must be >= 0, got {}", gamma));
  const GridSpec& cs = chi.spec();
  std::vector<std::complex<double>> vals(chi.values().begin(), chi.values().end());
  const double g2 = gamma * gamma;
  for (std::size_t m = 0; m < cs.n_x; ++m) {
    for (std::size_t k = 0; k < cs.n_p; ++k) {
      const double c = axis == ConjugateAxis::u ? cs.x(m) : cs.p(k);
      vals[m * cs.n_p + k] *= std::exp(-0.5 * g2 * c * c);
    }
  }
  return CharacteristicGrid(cs, std::move(vals));
}

// -- diagnostics ----------------------------------------------------------------

std::vector<double> marginal_x(const WignerGrid& w) {
  const GridSpec& g = w.spec();
  std::vector<double> m(g.n_x, 0.0);
  for (std::size_t i = 0; i < g.n_x; ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < g.n_p; ++j) acc += w.at(i, j);
    m[i] = acc * g.dp();
  }
  return m;
}

std::vector<double> marginal_p(const WignerGrid& w) {
  const GridSpec& g = w.spec();
  std::vector<double> m(g.n_p, 0.0);
  for (std::size_t j = 0; j < g.n_p; ++j) {
    double acc = 0.0;
    for (std::size_t i = 0; i < g.n_x; ++i) acc += w.at(i, j);
    m[j] = acc * g.dx();
  }
  return m;
}

double moment_x2(const WignerGrid& w) {
  const GridSpec& g = w.spec();
  const auto mx = marginal_x(w);
  double acc = 0.0;
  for (std::size_t i = 0; i < g.n_x; ++i) acc += g.x(i) * g.x(i) * mx[i];
  return acc * g.dx();
}

double moment_p2(const WignerGrid& w) {
  const GridSpec& g = w.spec();
  const auto mp = marginal_p(w);
  double acc = 0.0;
  for (std::size_t j = 0; j < g.n_p; ++j) acc += g.p(j) * g.p(j) * mp[j];
  return acc * g.dp();
}

}  // namespace cvt::phase
