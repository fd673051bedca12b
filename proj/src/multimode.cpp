#include "cvt/multimode.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fmt/format.h>
#include <fstream>
#include <numbers>

namespace cvt::multimode {

namespace {

constexpr double kPi = std::numbers::pi;

void check_grid(std::span<const double> omega, std::size_t n_values,
                const char* what) {
  if (omega.size() < 2)
    throw InvalidParameter(fmt::format("{}: need at least two samples", what));
  if (omega.size() != n_values)
    throw InvalidParameter(fmt::format("{}: {} grid points vs {} samples", what,
                                       omega.size(), n_values));
  for (std::size_t i = 1; i < omega.size(); ++i)
    if (!(omega[i] > omega[i - 1]))
      throw InvalidParameter(
          fmt::format("{}: omega grid must be strictly increasing", what));
}

void require_same_grid(std::span<const double> a, std::span<const double> b,
                       const char* what) {
  if (a.size() != b.size() || !std::equal(a.begin(), a.end(), b.begin()))
    throw GridMismatchError(
        fmt::format("{}: operands sample different frequency grids; resample "
                    "explicitly first",
                    what));
}

template <class F>
double trapezoid_fn(std::span<const double> x, F&& f) {
  double acc = 0.0;
  double prev = f(0);
  for (std::size_t i = 1; i < x.size(); ++i) {
    const double cur = f(i);
    acc += 0.5 * (x[i] - x[i - 1]) * (cur + prev);
    prev = cur;
  }
  return acc;
}

template <class F>
std::complex<double> trapezoid_cfn(std::span<const double> x, F&& f) {
  std::complex<double> acc = 0.0;
  std::complex<double> prev = f(0);
  for (std::size_t i = 1; i < x.size(); ++i) {
    const std::complex<double> cur = f(i);
    acc += 0.5 * (x[i] - x[i - 1]) * (cur + prev);
    prev = cur;
  }
  return acc;
}

double l2_norm(std::span<const double> x,
               std::span<const std::complex<double>> y) {
  return std::sqrt(
      trapezoid_fn(x, [&](std::size_t i) { return std::norm(y[i]); }));
}

}  // namespace

ModeFunction ModeFunction::make(std::vector<double> omega,
                                std::vector<std::complex<double>> weights,
                                Normalization norm) {
  check_grid(omega, weights.size(), "ModeFunction");
  ModeFunction f{std::move(omega), std::move(weights), norm};
  if (norm == Normalization::l1) {
    if (!f.real_valued())
      throw InvalidParameter(
          "ModeFunction: l1 normalization requires real-valued weights");
    const double mass = trapezoid_fn(
        f.omega, [&](std::size_t i) { return f.weights[i].real(); });
    if (std::fabs(mass) < 1e-300)
      throw InvalidParameter("ModeFunction: weights integrate to zero");
    for (auto& w : f.weights) w /= mass;
  } else {
    const double n2 = l2_norm(f.omega, f.weights);
    if (n2 < 1e-300)
      throw InvalidParameter("ModeFunction: weights have zero norm");
    for (auto& w : f.weights) w /= n2;
  }
  return f;
}

bool ModeFunction::real_valued(double tol) const {
  return std::all_of(weights.begin(), weights.end(),
                     [tol](const std::complex<double>& w) {
                       return std::fabs(w.imag()) <= tol;
                     });
}

bool ModeFunction::has_negative_lobes(double tol) const {
  return std::any_of(weights.begin(), weights.end(),
                     [tol](const std::complex<double>& w) {
                       return w.real() < -tol;
                     });
}

SqueezingSpectrum SqueezingSpectrum::from_r(std::vector<double> omega,
                                            std::vector<double> r) {
  check_grid(omega, r.size(), "SqueezingSpectrum");
  for (double v : r)
    if (!std::isfinite(v))
      throw InvalidParameter("SqueezingSpectrum: r samples must be finite");
  return SqueezingSpectrum{std::move(omega), std::move(r)};
}

SqueezingSpectrum SqueezingSpectrum::from_s_minus(std::vector<double> omega,
                                                  std::vector<double> s_minus) {
  check_grid(omega, s_minus.size(), "SqueezingSpectrum");
  std::vector<double> r(s_minus.size());
  for (std::size_t i = 0; i < s_minus.size(); ++i) {
    if (!(s_minus[i] > 0.0))
      throw InvalidParameter(fmt::format(
          "SqueezingSpectrum: S_- must be positive, got {} at sample {}",
          s_minus[i], i));
    r[i] = -std::log(s_minus[i]);
  }
  return SqueezingSpectrum{std::move(omega), std::move(r)};
}

std::vector<double> SqueezingSpectrum::s_minus() const {
  std::vector<double> s(r_values.size());
  for (std::size_t i = 0; i < r_values.size(); ++i) s[i] = std::exp(-r_values[i]);
  return s;
}

TransferFunction TransferFunction::make(std::vector<double> omega,
                                        std::vector<std::complex<double>> g,
                                        double max_abs) {
  check_grid(omega, g.size(), "TransferFunction");
  for (const auto& v : g)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()) || std::abs(v) > max_abs)
      throw InvalidParameter(fmt::format(
          "TransferFunction: |g| must be finite and <= {}", max_abs));
  return TransferFunction{std::move(omega), std::move(g)};
}

TransferFunction TransferFunction::pure_delay(std::span<const double> omega,
                                              double dt) {
  std::vector<std::complex<double>> g(omega.size());
  for (std::size_t i = 0; i < omega.size(); ++i)
    g[i] = std::polar(1.0, -omega[i] * dt);
  return make(std::vector<double>(omega.begin(), omega.end()), std::move(g));
}

TransferFunction TransferFunction::low_pass(std::span<const double> omega,
                                            double omega_c) {
  if (!(omega_c > 0.0))
    throw InvalidParameter(fmt::format("corner frequency must be > 0, got {}", omega_c));
  std::vector<std::complex<double>> g(omega.size());
  for (std::size_t i = 0; i < omega.size(); ++i)
    g[i] = 1.0 / std::complex<double>(1.0, omega[i] / omega_c);
  return make(std::vector<double>(omega.begin(), omega.end()), std::move(g));
}

double lorentzian_pdf(double gamma, double omega) {
  return gamma / (kPi * (gamma * gamma + omega * omega));
}

ModeFunction lorentzian_mode(double gamma, std::span<const double> omega_grid,
                             Normalization norm) {
  if (!(gamma > 0.0))
    throw InvalidParameter(fmt::format("OPO decay rate must be > 0, got {}", gamma));
  if (omega_grid.size() < 2)
    throw InvalidParameter("lorentzian_mode: need at least two grid points");
  const double span = 20.0 * gamma * (1.0 - 1e-12);
  if (omega_grid.front() > -span || omega_grid.back() < span)
    throw GridSpanError(
        fmt::format("lorentzian_mode: grid [{}, {}] must span at least +-20 "
                    "gamma = +-{}",
                    omega_grid.front(), omega_grid.back(), 20.0 * gamma));
  std::vector<std::complex<double>> w(omega_grid.size());
  for (std::size_t i = 0; i < omega_grid.size(); ++i)
    w[i] = lorentzian_pdf(gamma, omega_grid[i]);
  return ModeFunction::make(std::vector<double>(omega_grid.begin(), omega_grid.end()),
                            std::move(w), norm);
}

SqueezingSpectrum opo_squeezing_spectrum(double x_pump, double kappa_cav,
                                         std::span<const double> omega_grid) {
  if (!(x_pump >= 0.0 && x_pump < 1.0))
    throw PumpRangeError(fmt::format(
        "pump parameter must lie in [0, 1) below threshold, got {}", x_pump));
  if (!(kappa_cav > 0.0))
    throw InvalidParameter(fmt::format("cavity decay rate must be > 0, got {}", kappa_cav));
  std::vector<double> s(omega_grid.size());
  const double opx = (1.0 + x_pump) * (1.0 + x_pump);
  for (std::size_t i = 0; i < omega_grid.size(); ++i) {
    const double w = omega_grid[i] / kappa_cav;
    s[i] = 1.0 - 4.0 * x_pump / (opx + w * w);
  }
  return SqueezingSpectrum::from_s_minus(
      std::vector<double>(omega_grid.begin(), omega_grid.end()), std::move(s));
}

namespace {

void check_averaging_mode(const ModeFunction& f, const char* what,
                          WarningList* warnings) {
  if (f.normalization != Normalization::l1)
    throw InvalidParameter(
        fmt::format("{}: spectral averages need an l1-normalized mode", what));
  if (!f.real_valued())
    throw InvalidParameter(
        fmt::format("{}: spectral averages need a real-valued mode", what));
  if (f.has_negative_lobes() && warnings)
    warnings->push_back(
        {"negative_weight",
         fmt::format("{}: mode function has negative lobes; the weighted "
                     "average may still be meaningful",
                     what)});
}

}  // namespace

double effective_epr(const ModeFunction& f, const SqueezingSpectrum& spec,
                     WarningList* warnings) {
  require_same_grid(f.omega, spec.omega, "effective_epr");
  check_averaging_mode(f, "effective_epr", warnings);
  const double avg = trapezoid_fn(f.omega, [&](std::size_t i) {
    return f.weights[i].real() * std::exp(-spec.r_values[i]);
  });
  if (!(avg > 0.0))
    throw Error(fmt::format(
        "effective_epr: weighted average of S_- is {} (not positive)", avg));
  return -std::log(avg);
}

GainMoments gain_moments(const ModeFunction& f, const TransferFunction& g,
                         const SqueezingSpectrum& spec, double r_eff) {
  require_same_grid(f.omega, g.omega, "gain_moments");
  require_same_grid(f.omega, spec.omega, "gain_moments");
  if (!std::isfinite(r_eff))
    throw InvalidParameter(fmt::format("r_eff must be finite, got {}", r_eff));
  GainMoments m;
  m.g_plus = trapezoid_cfn(f.omega, [&](std::size_t i) {
    return f.weights[i] * g.g[i] * std::exp(spec.r_values[i] - r_eff);
  });
  m.g_minus = trapezoid_cfn(f.omega, [&](std::size_t i) {
    return f.weights[i] * g.g[i] * std::exp(-(spec.r_values[i] - r_eff));
  });
  return m;
}

OutputMode output_mode_function(const ModeFunction& f, const TransferFunction& g) {
  require_same_grid(f.omega, g.omega, "output_mode_function");
  std::vector<std::complex<double>> prod(f.weights.size());
  for (std::size_t i = 0; i < prod.size(); ++i) prod[i] = f.weights[i] * g.g[i];
  const double n_in = l2_norm(f.omega, f.weights);
  const double n_out = l2_norm(f.omega, prod);
  OutputMode out;
  out.mode = ModeFunction{f.omega, std::move(prod), f.normalization};
  out.modal_transmission = n_out / n_in;
  return out;
}

double effective_noise(const ModeFunction& f, std::span<const double> n_spectrum,
                       WarningList* warnings) {
  if (n_spectrum.size() != f.omega.size())
    throw GridMismatchError(
        fmt::format("effective_noise: {} grid points vs {} noise samples",
                    f.omega.size(), n_spectrum.size()));
  for (std::size_t i = 0; i < n_spectrum.size(); ++i)
    if (!(n_spectrum[i] >= 0.0) || !std::isfinite(n_spectrum[i]))
      throw NegativeNoiseError(fmt::format(
          "effective_noise: noise samples must be >= 0, got {} at sample {}",
          n_spectrum[i], i));
  check_averaging_mode(f, "effective_noise", warnings);
  return trapezoid_fn(f.omega, [&](std::size_t i) {
    return f.weights[i].real() * n_spectrum[i];
  });
}

// -- grids ------------------------------------------------------------------

namespace {

std::vector<std::complex<double>> interp_complex(
    std::span<const double> x, std::span<const std::complex<double>> y,
    std::span<const double> nx, const char* what) {
  if (nx.size() < 2)
    throw InvalidParameter(fmt::format("{}: need at least two target points", what));
  if (nx.front() < x.front() || nx.back() > x.back())
    throw GridSpanError(fmt::format(
        "{}: target grid [{}, {}] exceeds the source span [{}, {}]", what,
        nx.front(), nx.back(), x.front(), x.back()));
  std::vector<std::complex<double>> out(nx.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < nx.size(); ++i) {
    while (k + 2 < x.size() && x[k + 1] < nx[i]) ++k;
    const double t = (nx[i] - x[k]) / (x[k + 1] - x[k]);
    out[i] = y[k] + t * (y[k + 1] - y[k]);
  }
  return out;
}

}  // namespace

ModeFunction resample(const ModeFunction& f, std::span<const double> new_omega) {
  auto w = interp_complex(f.omega, f.weights, new_omega, "resample(ModeFunction)");
  // renormalize on the new grid so the convention still holds
  return ModeFunction::make(std::vector<double>(new_omega.begin(), new_omega.end()),
                            std::move(w), f.normalization);
}

SqueezingSpectrum resample(const SqueezingSpectrum& s,
                           std::span<const double> new_omega) {
  std::vector<std::complex<double>> rc(s.r_values.size());
  for (std::size_t i = 0; i < rc.size(); ++i) rc[i] = s.r_values[i];
  auto r = interp_complex(s.omega, rc, new_omega, "resample(SqueezingSpectrum)");
  std::vector<double> rr(r.size());
  for (std::size_t i = 0; i < r.size(); ++i) rr[i] = r[i].real();
  return SqueezingSpectrum::from_r(
      std::vector<double>(new_omega.begin(), new_omega.end()), std::move(rr));
}

TransferFunction resample(const TransferFunction& g,
                          std::span<const double> new_omega) {
  auto gg = interp_complex(g.omega, g.g, new_omega, "resample(TransferFunction)");
  return TransferFunction::make(
      std::vector<double>(new_omega.begin(), new_omega.end()), std::move(gg));
}

std::vector<double> uniform_grid(double half_span, std::size_t n) {
  if (!(half_span > 0.0) || n < 2)
    throw InvalidParameter("uniform_grid: need half_span > 0 and n >= 2");
  std::vector<double> g(n);
  const double step = 2.0 * half_span / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i)
    g[i] = -half_span + step * static_cast<double>(i);
  return g;
}

// -- CSV --------------------------------------------------------------------

namespace {

enum class CsvKind { real, complex };

std::pair<std::vector<double>, std::vector<std::complex<double>>> read_csv_samples(
    const std::filesystem::path& path, CsvKind expect) {
  std::ifstream is(path);
  if (!is)
    throw InvalidParameter(fmt::format("cannot open {} for reading", path.string()));
  std::string line;
  if (!std::getline(is, line))
    throw InvalidParameter(fmt::format("{}: empty spectrum file", path.string()));
  CsvKind kind;
  if (line.rfind("omega,re,im", 0) == 0)
    kind = CsvKind::complex;
  else if (line.rfind("omega,value", 0) == 0)
    kind = CsvKind::real;
  else
    throw InvalidParameter(fmt::format(
        "{}: header must be \"omega,value\" or \"omega,re,im\", got \"{}\"",
        path.string(), line));
  if (expect == CsvKind::real && kind == CsvKind::complex)
    throw InvalidParameter(
        fmt::format("{}: expected real samples (header \"omega,value\")", path.string()));
  std::vector<double> omega;
  std::vector<std::complex<double>> vals;
  std::size_t lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    double w, re, im = 0.0;
    const int want = kind == CsvKind::complex ? 3 : 2;
    const int got = kind == CsvKind::complex
                        ? std::sscanf(line.c_str(), "%lg,%lg,%lg", &w, &re, &im)
                        : std::sscanf(line.c_str(), "%lg,%lg", &w, &re);
    if (got != want)
      throw InvalidParameter(
          fmt::format("{}:{}: bad spectrum row \"{}\"", path.string(), lineno, line));
    omega.push_back(w);
    vals.emplace_back(re, im);
  }
  return {std::move(omega), std::move(vals)};
}

}  // namespace

ModeFunction read_mode_csv(const std::filesystem::path& path, Normalization norm) {
  auto [omega, vals] = read_csv_samples(path, CsvKind::complex);
  return ModeFunction::make(std::move(omega), std::move(vals), norm);
}

SqueezingSpectrum read_squeezing_csv(const std::filesystem::path& path) {
  auto [omega, vals] = read_csv_samples(path, CsvKind::real);
  std::vector<double> s(vals.size());
  for (std::size_t i = 0; i < vals.size(); ++i) s[i] = vals[i].real();
  return SqueezingSpectrum::from_s_minus(std::move(omega), std::move(s));
}

TransferFunction read_transfer_csv(const std::filesystem::path& path) {
  auto [omega, vals] = read_csv_samples(path, CsvKind::complex);
  return TransferFunction::make(std::move(omega), std::move(vals));
}

std::pair<std::vector<double>, std::vector<double>> read_real_csv(
    const std::filesystem::path& path) {
  auto [omega, vals] = read_csv_samples(path, CsvKind::real);
  std::vector<double> out(vals.size());
  for (std::size_t i = 0; i < vals.size(); ++i) out[i] = vals[i].real();
  check_grid(omega, out.size(), path.string().c_str());
  return {std::move(omega), std::move(out)};
}

}  // namespace cvt::multimode
