#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>

#include "cvt/multimode.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace cvt;
using namespace cvt::multimode;
using doctest::Approx;

namespace {

const std::vector<double> kGrid = uniform_grid(20.0, 8001);

ModeFunction lorentz() { return lorentzian_mode(1.0, kGrid); }

double trapz(const std::vector<double>& x, const std::vector<double>& y) {
  double acc = 0.0;
  for (std::size_t i = 1; i < x.size(); ++i)
    acc += 0.5 * (x[i] - x[i - 1]) * (y[i] + y[i - 1]);
  return acc;
}

}  // namespace

TEST_CASE("lorentzian mode: shape and normalization") {
  CHECK(lorentzian_pdf(0.7, 0.0) == Approx(1.0 / (M_PI * 0.7)).epsilon(1e-15));
  // half width at half maximum sits at Omega = gamma
  CHECK(lorentzian_pdf(0.7, 0.7) == Approx(0.5 * lorentzian_pdf(0.7, 0.0)).epsilon(1e-15));

  const ModeFunction f = lorentz();
  std::vector<double> w(f.weights.size());
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = f.weights[i].real();
  CHECK(trapz(f.omega, w) == Approx(1.0).epsilon(1e-9));  // l1 contract

  const ModeFunction f2 = lorentzian_mode(1.0, kGrid, Normalization::l2);
  std::vector<double> w2(f2.weights.size());
  for (std::size_t i = 0; i < w2.size(); ++i) w2[i] = std::norm(f2.weights[i]);
  CHECK(trapz(f2.omega, w2) == Approx(1.0).epsilon(1e-9));  // l2 contract

  CHECK_THROWS_AS(lorentzian_mode(1.0, uniform_grid(10.0, 1001)), GridSpanError);
  CHECK_THROWS_AS(lorentzian_mode(0.0, kGrid), InvalidParameter);
}

TEST_CASE("opo squeezing spectrum") {
  const auto spec = opo_squeezing_spectrum(0.5, 1.0, kGrid);
  const auto s = spec.s_minus();
  // center value (1-x)^2/(1+x)^2 = 1/9
  const std::size_t mid = kGrid.size() / 2;
  CHECK(kGrid[mid] == 0.0);
  CHECK(s[mid] == Approx(1.0 / 9.0).epsilon(1e-12));
  // symmetric and approaching one far from the carrier
  for (std::size_t i = 0; i < s.size(); i += 97)
    CHECK(s[i] == Approx(s[s.size() - 1 - i]).epsilon(1e-12));
  CHECK(s.front() > 0.99);

  const auto flat = opo_squeezing_spectrum(0.0, 1.0, kGrid);
  for (double v : flat.s_minus()) CHECK(v == 1.0);

  CHECK_THROWS_AS(opo_squeezing_spectrum(1.0, 1.0, kGrid), PumpRangeError);
  CHECK_THROWS_AS(opo_squeezing_spectrum(-0.1, 1.0, kGrid), PumpRangeError);
  CHECK_THROWS_AS(opo_squeezing_spectrum(0.5, 0.0, kGrid), InvalidParameter);
}

TEST_CASE("effective EPR parameter") {
  const ModeFunction f = lorentz();

  // flat spectrum collapses exactly
  for (double r0 : {0.0, 0.4, 1.3}) {
    const auto flat = SqueezingSpectrum::from_r(kGrid, std::vector<double>(kGrid.size(), r0));
    CHECK(std::fabs(effective_epr(f, flat) - r0) < 1e-12);
  }

  // Lorentzian mode against the OPO spectrum (x = 0.4, cavity rate 2):
  // adaptive-quadrature oracle over the same truncated, renormalized setup
  const auto opo = opo_squeezing_spectrum(0.4, 2.0, kGrid);
  const double impl = effective_epr(f, opo);
  auto fl = [](double w) { return lorentzian_pdf(1.0, w); };
  auto sm = [](double w) { return 1.0 - 1.6 / (1.96 + 0.25 * w * w); };
  const double mass = oracles::adaptive_simpson(fl, -20.0, 20.0);
  const double avg =
      oracles::adaptive_simpson([&](double w) { return fl(w) * sm(w); }, -20.0, 20.0) / mass;
  const double oracle = -std::log(avg);
  CHECK(oracle == Approx(0.97045567555794601).epsilon(1e-10));  // frozen
  CHECK(impl == Approx(oracle).epsilon(1e-6));

  // grid mismatch is refused
  const auto other = opo_squeezing_spectrum(0.4, 2.0, uniform_grid(20.0, 4001));
  CHECK_THROWS_AS(effective_epr(f, other), GridMismatchError);
}

TEST_CASE("effective EPR warns on negative lobes but still averages") {
  // a mode with a small negative lobe, l1-normalized by construction
  std::vector<std::complex<double>> w(kGrid.size());
  for (std::size_t i = 0; i < kGrid.size(); ++i)
    w[i] = lorentzian_pdf(1.0, kGrid[i]) - 0.2 * lorentzian_pdf(0.3, kGrid[i] - 5.0);
  const ModeFunction f = ModeFunction::make(kGrid, std::move(w), Normalization::l1);
  REQUIRE(f.has_negative_lobes());
  const auto flat = SqueezingSpectrum::from_r(kGrid, std::vector<double>(kGrid.size(), 0.5));
  WarningList warnings;
  const double r_eff = effective_epr(f, flat, &warnings);
  CHECK(r_eff == Approx(0.5).epsilon(1e-12));
  REQUIRE(warnings.size() == 1);
  CHECK(warnings[0].code == "negative_weight");
}

TEST_CASE("gain moments") {
  const ModeFunction f = lorentz();
  const auto flat = SqueezingSpectrum::from_r(kGrid, std::vector<double>(kGrid.size(), 0.7));
  const double r_eff = effective_epr(f, flat);

  // g == 1 with a flat spectrum: both moments are exactly one
  const auto unity = TransferFunction::make(kGrid, std::vector<std::complex<double>>(
                                                       kGrid.size(), 1.0));
  const GainMoments m1 = gain_moments(f, unity, flat, r_eff);
  CHECK(std::abs(m1.g_plus - 1.0) < 1e-14);
  CHECK(std::abs(m1.g_minus - 1.0) < 1e-14);
  // so the antisqueezing coefficient (1 - g+) vanishes and the squeezing
  // coefficient (1 + g-)/sqrt(2) e^{-r_eff} matches the unity-gain sqrt(2) e^{-r}
  CHECK(std::abs((1.0 + m1.g_minus) / std::sqrt(2.0) * std::exp(-r_eff) -
                 std::sqrt(2.0) * std::exp(-0.7)) < 1e-14);

  // g == 0 kills the classical channel
  const auto zero = TransferFunction::make(kGrid, std::vector<std::complex<double>>(
                                                      kGrid.size(), 0.0));
  const GainMoments m0 = gain_moments(f, zero, flat, r_eff);
  CHECK(std::abs(m0.g_plus) == 0.0);
  CHECK(std::abs(m0.g_minus) == 0.0);

  // low-pass transfer, flat spectrum: both moments equal Int f g
  const auto lp = TransferFunction::low_pass(kGrid, 2.0);
  const GainMoments mlp = gain_moments(f, lp, flat, r_eff);
  CHECK(std::abs(mlp.g_plus - mlp.g_minus) < 1e-14);
  CHECK(mlp.g_plus.real() == Approx(0.68845739827743012).epsilon(1e-6));  // frozen oracle
  CHECK(std::fabs(mlp.g_plus.imag()) < 1e-12);  // even mode, odd imaginary part
}

TEST_CASE("output mode function") {
  const ModeFunction f = lorentz();

  // pure delay: unit-modulus factor preserves the weights pointwise in
  // magnitude and the l2 norm exactly
  const auto delay = TransferFunction::pure_delay(kGrid, 0.3);
  const OutputMode od = output_mode_function(f, delay);
  CHECK(od.modal_transmission == Approx(1.0).epsilon(1e-12));
  for (std::size_t i = 0; i < f.weights.size(); i += 331)
    CHECK(std::abs(od.mode.weights[i]) == Approx(std::abs(f.weights[i])).epsilon(1e-12));

  // identity transfer
  const auto unity = TransferFunction::make(kGrid, std::vector<std::complex<double>>(
                                                       kGrid.size(), 1.0));
  const OutputMode oi = output_mode_function(f, unity);
  CHECK(oi.modal_transmission == Approx(1.0).epsilon(1e-14));
  for (std::size_t i = 0; i < f.weights.size(); i += 331)
    CHECK(oi.mode.weights[i] == f.weights[i]);

  // low-pass transfer loses norm; value from the quadrature oracle
  const auto lp = TransferFunction::low_pass(kGrid, 2.0);
  const OutputMode ol = output_mode_function(f, lp);
  CHECK(ol.modal_transmission == Approx(0.94283380951111063).epsilon(1e-6));
  CHECK(ol.modal_transmission < 1.0);
}

TEST_CASE("effective noise level") {
  const ModeFunction f = lorentz();

  CHECK(effective_noise(f, std::vector<double>(kGrid.size(), 0.0)) == 0.0);
  CHECK(effective_noise(f, std::vector<double>(kGrid.size(), 0.37)) ==
        Approx(0.37).epsilon(1e-12));

  // band-limited bump inside |Omega| < gamma / 2, frozen quadrature value
  std::vector<double> band(kGrid.size(), 0.0);
  for (std::size_t i = 0; i < kGrid.size(); ++i)
    if (std::fabs(kGrid[i]) < 0.5)
      band[i] = 0.1 * std::cos(M_PI * kGrid[i]) * std::cos(M_PI * kGrid[i]);
  CHECK(effective_noise(f, band) == Approx(0.015939366253201468).epsilon(1e-5));

  std::vector<double> bad(kGrid.size(), 0.1);
  bad[17] = -0.01;
  CHECK_THROWS_AS(effective_noise(f, bad), NegativeNoiseError);
  CHECK_THROWS_AS(effective_noise(f, std::vector<double>(17, 0.1)), GridMismatchError);
}

TEST_CASE("Jensen bound on the effective parameter") {
  // e^{-r_eff} = Int f e^{-r} >= e^{-Int f r} for nonnegative f
  const ModeFunction f = lorentz();
  for (double x : {0.1, 0.4, 0.8}) {
    const auto opo = opo_squeezing_spectrum(x, 2.0, kGrid);
    const double r_eff = effective_epr(f, opo);
    double mean_r = 0.0;
    for (std::size_t i = 1; i < kGrid.size(); ++i)
      mean_r += 0.5 * (kGrid[i] - kGrid[i - 1]) *
                (f.weights[i].real() * opo.r_values[i] +
                 f.weights[i - 1].real() * opo.r_values[i - 1]);
    CHECK(r_eff <= mean_r + 1e-12);
  }
}

TEST_CASE("grid refinement convergence") {
  // doubling the grid changes every integral by less than 1e-6
  const auto coarse_grid = uniform_grid(20.0, 4001);
  const auto fine_grid = uniform_grid(20.0, 8001);
  const ModeFunction fc = lorentzian_mode(1.0, coarse_grid);
  const ModeFunction ff = lorentzian_mode(1.0, fine_grid);
  const auto oc = opo_squeezing_spectrum(0.4, 2.0, coarse_grid);
  const auto of = opo_squeezing_spectrum(0.4, 2.0, fine_grid);
  CHECK(std::fabs(effective_epr(fc, oc) - effective_epr(ff, of)) < 1e-6);
  const auto lc = TransferFunction::low_pass(coarse_grid, 2.0);
  const auto lf = TransferFunction::low_pass(fine_grid, 2.0);
  CHECK(std::fabs(output_mode_function(fc, lc).modal_transmission -
                  output_mode_function(ff, lf).modal_transmission) < 1e-6);
}

TEST_CASE("explicit resampling") {
  const ModeFunction f = lorentz();
  const auto target = uniform_grid(18.0, 2001);
  const ModeFunction fr = resample(f, target);
  CHECK(fr.omega.size() == 2001);
  std::vector<double> w(fr.weights.size());
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = fr.weights[i].real();
  CHECK(trapz(fr.omega, w) == Approx(1.0).epsilon(1e-9));  // renormalized

  // beyond the source span is refused
  CHECK_THROWS_AS(resample(f, uniform_grid(25.0, 101)), GridSpanError);

  const auto opo = opo_squeezing_spectrum(0.4, 2.0, kGrid);
  const auto opo_r = resample(opo, target);
  CHECK(opo_r.omega.size() == 2001);
  const auto direct = opo_squeezing_spectrum(0.4, 2.0, target);
  // linear interpolation on the 8001-point source grid is ~1e-5 accurate
  for (std::size_t i = 0; i < target.size(); i += 127)
    CHECK(opo_r.r_values[i] == Approx(direct.r_values[i]).epsilon(1e-4));
}

TEST_CASE("CSV ingestion of spectra and transfer functions") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "cvt_multimode_csv";
  fs::create_directories(dir);

  {
    std::ofstream os(dir / "mode.csv");
    os << "omega,value\n";
    for (double w : uniform_grid(20.0, 401))
      os << w << "," << lorentzian_pdf(1.0, w) << "\n";
  }
  const ModeFunction f = read_mode_csv(dir / "mode.csv");
  std::vector<double> w(f.weights.size());
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = f.weights[i].real();
  CHECK(trapz(f.omega, w) == Approx(1.0).epsilon(1e-9));

  {
    std::ofstream os(dir / "transfer.csv");
    os << "omega,re,im\n";
    for (double om : uniform_grid(20.0, 401)) {
      const std::complex<double> g = 1.0 / std::complex<double>(1.0, om / 2.0);
      os << om << "," << g.real() << "," << g.imag() << "\n";
    }
  }
  const TransferFunction g = read_transfer_csv(dir / "transfer.csv");
  CHECK(g.g[200].real() == Approx(1.0).epsilon(1e-9));  // center sample

  {
    std::ofstream os(dir / "squeeze.csv");
    os << std::setprecision(17) << "omega,value\n";
    for (double om : uniform_grid(20.0, 401))
      os << om << "," << 1.0 - 1.6 / (1.96 + 0.25 * om * om) << "\n";
  }
  const SqueezingSpectrum sp = read_squeezing_csv(dir / "squeeze.csv");
  CHECK(std::exp(-sp.r_values[200]) == Approx(1.0 - 1.6 / 1.96).epsilon(1e-9));

  {
    std::ofstream os(dir / "bad.csv");
    os << "frequency,value\n0,1\n";
  }
  CHECK_THROWS_AS(read_mode_csv(dir / "bad.csv"), InvalidParameter);
}
