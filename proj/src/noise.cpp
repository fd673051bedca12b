#include "cvt/noise.hpp"

#include <cmath>
#include <fmt/format.h>

namespace cvt::noise {

NoiseLevel::NoiseLevel(double amplitude_) : amplitude(amplitude_) {
  if (!(amplitude >= 0.0) || !std::isfinite(amplitude))
    throw InvalidParameter(
        fmt::format("noise amplitude must be finite and >= 0, got {}", amplitude));
}

double noisy_r(double r, NoiseLevel n) {
  if (std::isnan(r)) throw InvalidParameter("r must not be NaN");
  if (n.amplitude == 0.0) return r;
  return -0.5 * std::log(std::exp(-2.0 * r) + n.amplitude * n.amplitude);
}

NoiseLevel break_even_noise(double r) {
  if (!(r > 0.0))
    throw InvalidParameter(
        fmt::format("break-even noise is defined for r > 0, got {}", r));
  return NoiseLevel(std::sqrt(-std::expm1(-2.0 * r)));
}

double noisy_r_eff(double r_eff, double n_eff) {
  if (n_eff < 0.0 || std::isnan(n_eff))
    throw InvalidParameter(fmt::format("effective noise must be >= 0, got {}", n_eff));
  return noisy_r(r_eff, NoiseLevel(n_eff));
}

}  // namespace cvt::noise
