#include "cvt/analytic.hpp"

#include <cmath>
#include <fmt/format.h>
#include <numbers>

namespace cvt {

namespace {

constexpr double kPi = std::numbers::pi;

void require_finite(double v, const char* name) {
  if (!std::isfinite(v))
    throw InvalidParameter(fmt::format("{} must be finite, got {}", name, v));
}

}  // namespace

InputStateParams::InputStateParams(double s_, double eta_, double epsilon_)
    : s(s_), eta(eta_), epsilon(epsilon_) {
  require_finite(s, "s");
  require_finite(eta, "eta");
  require_finite(epsilon, "epsilon");
  if (s < 0.0) throw InvalidParameter(fmt::format("s must be >= 0, got {}", s));
  if (!(eta > 0.0 && eta <= 1.0))
    throw InvalidParameter(fmt::format("eta must lie in (0, 1], got {}", eta));
  if (!(epsilon >= 0.0 && epsilon <= 1.0))
    throw InvalidParameter(fmt::format("epsilon must lie in [0, 1], got {}", epsilon));
}

TeleporterParamsScalar::TeleporterParamsScalar(double r_) : r(r_) {
  if (std::isnan(r) || r < 0.0)
    throw InvalidParameter(fmt::format("EPR parameter must be >= 0, got {}", r));
}

DerivedWidths derived_widths(double eta, double r) {
  if (!(eta > 0.0 && eta <= 1.0))
    throw InvalidParameter(fmt::format("eta must lie in (0, 1], got {}", eta));
  DerivedWidths w;
  w.lambda = std::sqrt((1.0 - eta) / (2.0 * eta));
  w.g_r = 1.0 + 2.0 * std::exp(-2.0 * r);
  w.lambda_prime = std::sqrt(w.lambda * w.lambda + std::exp(-2.0 * r) / eta);
  return w;
}

ThresholdCoefficients threshold_coefficients(double epsilon, double s) {
  const double sh2 = analytic::sinh_sq(s);
  return {epsilon * (1.0 + 2.0 * sh2) - 1.0, 4.0 * epsilon * sh2};
}

namespace analytic {

double sinh_sq(double s) {
  const double d = std::exp(s) - std::exp(-s);
  return d * d / 4.0;
}

double ref_wigner_value(double s, double q, double p) {
  const double e2s = std::exp(2.0 * s);
  const double em2s = std::exp(-2.0 * s);
  const double quad = e2s * q * q + em2s * p * p;
  // G_{1/sqrt(2)}(e^s q, e^{-s} p) = exp(-quad) / pi
  return 2.0 * (quad - 0.5) * std::exp(-quad) / kPi;
}

double ref_output_negativity(double s, double r) {
  const double gr = 1.0 + 2.0 * std::exp(-2.0 * r);
  const double bracket = gr * gr + 8.0 * std::exp(-2.0 * r) * sinh_sq(s);
  return gr * (gr - 2.0) / (kPi * std::pow(bracket, 1.5));
}

double input_negativity(const InputStateParams& params) {
  const double sh2 = sinh_sq(params.s);
  const double eta = params.eta;
  const double d = 1.0 + 4.0 * eta * (1.0 - eta) * sh2;
  const double denom = kPi * std::pow(d, 1.5);
  double value = (1.0 - 2.0 * eta) / denom;
  if (params.epsilon > 0.0)
    value += 2.0 * params.epsilon * eta * (1.0 + 2.0 * (1.0 - eta) * sh2) / denom;
  return value;
}

double output_negativity(const InputStateParams& params, double r) {
  const double sh2 = sinh_sq(params.s);
  const double eta = params.eta;
  const double gr = 1.0 + 2.0 * std::exp(-2.0 * r);
  const double e = gr * gr + 4.0 * eta * (gr - eta) * sh2;
  const double denom = kPi * std::pow(e, 1.5);
  double value = gr * (gr - 2.0 * eta) / denom;
  if (params.epsilon > 0.0)
    value += 2.0 * params.epsilon * eta * (gr + 2.0 * (gr - eta) * sh2) / denom;
  return value;
}

double threshold_r(double eta, double s, double epsilon) {
  if (!(eta > 0.0 && eta <= 1.0))
    throw InvalidParameter(fmt::format("eta must lie in (0, 1], got {}", eta));
  if (epsilon == 0.0) {
    const double arg = 2.0 * eta - 1.0;
    if (arg <= 0.0)
      throw NoThresholdError(fmt::format(
          "no negativity threshold exists for eta = {} (need eta > 1/2)", eta));
    return std::log(std::sqrt(2.0 / arg));
  }
  const auto [b, c] = threshold_coefficients(epsilon, s);
  const double g_r = eta * (std::sqrt(b * b + c) - b);
  if (g_r <= 1.0)
    throw NoThresholdError(
        fmt::format("no negativity threshold exists for eta = {}, s = {}, "
                    "epsilon = {} (physical root g_r = {} <= 1)",
                    eta, s, epsilon, g_r));
  return std::log(std::sqrt(2.0 / (g_r - 1.0)));
}

double input_threshold_epsilon(double eta, double s) {
  if (!(eta > 0.0 && eta <= 1.0))
    throw InvalidParameter(fmt::format("eta must lie in (0, 1], got {}", eta));
  return (2.0 * eta - 1.0) / (2.0 * eta * (1.0 + 2.0 * (1.0 - eta) * sinh_sq(s)));
}

double effective_r_after_input_loss(double r, double eta) {
  if (!(eta > 0.0 && eta <= 1.0))
    throw InvalidParameter(fmt::format("eta must lie in (0, 1], got {}", eta));
  return r + std::log(std::sqrt(eta));
}

}  // namespace analytic
}  // namespace cvt
