#include "cvt/metrics.hpp"

#include <cmath>
#include <fmt/format.h>
#include <numbers>

#include "json.hpp"

namespace cvt::metrics {

namespace {

constexpr double kPi = std::numbers::pi;

void require_same_window(const WignerGrid& a, const WignerGrid& b, const char* what) {
  if (a.spec() != b.spec())
    throw GridMismatchError(fmt::format("{}: grids sample different windows", what));
}

/// Trapezoid weight along one axis: 1/2 at the first and last sampled node.
inline double edge_weight(std::size_t i, std::size_t n) {
  return (i == 0 || i + 1 == n) ? 0.5 : 1.0;
}

template <class F>
double integrate2d(const GridSpec& g, F&& f) {
  double acc = 0.0;
  for (std::size_t i = 0; i < g.n_x; ++i) {
    const double wx = edge_weight(i, g.n_x);
    double row = 0.0;
    for (std::size_t j = 0; j < g.n_p; ++j)
      row += edge_weight(j, g.n_p) * f(i, j);
    acc += wx * row;
  }
  return acc * g.dx() * g.dp();
}

}  // namespace

double overlap(const WignerGrid& a, const WignerGrid& b) {
  require_same_window(a, b, "overlap");
  return 2.0 * kPi *
         integrate2d(a.spec(), [&](std::size_t i, std::size_t j) {
           return a.at(i, j) * b.at(i, j);
         });
}

double purity(const WignerGrid& w) { return overlap(w, w); }

double normalized_overlap(const WignerGrid& a, const WignerGrid& b) {
  const double pa = purity(a);
  const double pb = purity(b);
  if (!(pa > 1e-12) || !(pb > 1e-12))
    throw DegeneratePurityError(fmt::format(
        "normalized overlap undefined: purities {:.3e} and {:.3e}", pa, pb));
  return overlap(a, b) / std::sqrt(pa * pb);
}

double l2_distance(const WignerGrid& a, const WignerGrid& b) {
  require_same_window(a, b, "l2_distance");
  return std::sqrt(integrate2d(a.spec(), [&](std::size_t i, std::size_t j) {
    const double d = a.at(i, j) - b.at(i, j);
    return d * d;
  }));
}

double vacuum_fidelity(double r, FidelityConvention convention) {
  if (std::isnan(r)) throw InvalidParameter("r must not be NaN");
  const double k = convention == FidelityConvention::paper ? 1.0 : 2.0;
  return 1.0 / (1.0 + std::exp(-k * r));
}

double fidelity_to_r(double fidelity, FidelityConvention convention) {
  if (!(fidelity > 0.0 && fidelity < 1.0))
    throw InvalidParameter(
        fmt::format("fidelity must lie in (0, 1) to invert, got {}", fidelity));
  const double k = convention == FidelityConvention::paper ? 1.0 : 2.0;
  return -std::log(1.0 / fidelity - 1.0) / k;
}

ComparisonReport compare(const WignerGrid& a, const WignerGrid& b) {
  ComparisonReport rep;
  rep.overlap = overlap(a, b);
  rep.purity_a = purity(a);
  rep.purity_b = purity(b);
  rep.normalized_overlap = rep.overlap / std::sqrt(rep.purity_a * rep.purity_b);
  rep.l2_distance = l2_distance(a, b);
  return rep;
}

std::string ComparisonReport::to_json() const {
  nlohmann::ordered_json j;
  j["overlap"] = overlap;
  j["normalized_overlap"] = normalized_overlap;
  j["l2_distance"] = l2_distance;
  j["purity_a"] = purity_a;
  j["purity_b"] = purity_b;
  return j.dump(2);
}

}  // namespace cvt::metrics
