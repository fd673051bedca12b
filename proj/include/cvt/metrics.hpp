#pragma once

#include <string>

#include "cvt/grid.hpp"

// State-comparison figures over Wigner grids: overlap, purity-normalized
// overlap, L2 distance, purity, and the vacuum teleportation fidelity in both
// circulating conventions.

namespace cvt::metrics {

/// O(a, b) = 2 pi Int Int W_a W_b dx dp (trapezoid quadrature).
double overlap(const WignerGrid& a, const WignerGrid& b);

/// O'(a, b) = O(a, b) / sqrt(O(a, a) O(b, b)); equals 1 for identical states
/// whether pure or mixed. Throws DegeneratePurityError when either purity
/// vanishes.
double normalized_overlap(const WignerGrid& a, const WignerGrid& b);

/// sqrt(Int Int |W_a - W_b|^2 dx dp).
double l2_distance(const WignerGrid& a, const WignerGrid& b);

/// overlap(w, w); in (0, 1] for physical states.
double purity(const WignerGrid& w);

/// Two r <-> fidelity conventions circulate for vacuum teleportation:
///   paper:     F = 1 / (1 + e^{-r})
///   amplitude: F = 1 / (1 + e^{-2r})   (the one the convolution kernel
///                                       G_{e^-r} actually produces)
/// Both are first-class; nothing in the back-test derives r from a fidelity.
enum class FidelityConvention { paper, amplitude };

double vacuum_fidelity(double r, FidelityConvention convention);
double fidelity_to_r(double fidelity, FidelityConvention convention);

struct ComparisonReport {
  double overlap;
  double normalized_overlap;
  double l2_distance;
  double purity_a;
  double purity_b;

  std::string to_json() const;
};

ComparisonReport compare(const WignerGrid& a, const WignerGrid& b);

}  // namespace cvt::metrics
