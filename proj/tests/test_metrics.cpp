#include <cmath>
#include <numbers>

#include "cvt/metrics.hpp"
#include "cvt/phase_space.hpp"
#include "cvt/scenario.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace cvt;
using doctest::Approx;

namespace {
const GridSpec kGrid(-6.0, 6.0, -6.0, 6.0, 256, 256);
}

TEST_CASE("overlap: pure-state cases") {
  const WignerGrid vac = phase::wigner_vacuum(kGrid);
  const WignerGrid photon = phase::wigner_reference(0.0, kGrid);
  const WignerGrid sq = phase::wigner_squeezed_vacuum(0.28, kGrid);

  CHECK(metrics::overlap(vac, vac) == Approx(1.0).epsilon(1e-9));
  CHECK(std::fabs(metrics::overlap(photon, vac)) < 1e-12);  // orthogonal
  // closed-form pure-state overlap |<0|S(s)|0>|^2 = 1/cosh(s)
  CHECK(metrics::overlap(sq, vac) == Approx(0.96204096430600608).epsilon(1e-9));
  CHECK_THROWS_AS(metrics::overlap(vac, phase::wigner_vacuum(default_grid_spec())),
                  GridMismatchError);
}

TEST_CASE("purity") {
  CHECK(metrics::purity(phase::wigner_vacuum(kGrid)) == Approx(1.0).epsilon(1e-3));
  CHECK(metrics::purity(phase::wigner_reference(0.28, kGrid)) == Approx(1.0).epsilon(1e-3));
  CHECK(metrics::purity(phase::wigner_squeezed_vacuum(0.28, kGrid)) ==
        Approx(1.0).epsilon(1e-3));

  // proper mixture is impure
  const WignerGrid mixed = phase::mix(phase::wigner_reference(0.28, kGrid),
                                      phase::wigner_squeezed_vacuum(0.28, kGrid), 0.5);
  CHECK(metrics::purity(mixed) < 1.0);

  // lossy reference, frozen quadrature-oracle value, pinned on the sampled
  // closed form; the channel pipeline carries a small bilinear-resampling
  // smoothing bias and is held to a looser regression bound
  const GridSpec fine(-6.0, 6.0, -6.0, 6.0, 512, 512);
  const WignerGrid model = phase::model_input_state(InputStateParams(0.28, 0.8, 0.0), fine);
  CHECK(metrics::purity(model) == Approx(0.65421704178622185).epsilon(1e-6));
  const WignerGrid lossy = phase::apply_loss(phase::wigner_reference(0.28, fine), 0.8);
  CHECK(std::fabs(metrics::purity(lossy) - 0.65421704178622185) < 5e-4);
}

TEST_CASE("purity decreases under every channel") {
  const WignerGrid ref = phase::wigner_reference(0.28, kGrid);
  const double p0 = metrics::purity(ref);
  CHECK(metrics::purity(phase::apply_loss(ref, 0.8)) <= p0 + 1e-6);
  CHECK(metrics::purity(phase::teleport(ref, 0.795)) <= p0 + 1e-6);
  CHECK(metrics::purity(phase::convolve_gaussian(ref, 0.5)) <= p0 + 1e-6);
}

TEST_CASE("normalized overlap") {
  const WignerGrid vac = phase::wigner_vacuum(kGrid);
  const WignerGrid photon = phase::wigner_reference(0.0, kGrid);
  const WignerGrid mixed = phase::mix(phase::wigner_reference(0.28, kGrid),
                                      phase::wigner_squeezed_vacuum(0.28, kGrid), 0.3);

  // equals one for identical states, mixed or pure
  CHECK(metrics::normalized_overlap(vac, vac) == Approx(1.0).epsilon(1e-12));
  CHECK(metrics::normalized_overlap(mixed, mixed) == Approx(1.0).epsilon(1e-12));
  CHECK(std::fabs(metrics::normalized_overlap(photon, vac)) < 1e-9);

  // symmetric by construction
  CHECK(metrics::normalized_overlap(mixed, vac) == metrics::normalized_overlap(vac, mixed));

  CHECK_THROWS_AS(
      metrics::normalized_overlap(WignerGrid(kGrid, std::vector<double>(kGrid.size(), 0.0)),
                                  vac),
      DegeneratePurityError);
}

TEST_CASE("cross-engine overlap: model state vs grid pipeline") {
  // the same output state built two ways must be indistinguishable
  const InputStateParams params(0.28, 0.8, 0.013);
  const GridSpec fine(-6.0, 6.0, -6.0, 6.0, 512, 512);
  const WignerGrid model = phase::model_output_state(params, 0.795, fine);
  const WignerGrid piped = phase::teleport(
      phase::apply_loss(phase::mix(phase::wigner_reference(params.s, fine),
                                   phase::wigner_squeezed_vacuum(params.s, fine),
                                   params.epsilon),
                        params.eta),
      0.795);
  CHECK(metrics::normalized_overlap(model, piped) >= 0.9999);
  CHECK(metrics::l2_distance(model, piped) < 1e-3);
}

TEST_CASE("l2 distance: identity, frozen value, triangle inequality") {
  const WignerGrid vac = phase::wigner_vacuum(kGrid);
  const WignerGrid sq = phase::wigner_squeezed_vacuum(0.28, kGrid);
  const WignerGrid ref = phase::wigner_reference(0.28, kGrid);

  CHECK(metrics::l2_distance(vac, vac) == 0.0);
  CHECK(metrics::l2_distance(vac, sq) == Approx(0.10992150076942023).epsilon(1e-6));

  const double ab = metrics::l2_distance(vac, sq);
  const double bc = metrics::l2_distance(sq, ref);
  const double ac = metrics::l2_distance(vac, ref);
  CHECK(ac <= ab + bc + 1e-12);
  CHECK(ab <= ac + bc + 1e-12);
  CHECK(bc <= ab + ac + 1e-12);
}

TEST_CASE("vacuum fidelity conventions") {
  using metrics::FidelityConvention;
  // classical limit and perfect channel agree across conventions
  for (auto conv : {FidelityConvention::paper, FidelityConvention::amplitude}) {
    CHECK(metrics::vacuum_fidelity(0.0, conv) == Approx(0.5).epsilon(1e-15));
    CHECK(metrics::vacuum_fidelity(40.0, conv) == Approx(1.0).epsilon(1e-12));
  }
  CHECK(metrics::vacuum_fidelity(0.795, FidelityConvention::paper) ==
        Approx(1.0 / (1.0 + std::exp(-0.795))).epsilon(1e-15));
  CHECK(metrics::vacuum_fidelity(0.795, FidelityConvention::amplitude) ==
        Approx(1.0 / (1.0 + std::exp(-1.59))).epsilon(1e-15));

  // inverse maps round trip
  for (auto conv : {FidelityConvention::paper, FidelityConvention::amplitude})
    for (double r : {0.1, 0.795, 2.0})
      CHECK(metrics::fidelity_to_r(metrics::vacuum_fidelity(r, conv), conv) ==
            Approx(r).epsilon(1e-12));
  CHECK_THROWS_AS(metrics::fidelity_to_r(1.0, FidelityConvention::paper),
                  InvalidParameter);
}

TEST_CASE("teleported vacuum picks the amplitude convention") {
  // overlap(teleport(vacuum, r), vacuum) = 1 / (1 + e^{-2r}): the grid fact
  // that identifies which convention the convolution kernel realizes
  const WignerGrid vac = phase::wigner_vacuum(kGrid);
  for (double r : {0.0, 0.35, 0.795, 2.0}) {
    const double got = metrics::overlap(phase::teleport(vac, r), vac);
    CHECK(std::fabs(got - metrics::vacuum_fidelity(r, metrics::FidelityConvention::amplitude)) <
          1e-4);
  }
}

TEST_CASE("comparison report serializes to JSON") {
  const WignerGrid vac = phase::wigner_vacuum(kGrid);
  const WignerGrid sq = phase::wigner_squeezed_vacuum(0.28, kGrid);
  const metrics::ComparisonReport rep = metrics::compare(vac, sq);
  CHECK(rep.overlap == Approx(0.96204096430600608).epsilon(1e-9));
  CHECK(rep.normalized_overlap == Approx(rep.overlap / std::sqrt(rep.purity_a * rep.purity_b))
                                      .epsilon(1e-12));
  const std::string json = rep.to_json();
  CHECK(json.find("\"overlap\"") != std::string::npos);
  CHECK(json.find("\"l2_distance\"") != std::string::npos);
  CHECK(json.find("\"purity_a\"") != std::string::npos);
}
