#include <doctest.h>

#include <cmath>
#include <complex>

#include "ferris/errors.hpp"
#include "ferris/grid.hpp"
#include "ferris/propagation.hpp"

using namespace ferris;
using cd = std::complex<double>;

namespace {

constexpr double kK = 2e7;     // 1/m
constexpr double kW = 200e-6;  // Gaussian amplitude 1/e radius

ComplexField2D gaussian(const GridSpec& g, double width, double chirp_focal = 0.0) {
  return sample_polar_function(g, [width, chirp_focal](double r, double) {
    const double amp = std::exp(-r * r / (width * width));
    if (chirp_focal == 0.0) return cd{amp, 0.0};
    const double phase = -kK * r * r / (2.0 * chirp_focal);
    return cd{amp * std::cos(phase), amp * std::sin(phase)};
  });
}

}  // namespace

TEST_CASE("zero step is the identity") {
  const GridSpec g{128, 128, 1e-3, 1e-3};
  const auto psi = gaussian(g, kW);
  const auto out = propagate(psi, kK, 0.0);
  for (std::size_t i = 0; i < psi.values.size(); ++i) CHECK(out.values[i] == psi.values[i]);
}

TEST_CASE("propagation is unitary") {
  const GridSpec g{128, 128, 1e-3, 1e-3};
  const auto psi = gaussian(g, kW);
  const double n0 = field_norm(psi);
  CHECK(field_norm(propagate(psi, kK, 0.13)) == doctest::Approx(n0).epsilon(1e-12));

  auto cur = psi;
  for (int i = 0; i < 100; ++i) cur = propagate(cur, kK, 2e-3);
  CHECK(std::abs(field_norm(cur) - n0) / n0 < 1e-9);
}

TEST_CASE("reciprocity of forward and backward steps") {
  const GridSpec g{128, 128, 1e-3, 1e-3};
  const auto psi = gaussian(g, kW);
  const auto back = propagate(propagate(psi, kK, 0.07), kK, -0.07);
  double peak = 0.0;
  for (const auto& v : psi.values) peak = std::max(peak, std::abs(v));
  for (std::size_t i = 0; i < psi.values.size(); ++i)
    CHECK(std::abs(back.values[i] - psi.values[i]) <= 1e-10 * peak);
}

TEST_CASE("free Gaussian spreading follows the paraxial law") {
  const GridSpec g{256, 256, 5.0 * kW, 5.0 * kW};
  const auto psi = gaussian(g, kW);
  const double r0 = rms_radius(psi);
  CHECK(r0 == doctest::Approx(kW / std::sqrt(2.0)).epsilon(1e-9));

  for (double dz : {0.1, 0.25, 0.332}) {
    const double theta = 2.0 * dz / (kK * kW * kW);
    const double expect = r0 * std::sqrt(1.0 + theta * theta);
    CHECK(rms_radius(propagate(psi, kK, dz)) == doctest::Approx(expect).epsilon(1e-6));
  }
}

TEST_CASE("a lens phase focuses at its focal distance") {
  const double F = 0.02;
  const GridSpec g{512, 512, 5.0 * kW, 5.0 * kW};
  const auto psi = gaussian(g, kW, F);

  PropagationPlan plan{kK, 0.3 * F, 1.8 * F, 25, 0.1};
  const auto scan = find_focus(psi, kK, plan);
  REQUIRE(scan.found);
  CHECK(std::abs(scan.z_focus - F) / F < 0.01);
  CHECK(scan.rms_at_focus < 0.1 * rms_radius(psi));
}

TEST_CASE("a diverging phase has no interior focus") {
  const double F = 0.02;
  const GridSpec g{256, 256, 5.0 * kW, 5.0 * kW};
  const auto psi = gaussian(g, kW, -F);
  PropagationPlan plan{kK, 0.3 * F, 1.8 * F, 15, 0.1};
  const auto scan = find_focus(psi, kK, plan);
  CHECK_FALSE(scan.found);
  CHECK(scan.note == "monotone in range");
  // the scan itself is monotone increasing
  for (std::size_t i = 1; i < scan.samples.size(); ++i)
    CHECK(scan.samples[i].second > scan.samples[i - 1].second);
}

TEST_CASE("fields with power at the band edge are refused") {
  const GridSpec g{128, 128, 1e-3, 1e-3};
  const double k_edge = 0.96 * M_PI / g.dx();
  auto psi = make_complex_field(g);
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      const double x = g.x(i), y = g.y(j);
      const double amp = std::exp(-(x * x + y * y) / (kW * kW));
      psi.at(i, j) = std::polar(amp, k_edge * x);
    }
  CHECK(nyquist_edge_fraction(psi) > 0.9);
  CHECK_THROWS_WITH_AS(propagate(psi, kK, 1e-3), doctest::Contains("Nyquist"), Error);
}

TEST_CASE("propagation preserves the azimuthal harmonic class") {
  // a helicity-2 ring mode on a square grid populates only q = 2 mod 4; the
  // complementary classes stay at rounding level through propagation, and the
  // bilinear ring-extraction floor bounds the rest
  const GridSpec g{512, 512, 1.0, 1.0};
  const double w = 0.22;
  auto psi = sample_polar_function(g, [w](double r, double phi) {
    const double amp = (r / w) * (r / w) * std::exp(-r * r / (w * w));
    return cd{amp * std::cos(2.0 * phi), amp * std::sin(2.0 * phi)};
  });
  // dz on the scale of the mode's diffraction length
  const auto out = propagate(psi, kK, 0.25 * kK * w * w / 2.0);

  for (const ComplexField2D* f : {static_cast<const ComplexField2D*>(&psi), &out}) {
    const auto spec = azimuthal_spectrum(*f, 0.3, 64);
    const double c2 = std::abs(spec.coeff(2));
    for (int q = spec.q_min(); q <= spec.q_max(); ++q) {
      if (q == 2) continue;
      if ((q % 2) != 0 || (q % 4) == 0) {
        CHECK(std::abs(spec.coeff(q)) < 1e-12 * c2);
      } else {
        CHECK(std::abs(spec.coeff(q)) < 1e-4 * c2);
      }
    }
  }
}

TEST_CASE("plan validation") {
  CHECK_THROWS_AS(PropagationPlan(-1.0, 0.0, 1.0, 8, 0.1).validate(), Error);
  CHECK_THROWS_AS(PropagationPlan(kK, 1.0, 0.5, 8, 0.1).validate(), Error);
  CHECK_THROWS_AS(PropagationPlan(kK, 0.0, 1.0, 1, 0.1).validate(), Error);
  CHECK_THROWS_AS(PropagationPlan(kK, 0.0, 1.0, 8, 0.9).validate(), Error);
}
