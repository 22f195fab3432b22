#include <doctest.h>

#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "ferris/diffraction.hpp"
#include "ferris/errors.hpp"
#include "ferris/special.hpp"

using namespace ferris;
using cd = std::complex<double>;

namespace {

constexpr double kGamma = 3.279822730347744e7;
constexpr double kW0 = 180e-6;
constexpr double kLambda = 589.16e-9;
constexpr double kSigma = 100e-6;

RabiConfig paper_rabi(double og = 10.0, double ogl = 10.0, double det = 100.0, int ell = 2,
                      int p = 0) {
  return RabiConfig::gamma_units(kGamma, og, ogl, det, ell, p, kW0, kLambda,
                                 ThinLens{1.5, 8e-3, 8e-3});
}

ImprintParams paper_imprint(double tau_gamma = 0.5) {
  return ImprintParams::from(paper_rabi(), tau_gamma / kGamma);
}

WavePacket packet() { return WavePacket{kSigma, 2.0926976849031422e7}; }

GridSpec grid256() { return GridSpec{256, 256, 200e-6, 200e-6}; }

double max_abs(const std::vector<cd>& v) {
  double m = 0.0;
  for (const auto& x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace

TEST_CASE("initial_packet normalisation and half-maximum point") {
  const GridSpec g{128, 128, 4.0 * kSigma, 4.0 * kSigma};
  const auto psi = initial_packet(packet(), g);
  CHECK(field_norm(psi) == doctest::Approx(1.0).epsilon(1e-10));

  // x = sigma/2 sits on sample i = 72; the amplitude is N/2 there
  CHECK(g.x(72) == doctest::Approx(kSigma / 2.0).epsilon(1e-15));
  const double n0 = packet().norm_const();
  CHECK(psi.at(72, 64).real() == doctest::Approx(0.5 * n0).epsilon(1e-13));
  CHECK(psi.at(72, 64).imag() == 0.0);
}

TEST_CASE("initial_packet warns about tight grids") {
  std::vector<std::string> captured;
  auto prev = set_warn_handler([&](const std::string& m) { captured.push_back(m); });
  initial_packet(packet(), GridSpec{64, 64, 1.5 * kSigma, 1.5 * kSigma});
  set_warn_handler(prev);
  REQUIRE(captured.size() == 1);
  CHECK(captured[0].find("clipped") != std::string::npos);
}

TEST_CASE("phase_imprint preserves the modulus and the norm") {
  const auto psi0 = initial_packet(packet(), grid256());
  const auto psi = phase_imprint(psi0, paper_rabi(), 0.5 / kGamma);

  CHECK(field_norm(psi) == doctest::Approx(field_norm(psi0)).epsilon(1e-12));
  for (std::size_t i = 0; i < psi.values.size(); ++i)
    CHECK(std::abs(psi.values[i]) ==
          doctest::Approx(std::abs(psi0.values[i])).epsilon(1e-14));
}

TEST_CASE("phase_imprint with zero time is the identity") {
  const auto psi0 = initial_packet(packet(), grid256());
  const auto psi = phase_imprint(psi0, paper_rabi(), 0.0);
  for (std::size_t i = 0; i < psi.values.size(); ++i) CHECK(psi.values[i] == psi0.values[i]);
}

TEST_CASE("phase_imprint warns beyond the short-interaction regime") {
  std::vector<std::string> captured;
  auto prev = set_warn_handler([&](const std::string& m) { captured.push_back(m); });
  const auto psi0 = initial_packet(packet(), GridSpec{64, 64, 200e-6, 200e-6});
  phase_imprint(psi0, paper_rabi(), 1.5 / kGamma);
  set_warn_handler(prev);
  REQUIRE(!captured.empty());
  CHECK(captured.back().find("1/Gamma") != std::string::npos);
}

TEST_CASE("maximum imprinted phase matches the radial oracle") {
  // oracle: max over r of 2 tau (|Og|+|Olg|)^2 / Delta by fine scan
  auto cfg = paper_rabi();
  const double tau = 0.5 / kGamma;
  double oracle = 0.0;
  for (int i = 0; i <= 200000; ++i) {
    const double r = 2.0 * kW0 * i / 200000.0;
    const double s = rabi_gaussian(cfg, r) + rabi_lg(cfg, r);
    oracle = std::max(oracle, 2.0 * tau * s * s / cfg.detuning);
  }
  CHECK(oracle == doctest::Approx(1.1133358100712363).epsilon(1e-9));

  const GridSpec g{512, 512, 300e-6, 300e-6};
  const auto psi0 = initial_packet(packet(), g);
  const auto psi = phase_imprint(psi0, cfg, tau);
  double grid_max = 0.0;
  for (std::size_t i = 0; i < psi.values.size(); ++i) {
    if (std::abs(psi0.values[i]) < 1e-30) continue;
    grid_max = std::max(grid_max, std::abs(std::arg(psi.values[i] / psi0.values[i])));
  }
  CHECK(grid_max == doctest::Approx(oracle).epsilon(1e-4));
}

TEST_CASE("imprint profile values and the cross-term maximum") {
  auto cfg = paper_rabi();
  const double tau = 0.5 / kGamma;

  const auto far = imprint_profiles(cfg, tau, 40.0 * kW0);
  CHECK(far.Btau == 0.0);
  CHECK(far.Ctau == 0.0);
  CHECK(far.Etau == 0.0);

  CHECK(imprint_profiles(cfg, tau, 0.0).Etau == 0.0);  // LG node on the axis

  // the cross-term phase peaks at r = w0/sqrt2
  const auto params = ImprintParams::from(cfg, tau);
  double best = 0.0, best_r = 0.0;
  for (int i = 0; i <= 200000; ++i) {
    const double r = 2.0 * kW0 * i / 200000.0;
    const double v = std::abs(params.E(r)) * tau;
    if (v > best) {
      best = v;
      best_r = r;
    }
  }
  CHECK(best == doctest::Approx(0.5202600950228889).epsilon(1e-9));
  CHECK(best_r == doctest::Approx(kW0 / std::sqrt(2.0)).epsilon(1e-4));
  CHECK(params.max_abs_Etau(2.0 * kW0) == doctest::Approx(best).epsilon(1e-8));
}

TEST_CASE("auto_m_max from the Bessel tail bound") {
  const auto params = paper_imprint();
  CHECK(auto_m_max(params, 2.0 * kW0) == 10);
  // zero interaction: only the tail-free order survives
  CHECK(auto_m_max(ImprintParams::from(paper_rabi(), 0.0), 2.0 * kW0) == 1);
}

TEST_CASE("zero interaction decomposes into the bare packet") {
  const auto psi0 = initial_packet(packet(), grid256());
  const auto orders = decompose_orders(psi0, ImprintParams::from(paper_rabi(), 0.0));
  REQUIRE(orders.size() == 3);
  for (const auto& o : orders) {
    if (o.m == 0) {
      for (std::size_t i = 0; i < o.field.values.size(); ++i)
        CHECK(std::abs(o.field.values[i] - psi0.values[i]) <= 1e-15 * std::abs(psi0.values[i]));
    } else {
      for (const auto& v : o.field.values) CHECK(v == cd{0.0, 0.0});
    }
  }
}

TEST_CASE("orders reconstruct the imprinted wave") {
  const auto psi0 = initial_packet(packet(), grid256());
  const auto params = paper_imprint();
  const auto psi = phase_imprint(psi0, params.cfg, params.tau);
  const auto orders = decompose_orders(psi0, params);
  REQUIRE(orders.size() == 21);

  ComplexField2D sum = make_complex_field(psi0.spec);
  for (const auto& o : orders)
    for (std::size_t i = 0; i < sum.values.size(); ++i) sum.values[i] += o.field.values[i];

  ComplexField2D diff = make_complex_field(psi0.spec);
  for (std::size_t i = 0; i < diff.values.size(); ++i)
    diff.values[i] = sum.values[i] - psi.values[i];
  CHECK(field_norm(diff) / field_norm(psi0) < 1e-10);
  CHECK(max_abs(diff.values) < 1e-10 * max_abs(psi.values));

  // metadata bookkeeping
  const double a = params.a();
  for (const auto& o : orders) {
    CHECK(o.helicity == o.m * 2);
    CHECK(o.quad_phase_coeff == doctest::Approx(-o.m * a).epsilon(1e-15));
    CHECK(o.extra_phase == doctest::Approx(o.m * params.knd()).epsilon(1e-15));
  }
}

TEST_CASE("bessel weights obey the sum rule at sampled radii") {
  const auto params = paper_imprint();
  const int M = auto_m_max(params, 2.0 * kW0);
  for (int i = 0; i <= 100; ++i) {
    const double r = 2.0 * kW0 * i / 100.0;
    const double x = std::abs(params.E(r) * params.tau);
    const auto seq = bessel_j_sequence(M, x);
    double s = seq[0] * seq[0];
    for (int m = 1; m <= M; ++m)
      s += 2.0 * seq[static_cast<std::size_t>(m)] * seq[static_cast<std::size_t>(m)];
    CHECK(std::abs(s - 1.0) < 1e-12);
  }
}

TEST_CASE("opposite orders have equal modulus pointwise") {
  const auto psi0 = initial_packet(packet(), grid256());
  const auto orders = decompose_orders(psi0, paper_imprint(), 3);
  const auto& plus = orders[4].field;   // m = +1
  const auto& minus = orders[2].field;  // m = -1
  REQUIRE(orders[4].m == 1);
  REQUIRE(orders[2].m == -1);
  double scale = max_abs(plus.values);
  for (std::size_t i = 0; i < plus.values.size(); ++i)
    CHECK(std::abs(std::abs(plus.values[i]) - std::abs(minus.values[i])) <= 1e-12 * scale);
}

TEST_CASE("ring harmonics of the imprinted wave carry the order weights") {
  const GridSpec g{512, 512, 250e-6, 250e-6};
  const auto psi0 = initial_packet(packet(), g);
  const auto params = paper_imprint();
  const auto psi = phase_imprint(psi0, params.cfg, params.tau);

  const double r = kW0 / std::sqrt(2.0);
  const auto spec = azimuthal_spectrum(psi, r, 256);
  const double etau = params.E(r) * params.tau;
  const double psi0_r = packet().norm_const() *
                        std::exp(-4.0 * std::log(2.0) * r * r / (kSigma * kSigma));

  // harmonics q = 2m carry |psi0| |J_m|, odd harmonics are empty; the q = 6
  // line sits on J_3 ~ 3e-3 where leakage from the strong lines dominates
  // bilinear smoothing shaves a little off each line; the weaker the line the
  // larger the relative leakage from its strong neighbours
  const double tols[4] = {2e-3, 5e-3, 2e-2, 8e-2};
  for (int m : {0, 1, 2, 3}) {
    const double expect = psi0_r * std::abs(bessel_j(m, etau));
    CHECK(std::abs(spec.coeff(2 * m)) ==
          doctest::Approx(expect).epsilon(tols[static_cast<std::size_t>(m)]));
  }
  const double c0 = std::abs(spec.coeff(0));
  for (int q = -20; q <= 20; ++q) {
    if (q % 2 == 0) continue;
    CHECK(std::abs(spec.coeff(q)) < 1e-4 * c0);
  }
  CHECK(std::abs(spec.coeff(2)) / c0 ==
        doctest::Approx(0.2693476549760093).epsilon(1e-3));
}

TEST_CASE("order populations: parity, bound, quadrature value, completeness") {
  const GridSpec g{512, 512, 200e-6, 200e-6};
  const auto psi0 = initial_packet(packet(), g);
  const auto params = paper_imprint();

  const auto none = ImprintParams::from(paper_rabi(), 0.0);
  CHECK(order_weight(psi0, none, 0) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(order_weight(psi0, none, 1) == 0.0);

  const double p1 = order_weight(psi0, params, 1);
  CHECK(p1 == doctest::Approx(order_weight(psi0, params, -1)).epsilon(1e-14));
  CHECK(p1 <= 0.25142755559956304 * 0.25142755559956304);
  CHECK(p1 == doctest::Approx(0.006636103432993963).epsilon(1e-6));  // radial quadrature oracle

  double total = 0.0;
  for (int m = -10; m <= 10; ++m) total += order_weight(psi0, params, m);
  CHECK(total == doctest::Approx(1.0).epsilon(1e-10));

  // populations equal the squared norms of the order fields
  const auto orders = decompose_orders(psi0, params);
  for (const auto& o : orders) {
    const double n = field_norm(o.field);
    CHECK(n * n == doctest::Approx(order_weight(psi0, params, o.m)).epsilon(1e-10));
  }
}

namespace {

// unwraps the phase of (order_plus . conj(order_minus)) along the +x row and
// fits phase against r^2; returns the fitted quadratic coefficient in rad/m^2
double fitted_quad_phase(const ComplexField2D& plus, const ComplexField2D& minus) {
  const GridSpec& g = plus.spec;
  std::vector<double> r2s, phases;
  double prev = 0.0;
  bool first = true;
  for (int i = g.nx / 2 + 1; i < g.nx - 2; ++i) {
    const cd p = plus.at(i, g.ny / 2) * std::conj(minus.at(i, g.ny / 2));
    if (std::abs(p) < 1e-30) continue;
    double ph = std::arg(p);
    if (!first) {
      while (ph - prev > M_PI) ph -= 2.0 * M_PI;
      while (ph - prev < -M_PI) ph += 2.0 * M_PI;
    }
    first = false;
    prev = ph;
    const double x = g.x(i);
    r2s.push_back(x * x);
    phases.push_back(ph);
  }
  // least squares slope
  const std::size_t n = r2s.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sx += r2s[i];
    sy += phases[i];
    sxx += r2s[i] * r2s[i];
    sxy += r2s[i] * phases[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace

TEST_CASE("ideal second imprint cancels the opposing quadratic phases") {
  const auto psi0 = initial_packet(packet(), grid256());
  const auto params = paper_imprint();
  auto orders = decompose_orders(psi0, params, 2);
  const double a = params.a();
  const double r_max2 = 2.0 * 200e-6 * 200e-6;

  second_imprint_ideal(orders, 1);
  const auto& plus = orders[3];
  const auto& minus = orders[1];
  REQUIRE(plus.m == 1);
  REQUIRE(minus.m == -1);
  CHECK(plus.quad_phase_coeff == doctest::Approx(a).epsilon(1e-12));
  CHECK(minus.quad_phase_coeff == doctest::Approx(a).epsilon(1e-12));

  const double slope_once = fitted_quad_phase(plus.field, minus.field);
  CHECK(std::abs(slope_once) * r_max2 < 1e-9);

  // applying the imprint twice is not idempotent: the pair picks up 2 a r^2
  second_imprint_ideal(orders, 1);
  const double slope_twice = fitted_quad_phase(plus.field, minus.field);
  CHECK(slope_twice == doctest::Approx(2.0 * a).epsilon(1e-6));

  CHECK_THROWS_AS(second_imprint_ideal(orders, 3), Error);

  // m = 0 is a no-op
  auto before = orders[2].field.values;
  second_imprint_ideal(orders, 0);
  for (std::size_t i = 0; i < before.size(); ++i) CHECK(before[i] == orders[2].field.values[i]);
}

TEST_CASE("physical second imprint: axial order, neutrality at s = 0, selectivity") {
  const auto psi0 = initial_packet(packet(), grid256());
  const auto params = paper_imprint();
  const TwoLevelAtom atom{kLambda, kGamma, 2.2069e-25, 10.9};
  const double hbar_m = 1.054571817e-34 / 2.2069e-25;

  // s = 0: every order acquires the identical phase
  {
    auto orders = decompose_orders(psi0, params, 1);
    auto ref = orders;
    second_imprint_physical(orders, 0, 5.0, 2.0, 0.01, atom, 1e-6);
    const cd expect = std::polar(1.0, 2.0 * 2.0 * 0.01 / 5.0);
    for (std::size_t k = 0; k < orders.size(); ++k)
      for (std::size_t i = 0; i < orders[k].field.values.size(); ++i) {
        const cd r0 = ref[k].field.values[i];
        if (std::abs(r0) < 1e-30) continue;
        CHECK(std::abs(orders[k].field.values[i] / r0 - expect) < 1e-12);
      }
  }

  // selectivity: clamp radius rc with delta0 just above the shift at rc makes
  // the detuning of the co-rotating order small everywhere
  {
    auto orders = decompose_orders(psi0, params, 1);
    auto ref = orders;
    const double rc = 120e-6;
    const double shift = hbar_m / (rc * rc);
    const double delta0 = 1.01 * shift;
    const double om = 1e-2, dt = 1e-1;  // keeps every phase well below pi
    second_imprint_physical(orders, 1, delta0, om, dt, atom, rc);
    const GridSpec& g = psi0.spec;
    for (int i = g.nx / 2 + 4; i < g.nx - 8; i += 16) {
      const double r = std::max(g.x(i), rc);
      const double dp = delta0 - hbar_m / (r * r);
      const double dm = delta0 + hbar_m / (r * r);
      const cd vp = orders[2].field.values[static_cast<std::size_t>(g.ny / 2) * g.nx + i] /
                    ref[2].field.values[static_cast<std::size_t>(g.ny / 2) * g.nx + i];
      const cd vm = orders[0].field.values[static_cast<std::size_t>(g.ny / 2) * g.nx + i] /
                    ref[0].field.values[static_cast<std::size_t>(g.ny / 2) * g.nx + i];
      const double phase_p = std::arg(vp);
      const double phase_m = std::arg(vm);
      CHECK(phase_p / phase_m == doctest::Approx(dm / dp).epsilon(1e-9));
      // the m = 0 order sees delta0 exactly
      const cd v0 = orders[1].field.values[static_cast<std::size_t>(g.ny / 2) * g.nx + i] /
                    ref[1].field.values[static_cast<std::size_t>(g.ny / 2) * g.nx + i];
      CHECK(std::arg(v0) == doctest::Approx(om * om * dt / delta0).epsilon(1e-12));
    }
  }

  // sweeping through resonance inside the grid is refused
  {
    auto orders = decompose_orders(psi0, params, 1);
    const double delta0 = hbar_m / (100e-6 * 100e-6);  // resonance of m=+1 at 100 um
    CHECK_THROWS_WITH_AS(second_imprint_physical(orders, 1, delta0, 1.0, 1.0, atom, 1e-6),
                         doctest::Contains("resonance crossing"), Error);
  }
}

TEST_CASE("ferris density: petal counts and angular positions") {
  const auto params = paper_imprint();
  const GridSpec g{512, 512, 200e-6, 200e-6};

  for (int m : {1, 2}) {
    const auto density = ferris_density(params, packet(), m, g);
    // ring of maximum density
    std::size_t arg = 0;
    for (std::size_t i = 0; i < density.values.size(); ++i)
      if (density.values[i] > density.values[arg]) arg = i;
    const int jj = static_cast<int>(arg) / g.nx, ii = static_cast<int>(arg) % g.nx;
    const double r_pk = std::hypot(g.x(ii), g.y(jj));
    CHECK(count_azimuthal_peaks(density, r_pk) == 2 * m * 2);

    // petal centres satisfy m ell phi + m knd = 0 (mod pi)
    const int n = 1 << 14;
    int best = 0;
    std::vector<double> ring(n);
    for (int k = 0; k < n; ++k) {
      const double phi = 2.0 * M_PI * k / n;
      ring[static_cast<std::size_t>(k)] = bilinear(density, r_pk * std::cos(phi), r_pk * std::sin(phi));
      if (ring[static_cast<std::size_t>(k)] > ring[static_cast<std::size_t>(best)]) best = k;
    }
    // parabolic refinement of the petal centre
    const double ym = ring[static_cast<std::size_t>((best + n - 1) % n)];
    const double y0 = ring[static_cast<std::size_t>(best)];
    const double yp = ring[static_cast<std::size_t>((best + 1) % n)];
    const double delta = 0.5 * (ym - yp) / (ym - 2.0 * y0 + yp);
    const double phi_pk = 2.0 * M_PI * (best + delta) / n;
    const double residue =
        std::remainder(m * 2 * phi_pk + m * reduce_angle(params.knd()), M_PI);
    CHECK(std::abs(residue) < 2e-2);
  }

  CHECK_THROWS_AS(ferris_density(params, packet(), 0, g), Error);
}

TEST_CASE("ferris density closed form matches the order superposition") {
  const auto params = paper_imprint();
  const GridSpec g{256, 256, 200e-6, 200e-6};
  const auto psi0 = initial_packet(packet(), g);

  for (int m : {1, 2}) {
    const auto closed = ferris_density(params, packet(), m, g);

    auto orders = decompose_orders(psi0, params, std::max(2, m));
    second_imprint_ideal(orders, m);
    const ComplexField2D* plus = nullptr;
    const ComplexField2D* minus = nullptr;
    for (const auto& o : orders) {
      if (o.m == m) plus = &o.field;
      if (o.m == -m) minus = &o.field;
    }
    REQUIRE(plus != nullptr);
    REQUIRE(minus != nullptr);

    RealField2D built = make_real_field(g);
    for (std::size_t i = 0; i < built.values.size(); ++i)
      built.values[i] = std::norm(plus->values[i] + minus->values[i]);
    const double total = pairwise_sum(built.values.data(), built.values.size()) * g.dx() * g.dy();
    for (auto& v : built.values) v /= total;

    double peak = 0.0;
    for (double v : closed.values) peak = std::max(peak, v);
    double worst = 0.0;
    for (std::size_t i = 0; i < built.values.size(); ++i)
      worst = std::max(worst, std::abs(built.values[i] - closed.values[i]));
    CHECK(worst < 1e-9 * peak);
  }
}

TEST_CASE("ferris density period in the azimuthal direction") {
  const auto params = paper_imprint();

  // m = 1: the pattern repeats under a quarter turn, which maps the grid
  // onto itself
  const GridSpec g{256, 256, 200e-6, 200e-6};
  const auto d1 = ferris_density(params, packet(), 1, g);
  double peak = 0.0;
  for (double v : d1.values) peak = std::max(peak, v);
  for (int j = 1; j < g.ny; ++j)
    for (int i = 1; i < g.nx; ++i) {
      const int ir = g.nx / 2 + g.ny / 2 - j;
      const int jr = g.ny / 2 + (i - g.nx / 2);
      if (ir < 1 || ir >= g.nx || jr < 1 || jr >= g.ny) continue;
      CHECK(std::abs(d1.at(i, j) - d1.at(ir, jr)) <= 1e-10 * peak);
    }

  // m = 2: check the pi/4 period on the closed-form profile directly
  const double n0 = packet().norm_const();
  auto density_at = [&](double r, double phi) {
    const double amp = n0 * std::exp(-4.0 * std::log(2.0) * r * r / (kSigma * kSigma));
    const double w = bessel_j(2, params.E(r) * params.tau);
    const double c = std::cos(2.0 * 2.0 * phi + 2.0 * reduce_angle(params.knd()));
    return 4.0 * amp * amp * w * w * c * c;
  };
  for (double r : {30e-6, 60e-6, 90e-6})
    for (int k = 0; k < 12; ++k) {
      const double phi = 2.0 * M_PI * k / 12.0;
      const double a = density_at(r, phi);
      const double b = density_at(r, phi + M_PI / 4.0);
      CHECK(std::abs(a - b) <= 1e-10 * std::max(a, b) + 1e-300);
    }
}
