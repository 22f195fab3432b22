#include "ferris/diffraction.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ferris/constants.hpp"
#include "ferris/errors.hpp"
#include "ferris/special.hpp"

namespace ferris {

namespace {

constexpr double kPi = 3.1415926535897932384626433832795;
constexpr double kTwoPi = 2.0 * kPi;
constexpr double kFourLn2 = 2.7725887222397812376689284858327;  // 4 ln 2

// i^{-m} cycles with period 4: 1, -i, -1, +i
std::complex<double> i_pow_minus(int m) {
  switch (((m % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, -1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, 1.0};
  }
}

}  // namespace

ImprintParams ImprintParams::from(const RabiConfig& cfg, double tau_seconds) {
  ImprintParams p;
  p.cfg = cfg;
  p.tau = tau_seconds;
  p.validate();
  return p;
}

void ImprintParams::validate() const {
  cfg.validate();
  if (tau < 0.0) throw_config("imprint: tau must be >= 0");
}

double ImprintParams::B(double r) const {
  const double olg = rabi_lg(cfg, r);
  return 2.0 * olg * olg / cfg.detuning;
}

double ImprintParams::C(double r) const {
  const double og = rabi_gaussian(cfg, r);
  return 2.0 * og * og / cfg.detuning;
}

double ImprintParams::E(double r) const {
  return 4.0 * rabi_gaussian(cfg, r) * rabi_lg(cfg, r) / cfg.detuning;
}

double ImprintParams::max_abs_Etau(double r_max) const {
  const int n = 100001;
  double best = 0.0;
  for (int i = 0; i < n; ++i) {
    const double r = r_max * i / (n - 1.0);
    best = std::max(best, std::abs(E(r) * tau));
  }
  return best;
}

ImprintProfiles imprint_profiles(const RabiConfig& cfg, double tau, double r) {
  if (r < 0.0) throw_config("imprint_profiles: r must be >= 0");
  const ImprintParams p = ImprintParams::from(cfg, tau);
  return {p.B(r) * tau, p.C(r) * tau, p.E(r) * tau};
}

ComplexField2D initial_packet(const WavePacket& packet, const GridSpec& spec) {
  packet.validate();
  if (std::min(spec.half_extent_x, spec.half_extent_y) < 2.0 * packet.sigma)
    warn("initial_packet: half extent below 2 sigma, the packet is clipped");
  const double n0 = packet.norm_const();
  const double inv_s2 = 1.0 / (packet.sigma * packet.sigma);
  return sample_polar_function(
      spec,
      [&](double r, double) {
        return std::complex<double>(n0 * std::exp(-kFourLn2 * r * r * inv_s2), 0.0);
      },
      "psi0", "1/m");
}

ComplexField2D phase_imprint(const ComplexField2D& psi, const RabiConfig& cfg, double tau) {
  cfg.validate();
  if (tau < 0.0) throw_config("phase_imprint: tau must be >= 0");
  if (tau * cfg.gamma > 1.0)
    warn("phase_imprint: tau exceeds 1/Gamma, outside the short-interaction regime");

  ComplexField2D out = psi;
  out.quantity = "psi_imprinted";
  const GridSpec& g = psi.spec;
  detail::parallel_for_rows(g.ny, [&](int j) {
    const double y = g.y(j);
    for (int i = 0; i < g.nx; ++i) {
      const double x = g.x(i);
      const double r = std::hypot(x, y);
      double phi = std::atan2(y, x);
      if (phi < 0.0) phi += kTwoPi;
      const double phase = -2.0 * tau * rabi_sq_total(cfg, r, phi) / cfg.detuning;
      out.at(i, j) *= std::complex<double>(std::cos(phase), std::sin(phase));
    }
  });
  return out;
}

int auto_m_max(const ImprintParams& params, double r_max, double tol) {
  const double x = params.max_abs_Etau(r_max);
  int m = 1;
  double bound = 0.5 * x;  // (x/2)^m / m! at m = 1
  while (bound >= tol && m < 200) {
    ++m;
    bound *= 0.5 * x / m;
  }
  return m;
}

std::vector<DiffractionOrder> decompose_orders(const ComplexField2D& psi0,
                                               const ImprintParams& params, int m_max) {
  params.validate();
  const GridSpec& g = psi0.spec;
  const double r_corner = std::hypot(g.half_extent_x, g.half_extent_y);
  const int M = m_max >= 0 ? m_max : auto_m_max(params, r_corner);

  const double a = params.a();
  const double knd = params.knd();
  const double knd_red = reduce_angle(knd);
  const int ell = params.ell();

  std::vector<DiffractionOrder> orders(static_cast<std::size_t>(2 * M + 1));
  for (int m = -M; m <= M; ++m) {
    DiffractionOrder& o = orders[static_cast<std::size_t>(m + M)];
    o.m = m;
    o.helicity = m * ell;
    o.quad_phase_coeff = -m * a;
    o.extra_phase = m * knd;
    o.chirp = a;
    std::ostringstream name;
    name << "order_m" << (m >= 0 ? "+" : "") << m;
    o.field = make_complex_field(g, name.str(), psi0.units);
  }

  detail::parallel_for_rows(g.ny, [&](int j) {
    const double y = g.y(j);
    std::vector<double> jm;
    for (int i = 0; i < g.nx; ++i) {
      const double x = g.x(i);
      const double r = std::hypot(x, y);
      double phi = std::atan2(y, x);
      if (phi < 0.0) phi += kTwoPi;

      const double bt = params.B(r) * params.tau;
      const double ct = params.C(r) * params.tau;
      const double et = params.E(r) * params.tau;
      const std::complex<double> common =
          psi0.at(i, j) * std::complex<double>(std::cos(bt + ct), -std::sin(bt + ct));

      jm = bessel_j_sequence(M, std::abs(et));
      const bool flip = et < 0.0;  // J_m(-x) = (-1)^m J_m(x)

      for (int m = -M; m <= M; ++m) {
        const int ma = std::abs(m);
        double w = jm[static_cast<std::size_t>(ma)];
        if (m < 0 && (ma & 1)) w = -w;    // J_{-m} = (-1)^m J_m
        if (flip && (ma & 1)) w = -w;
        const double phase = m * knd_red + (m * ell) * phi - (m * a) * (r * r);
        const std::complex<double> rot(std::cos(phase), std::sin(phase));
        orders[static_cast<std::size_t>(m + M)].field.at(i, j) =
            common * i_pow_minus(m) * w * rot;
      }
    }
  });
  return orders;
}

double order_weight(const ComplexField2D& psi0, const ImprintParams& params, int m) {
  const GridSpec& g = psi0.spec;
  const double cell = g.dx() * g.dy();
  const double s = pairwise_sum_indexed(psi0.values.size(), [&](std::size_t idx) {
    const int j = static_cast<int>(idx) / g.nx;
    const int i = static_cast<int>(idx) % g.nx;
    const double r = std::hypot(g.x(i), g.y(j));
    const double w = bessel_j(m, params.E(r) * params.tau);
    return std::norm(psi0.values[idx]) * w * w;
  });
  return s * cell;
}

namespace {

DiffractionOrder* find_order(std::vector<DiffractionOrder>& orders, int m) {
  for (auto& o : orders)
    if (o.m == m) return &o;
  return nullptr;
}

}  // namespace

void second_imprint_ideal(std::vector<DiffractionOrder>& orders, int m_target) {
  if (m_target == 0) return;
  DiffractionOrder* plus = find_order(orders, m_target);
  DiffractionOrder* minus = find_order(orders, -m_target);
  if (plus == nullptr || minus == nullptr)
    throw_config("second_imprint_ideal: orders +-" + std::to_string(std::abs(m_target)) +
                 " not present");

  const double a = plus->chirp;
  const GridSpec& g = plus->field.spec;
  detail::parallel_for_rows(g.ny, [&](int j) {
    const double y = g.y(j);
    for (int i = 0; i < g.nx; ++i) {
      const double x = g.x(i);
      const double phase = 2.0 * (m_target * a) * (x * x + y * y);
      plus->field.at(i, j) *= std::complex<double>(std::cos(phase), std::sin(phase));
    }
  });
  plus->quad_phase_coeff += 2.0 * m_target * a;
}

void second_imprint_physical(std::vector<DiffractionOrder>& orders, int s, double delta0,
                             double omega_prime0, double dt, const TwoLevelAtom& atom,
                             double r_core) {
  atom.validate();
  if (!(r_core > 0.0)) throw_config("second_imprint_physical: r_core must be positive");
  if (delta0 == 0.0) throw_config("second_imprint_physical: delta0 must be nonzero");

  for (auto& o : orders) {
    const GridSpec& g = o.field.spec;
    const double r_corner = std::hypot(g.half_extent_x, g.half_extent_y);
    // Delta_m(r) = delta0 - s m hbar / (M r^2) is monotone in r; a zero inside
    // [r_core, r_corner] means the imprint sweeps through resonance.
    const double shift_term = s * o.m * phys::hbar / atom.mass;
    if (shift_term != 0.0) {
      const double r_res_sq = shift_term / delta0;
      if (r_res_sq > 0.0) {
        const double r_res = std::sqrt(r_res_sq);
        if (r_res >= r_core && r_res <= r_corner) {
          std::ostringstream os;
          os << "second_imprint_physical: resonance crossing for order m=" << o.m << " at r="
             << r_res << " m";
          throw_numeric(os.str());
        }
      }
    }
    detail::parallel_for_rows(g.ny, [&](int j) {
      const double y = g.y(j);
      for (int i = 0; i < g.nx; ++i) {
        const double x = g.x(i);
        const double r = std::max(std::hypot(x, y), r_core);
        const double delta_m = delta0 - shift_term / (r * r);
        const double phase = omega_prime0 * omega_prime0 * dt / delta_m;
        o.field.at(i, j) *= std::complex<double>(std::cos(phase), std::sin(phase));
      }
    });
  }
}

RealField2D ferris_density(const ImprintParams& params, const WavePacket& packet, int m,
                           const GridSpec& spec) {
  params.validate();
  packet.validate();
  if (m == 0) throw_config("ferris_density: m must be nonzero");

  const double n0 = packet.norm_const();
  const double inv_s2 = 1.0 / (packet.sigma * packet.sigma);
  const double knd_red = reduce_angle(params.knd());
  const int ell = params.ell();

  RealField2D out = make_real_field(spec, "ferris_density", "1/m^2");
  detail::parallel_for_rows(spec.ny, [&](int j) {
    const double y = spec.y(j);
    for (int i = 0; i < spec.nx; ++i) {
      const double x = spec.x(i);
      const double r = std::hypot(x, y);
      double phi = std::atan2(y, x);
      if (phi < 0.0) phi += kTwoPi;
      const double amp = n0 * std::exp(-kFourLn2 * r * r * inv_s2);
      const double w = bessel_j(m, params.E(r) * params.tau);
      const double c = std::cos((m * ell) * phi + m * knd_red);
      out.at(i, j) = 4.0 * amp * amp * w * w * c * c;
    }
  });

  const double total = pairwise_sum(out.values.data(), out.values.size()) * spec.dx() * spec.dy();
  if (total > 0.0) {
    const double inv = 1.0 / total;
    for (auto& v : out.values) v *= inv;
  }
  return out;
}

}  // namespace ferris
