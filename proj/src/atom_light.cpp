#include "ferris/atom_light.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ferris/constants.hpp"
#include "ferris/errors.hpp"
#include "ferris/special.hpp"

namespace ferris {

namespace {
constexpr double kPi = 3.1415926535897932384626433832795;
}

void TwoLevelAtom::validate() const {
  if (!(lambda0 > 0.0) || !(gamma > 0.0) || !(mass > 0.0) || !(I_sat > 0.0))
    throw_config("atom: lambda0, gamma, mass, I_sat must all be positive");
}

void WavePacket::validate() const {
  if (!(sigma > 0.0)) throw_config("packet: sigma must be positive");
  if (!(k_dB > 0.0)) throw_config("packet: k_dB must be positive");
}

RabiConfig RabiConfig::gamma_units(double gamma, double omega_g0_in_gamma,
                                   double omega_gl0_in_gamma, double detuning_in_gamma, int ell,
                                   int p, double w0, double lambda, ThinLens lens) {
  RabiConfig cfg;
  cfg.gamma = gamma;
  cfg.omega_g0 = omega_g0_in_gamma * gamma;
  cfg.omega_gl0 = omega_gl0_in_gamma * gamma;
  cfg.detuning = detuning_in_gamma * gamma;
  cfg.ell = ell;
  cfg.p = p;
  cfg.w0 = w0;
  cfg.lambda = lambda;
  cfg.lens = lens;
  return cfg;
}

double RabiConfig::wavenumber() const { return 2.0 * kPi / lambda; }
double RabiConfig::knd() const { return wavenumber() * lens.n * lens.d; }
double RabiConfig::chirp() const { return wavenumber() / (2.0 * lens.f); }

void RabiConfig::validate() const {
  if (!(gamma > 0.0)) throw_config("rabi: gamma must be positive");
  if (detuning == 0.0) throw_config("rabi: detuning must be nonzero");
  if (!(w0 > 0.0) || !(lambda > 0.0)) throw_config("rabi: w0 and lambda must be positive");
  if (p < 0) throw_config("rabi: p must be >= 0");
  lens.validate();
  const double sat = std::max(std::abs(omega_g0), std::abs(omega_gl0)) / std::abs(detuning);
  if (sat > 0.5) {
    std::ostringstream os;
    os << "rabi: weak-saturation condition |Omega|/|Delta| << 1 is marginal (ratio " << sat << ")";
    warn(os.str());
  }
}

double rabi_gaussian(const RabiConfig& cfg, double r) {
  return cfg.omega_g0 * std::exp(-(r * r) / (cfg.w0 * cfg.w0));
}

double rabi_lg(const RabiConfig& cfg, double r) {
  const int la = std::abs(cfg.ell);
  const double x = (r * r) / (cfg.w0 * cfg.w0);
  const double norm = std::exp(0.5 * (std::lgamma(cfg.p + 1.0) - std::lgamma(cfg.p + la + 1.0)));
  const double radial = la == 0 ? 1.0 : std::pow(r * std::sqrt(2.0) / cfg.w0, la);
  return cfg.omega_gl0 * norm * radial * std::exp(-x) * assoc_laguerre(cfg.p, la, 2.0 * x);
}

double rabi_sq_total(const RabiConfig& cfg, double r, double phi) {
  const double og = rabi_gaussian(cfg, r);
  const double olg = rabi_lg(cfg, r);
  const double arg = cfg.ell * phi + reduce_angle(cfg.knd()) - cfg.chirp() * r * r;
  return og * og + olg * olg + 2.0 * og * olg * std::cos(arg);
}

double dipole_potential(const RabiConfig& cfg, double r, double phi) {
  if (cfg.detuning == 0.0) throw_config("dipole_potential: detuning must be nonzero");
  return -2.0 * phys::hbar * rabi_sq_total(cfg, r, phi) / cfg.detuning;
}

namespace {

// max over the plane of |Omega|^2: at each r the cosine can align with the
// cross-term sign, so the max over phi is (|Og| + |Olg|)^2; scan r finely.
double max_rabi_sq(const RabiConfig& cfg, double r_max, int n = 200001) {
  double best = 0.0;
  for (int i = 0; i < n; ++i) {
    const double r = r_max * i / (n - 1.0);
    const double v = std::abs(rabi_gaussian(cfg, r)) + std::abs(rabi_lg(cfg, r));
    best = std::max(best, v * v);
  }
  return best;
}

}  // namespace

RamanNathReport raman_nath_report(const RabiConfig& cfg, const TwoLevelAtom& atom,
                                  const WavePacket& packet) {
  cfg.validate();
  atom.validate();
  packet.validate();

  RamanNathReport rep;
  rep.sigma_fwhm = packet.sigma;
  rep.sigma_x = packet.sigma_x();

  rep.spiral_arm_radius = std::sqrt(std::abs(cfg.lens.f) * cfg.lambda);

  // cumulative 95% radius of the cross-term magnitude over the plane
  const double r_max = 8.0 * cfg.w0;
  const int n = 200001;
  const double dr = r_max / (n - 1.0);
  std::vector<double> cum(static_cast<std::size_t>(n), 0.0);
  double total = 0.0;
  for (int i = 1; i < n; ++i) {
    const double r0 = dr * (i - 1), r1 = dr * i;
    auto cross = [&](double r) {
      return std::abs(2.0 * rabi_gaussian(cfg, r) * rabi_lg(cfg, r)) * 2.0 * kPi * r;
    };
    total += 0.5 * (cross(r0) + cross(r1)) * dr;
    cum[static_cast<std::size_t>(i)] = total;
  }
  rep.cross_term_r95 = r_max;
  for (int i = 0; i < n; ++i) {
    if (cum[static_cast<std::size_t>(i)] >= 0.95 * total) {
      rep.cross_term_r95 = dr * i;
      break;
    }
  }

  const double max_sq = max_rabi_sq(cfg, r_max);
  rep.max_abs_potential = 2.0 * phys::hbar * max_sq / std::abs(cfg.detuning);
  // U = -2 hbar |Omega|^2 / Delta is single signed; the far field tends to 0,
  // so the well depth equals the extreme value magnitude.
  rep.potential_depth = rep.max_abs_potential;

  const double dp = phys::hbar / (2.0 * rep.sigma_x);
  rep.e_kin = dp * dp / (2.0 * atom.mass);

  rep.width_ok = rep.sigma_fwhm > rep.spiral_arm_radius;
  rep.energy_ok = rep.e_kin < rep.max_abs_potential;
  return rep;
}

std::string RamanNathReport::to_text() const {
  std::ostringstream os;
  os.setf(std::ios::scientific);
  os.precision(6);
  os << "Raman-Nath validity report\n"
     << "criterion (i): packet width vs mask structure\n"
     << "  packet FWHM sigma            = " << sigma_fwhm << " m\n"
     << "  packet sigma_x (|psi|^2)     = " << sigma_x << " m\n"
     << "  spiral arm radius sqrt(f L)  = " << spiral_arm_radius << " m\n"
     << "  cross-term 95% radius        = " << cross_term_r95 << " m\n"
     << "  " << (width_ok ? "PASS" : "FAIL")
     << ": packet FWHM " << (width_ok ? "exceeds" : "does not exceed")
     << " the spiral arm radius\n"
     << "criterion (ii): transverse kinetic energy vs interaction energy\n"
     << "  E_kin per axis               = " << e_kin << " J\n"
     << "  max |U|                      = " << max_abs_potential << " J\n"
     << "  potential depth (max - min)  = " << potential_depth << " J\n"
     << "  " << (energy_ok ? "PASS" : "FAIL")
     << ": E_kin " << (energy_ok ? "is below" : "is not below") << " max |U|\n";
  return os.str();
}

}  // namespace ferris
