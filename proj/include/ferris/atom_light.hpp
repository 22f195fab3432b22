#pragma once

#include <string>

#include "ferris/optics.hpp"
#include "ferris/wave_packet.hpp"

namespace ferris {

struct TwoLevelAtom {
  double lambda0 = 0.0;  // transition wavelength, m
  double gamma = 0.0;    // linewidth, rad/s
  double mass = 0.0;     // kg
  double I_sat = 0.0;    // W/m^2

  void validate() const;
};

// Atom-light coupling of the two-beam mask. All frequencies in rad/s; the
// gamma_units factory accepts the paper-style inputs (Omega and Delta in
// units of Gamma).
struct RabiConfig {
  double gamma = 0.0;      // rad/s, for Gamma-unit conversions and timing warnings
  double omega_g0 = 0.0;   // rad/s
  double omega_gl0 = 0.0;  // rad/s
  double detuning = 0.0;   // rad/s
  int ell = 0;
  int p = 0;
  double w0 = 0.0;      // m
  double lambda = 0.0;  // m, optical wavelength (sets k in the spiral phase)
  ThinLens lens;

  static RabiConfig gamma_units(double gamma, double omega_g0_in_gamma, double omega_gl0_in_gamma,
                                double detuning_in_gamma, int ell, int p, double w0, double lambda,
                                ThinLens lens);

  double wavenumber() const;
  double knd() const;    // rad, kept at full precision
  double chirp() const;  // a = k / (2 f), 1/m^2
  void validate() const;  // detuning != 0; warns when |Omega0|/|Delta| > 0.5
};

// Omega_G(r) = Omega_G0 exp(-r^2/w0^2)
double rabi_gaussian(const RabiConfig& cfg, double r);

// Omega_{|l|,p}(r) = Omega_GL0 sqrt(p!/(p+|l|)!) (r sqrt2/w0)^|l| e^{-r^2/w0^2} L_p^|l|(2r^2/w0^2)
double rabi_lg(const RabiConfig& cfg, double r);

// |Omega|^2 = Omega_G^2 + Omega_LG^2 + 2 Omega_G Omega_LG cos(l phi + k n d - k r^2/2f)
double rabi_sq_total(const RabiConfig& cfg, double r, double phi);

// U = -2 hbar |Omega|^2 / Delta, sign and factor as written.
double dipole_potential(const RabiConfig& cfg, double r, double phi);

// Raman-Nath validity. Criterion (i): the packet must be wider than the mask
// structure it diffracts from. Two radii are reported: the innermost spiral
// arm radius sqrt(f lambda) (where the lens chirp completes a half turn),
// which drives the pass flag, and the radius enclosing 95% of the cross-term
// magnitude 2 Omega_G Omega_LG over the plane. Criterion (ii): transverse
// kinetic energy (hbar/(2 sigma_x))^2 / 2M against the interaction energy,
// reported both as max|U| and as the potential depth.
struct RamanNathReport {
  double sigma_fwhm = 0.0;
  double sigma_x = 0.0;
  double spiral_arm_radius = 0.0;    // sqrt(f lambda)
  double cross_term_r95 = 0.0;       // 95% cumulative radius of |2 Og Olg| dA
  double e_kin = 0.0;                // J, per axis
  double max_abs_potential = 0.0;    // J
  double potential_depth = 0.0;      // J, max - min over the plane
  bool width_ok = false;             // sigma_fwhm > spiral_arm_radius
  bool energy_ok = false;            // e_kin < max_abs_potential

  std::string to_text() const;
};

RamanNathReport raman_nath_report(const RabiConfig& cfg, const TwoLevelAtom& atom,
                                  const WavePacket& packet);

}  // namespace ferris
