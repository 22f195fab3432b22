#pragma once

#include <vector>

#include "ferris/atom_light.hpp"
#include "ferris/grid.hpp"
#include "ferris/wave_packet.hpp"

namespace ferris {

// Radial profiles of the imprint phase, Btau/Ctau/Etau in rad at interaction
// time tau:
//   B = 2 Omega_LG^2 / Delta,  C = 2 Omega_G^2 / Delta,  E = 4 Omega_G Omega_LG / Delta
struct ImprintProfiles {
  double Btau = 0.0;
  double Ctau = 0.0;
  double Etau = 0.0;
};

// Bundles the mask coupling and interaction time; exposes the decomposition
// coefficients (quadratic chirp a = k/2f, lens phase knd, winding ell) and the
// radial phase profiles.
struct ImprintParams {
  RabiConfig cfg;
  double tau = 0.0;  // s

  static ImprintParams from(const RabiConfig& cfg, double tau_seconds);

  double a() const { return cfg.chirp(); }
  double knd() const { return cfg.knd(); }
  int ell() const { return cfg.ell; }

  double B(double r) const;  // rad/s
  double C(double r) const;
  double E(double r) const;

  // max_r |E(r) tau| over [0, r_max], fine deterministic radial scan
  double max_abs_Etau(double r_max) const;

  void validate() const;
};

ImprintProfiles imprint_profiles(const RabiConfig& cfg, double tau, double r);

// One Jacobi-Anger diffraction order. The field carries everything; the
// descriptors record what the order is made of: weight i^{-m} J_m(E tau),
// azimuthal harmonic m*ell, quadratic phase coefficient -m a, lens phase m knd.
struct DiffractionOrder {
  int m = 0;
  int helicity = 0;               // m * ell
  double quad_phase_coeff = 0.0;  // current coefficient of r^2 in the phase, starts at -m a
  double extra_phase = 0.0;       // m k n d, rad
  double chirp = 0.0;             // the mask chirp a = k/2f, 1/m^2
  ComplexField2D field;
};

// Packet sampled on the grid with unit L2 norm. Warns when the half extent is
// tighter than 2 sigma.
ComplexField2D initial_packet(const WavePacket& packet, const GridSpec& spec);

// psi -> psi exp(-2 i tau |Omega(r,phi)|^2 / Delta). Unit-modulus factor:
// |psi| is preserved pointwise. Warns when tau exceeds 1/Gamma.
ComplexField2D phase_imprint(const ComplexField2D& psi, const RabiConfig& cfg, double tau);

// Smallest M with the Bessel tail bound (x/2)^M / M! below tol at
// x = max|E tau| over the grid, so truncated orders carry < tol amplitude.
int auto_m_max(const ImprintParams& params, double r_max, double tol = 1e-12);

// Splits the imprinted wave into orders m = -M..M:
//   order_m = psi0 e^{-i(B+C)tau} i^{-m} J_m(E tau) e^{i m knd} e^{i m ell phi} e^{-i m a r^2}.
// m_max < 0 selects auto sizing. The orders sum back to phase_imprint(psi0)
// within the truncation tolerance.
std::vector<DiffractionOrder> decompose_orders(const ComplexField2D& psi0,
                                               const ImprintParams& params, int m_max = -1);

// P_m = integral |psi0|^2 J_m^2(E tau) dA; the populations sum to 1.
double order_weight(const ComplexField2D& psi0, const ImprintParams& params, int m);

// Multiplies only the +m_target order by exp(+2 i m_target a r^2), leaving the
// +-m_target pair with the common factor exp(+i m_target a r^2).
void second_imprint_ideal(std::vector<DiffractionOrder>& orders, int m_target);

// Second imprint by a field with OAM s hbar per photon and uniform Rabi
// frequency omega_prime0: order m acquires phase +Omega'^2 dt / Delta_m(r)
// with the azimuthal-Doppler detuning Delta_m(r) = delta0 - s m hbar / (M r^2),
// r clamped below at r_core. Errors out when Delta_m crosses zero on the grid.
void second_imprint_physical(std::vector<DiffractionOrder>& orders, int s, double delta0,
                             double omega_prime0, double dt, const TwoLevelAtom& atom,
                             double r_core);

// Closed-form Ferris wheel density for the +-m superposition,
//   4 |psi0(r)|^2 J_m^2(E tau) cos^2(m ell phi + m k n d),
// normalised to unit integral.
RealField2D ferris_density(const ImprintParams& params, const WavePacket& packet, int m,
                           const GridSpec& spec);

}  // namespace ferris
