#pragma once

#include <complex>

#include "ferris/grid.hpp"

namespace ferris {

// Laguerre-Gaussian beam. Exactly one of power / amplitude is set (the other
// stays negative); resolved_amplitude() converts power to the on-axis field
// scale E0 such that the beam carries `power` watts through the z = 0 plane.
struct LGBeamParams {
  int ell = 0;        // winding index
  int p = 0;          // radial index
  double w0 = 0.0;    // waist, m
  double lambda = 0.0;  // wavelength, m
  double power = -1.0;      // W
  double amplitude = -1.0;  // V/m

  double wavenumber() const;     // 2 pi / lambda
  double rayleigh() const;       // pi w0^2 / lambda
  double resolved_amplitude() const;
  void validate() const;
};

struct GaussianBeamParams {
  double w0 = 0.0;
  double lambda = 0.0;
  double power = -1.0;
  double amplitude = -1.0;

  double wavenumber() const;
  double rayleigh() const;
  double resolved_amplitude() const;
  void validate() const;
};

struct ThinLens {
  double n = 0.0;  // refractive index
  double d = 0.0;  // width, m
  double f = 0.0;  // focal length, m

  void validate() const;
};

double rayleigh_range(double w0, double lambda);
double beam_width(double w0, double lambda, double z);

// Real LG envelope:
//   (1/2) sqrt(p!/(p+|l|)!) E0 / sqrt(1+z^2/zR^2) (r sqrt2 / w)^|l| e^{-r^2/w^2} L_p^|l|(2r^2/w^2)
double lg_envelope(const LGBeamParams& params, double r, double z);

// LG transverse phase: l phi - (2p+|l|+1) atan(z/zR) + k z r^2 / (2 (z^2+zR^2)).
double lg_phase(const LGBeamParams& params, double r, double phi, double z);

struct AmpPhase {
  double amplitude;  // V/m
  double phase;      // rad
};

// Reference Gaussian beam: amplitude (E0/2)/sqrt(1+z^2/zR^2) e^{-r^2/w^2},
// phase k z r^2/(2 (z^2+zR^2)) - atan(z/zR).
AmpPhase gaussian_field(const GaussianBeamParams& params, double r, double z);

// Gaussian after the lens: gaussian_field times e^{-i k n d} e^{+i k r^2 / 2f}.
// The carrier e^{ikz} is a shared prefactor of both beams and never stored.
std::complex<double> lensed_gaussian(const GaussianBeamParams& params, const ThinLens& lens,
                                     double r, double z);

// Complex sum of the LG field and the lensed Gaussian on the grid.
// Requires equal wavelengths.
ComplexField2D mask_field(const LGBeamParams& lg, const GaussianBeamParams& g, const ThinLens& lens,
                          const GridSpec& spec, double z);

// |E|^2 of the interference pattern via the envelope/cosine expansion,
//   E_lg^2 + E_g^2 + 2 E_lg E_g cos(l phi - (2p+|l|) atan(z/zR) + k n d - k r^2/2f),
// converted to W/m^2 with I = (c eps0 / 2) |E|^2, optionally in I_sat units.
RealField2D mask_intensity(const LGBeamParams& lg, const GaussianBeamParams& g, const ThinLens& lens,
                           const GridSpec& spec, double z, bool in_saturation_units = false,
                           double I_sat = 0.0);

// Independent z = 0 closed form of the same intensity (no Gouy/width machinery).
RealField2D mask_intensity_focus(const LGBeamParams& lg, const GaussianBeamParams& g,
                                 const ThinLens& lens, const GridSpec& spec,
                                 bool in_saturation_units = false, double I_sat = 0.0);

// E0 such that the plane integral of (c eps0/2)|E(r,phi,0)|^2 equals `power`.
// The LG normalisation sqrt(p!/(p+|l|)!) makes the closed form mode independent;
// tests pin this against numerical quadrature.
double amplitude_from_power(double power, double w0);

}  // namespace ferris
