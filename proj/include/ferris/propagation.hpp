#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ferris/grid.hpp"

namespace ferris {

// Paraxial free-space scan setup. K is the axial carrier wavenumber (the
// atomic K_dB); apodization is the fraction of each grid edge smoothed by a
// raised cosine before scanning (never applied to density figures).
struct PropagationPlan {
  double K = 0.0;       // 1/m
  double z_start = 0.0;  // m
  double z_end = 0.0;
  int n_planes = 33;
  double apodization = 0.1;

  void validate() const;
};

// Fraction of spectral power in the outer band (|k| above 90% of Nyquist on
// either axis). Drives the sampling check in propagate().
double nyquist_edge_fraction(const ComplexField2D& psi);

// Angular-spectrum step: multiply the spatial-frequency spectrum by
// exp(-i (kx^2 + ky^2) dz / (2K)) and transform back. Unitary by construction.
// Errors when the field carries significant power at the Nyquist band edge;
// warns on marginal content.
ComplexField2D propagate(const ComplexField2D& psi, double K, double dz);

// Raised-cosine edge window over the outer `margin` fraction of each axis.
ComplexField2D apodize(const ComplexField2D& psi, double margin);

// Intensity-weighted RMS radius sqrt(sum r^2 |psi|^2 / sum |psi|^2).
double rms_radius(const ComplexField2D& psi);

struct FocusScan {
  std::vector<std::pair<double, double>> samples;  // (z, rms radius)
  bool found = false;
  double z_focus = 0.0;
  double rms_at_focus = 0.0;
  std::string note;  // e.g. "monotone in range" when no interior minimum exists
};

// Scans n_planes between z_start and z_end, then refines the interior minimum
// by golden section to a resolution of 1e-4 (z_end - z_start).
FocusScan find_focus(const ComplexField2D& psi, double K, const PropagationPlan& plan);

}  // namespace ferris
