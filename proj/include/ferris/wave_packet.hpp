#pragma once

#include <cmath>

namespace ferris {

// Initial 2-D atomic packet amplitude N exp(-4 ln2 r^2 / sigma^2): sigma is the
// FWHM of the amplitude. The axial factor exp(-i K_dB z) is carried as
// metadata only (k_dB feeds the paraxial propagator).
struct WavePacket {
  double sigma = 0.0;  // m
  double k_dB = 0.0;   // 1/m

  // N with unit L2 norm over the plane: integral |psi|^2 dA = N^2 pi sigma^2 / (8 ln2)
  double norm_const() const { return std::sqrt(8.0 * std::log(2.0) / M_PI) / sigma; }
  // per-axis position standard deviation of |psi|^2
  double sigma_x() const { return sigma / (4.0 * std::sqrt(std::log(2.0))); }
  void validate() const;
};

}  // namespace ferris
