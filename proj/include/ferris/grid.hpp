#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

namespace ferris {

// Uniform Cartesian grid centred on the beam axis. Sample (i, j) sits at
// x = (i - nx/2) dx, y = (j - ny/2) dy, so the axis point (0, 0) is always a
// sample (LG fields with ell != 0 vanish there and tests pin that value).
struct GridSpec {
  int nx = 0;
  int ny = 0;
  double half_extent_x = 0.0;  // m, grid spans [-half_extent, +half_extent)
  double half_extent_y = 0.0;

  double dx() const { return 2.0 * half_extent_x / nx; }
  double dy() const { return 2.0 * half_extent_y / ny; }
  double x(int i) const { return (i - nx / 2) * dx(); }
  double y(int j) const { return (j - ny / 2) * dy(); }
  std::size_t size() const { return static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny); }

  void validate() const;  // power-of-two counts >= 16, positive extents

  friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

// Complex scalar amplitude on a grid. Row-major, y-outer: values[j*nx + i].
// `units` is carried as metadata (V/m for optical fields, 1/m for 2-D
// wavefunctions, empty when dimensionless).
struct ComplexField2D {
  GridSpec spec;
  std::vector<std::complex<double>> values;
  std::string quantity;
  std::string units;

  std::complex<double>& at(int i, int j) { return values[static_cast<std::size_t>(j) * spec.nx + i]; }
  const std::complex<double>& at(int i, int j) const {
    return values[static_cast<std::size_t>(j) * spec.nx + i];
  }
};

struct RealField2D {
  GridSpec spec;
  std::vector<double> values;
  std::string quantity;
  std::string units;

  double& at(int i, int j) { return values[static_cast<std::size_t>(j) * spec.nx + i]; }
  const double& at(int i, int j) const { return values[static_cast<std::size_t>(j) * spec.nx + i]; }
};

ComplexField2D make_complex_field(const GridSpec& spec, std::string quantity = "", std::string units = "");
RealField2D make_real_field(const GridSpec& spec, std::string quantity = "", std::string units = "");

// Evaluates f(r, phi) at every sample, r = hypot(x, y), phi = atan2 in [0, 2pi).
// Rejects non-finite values, reporting the offending coordinate. May evaluate
// rows in parallel; the result is identical to sequential evaluation.
using PolarFn = std::function<std::complex<double>(double r, double phi)>;
ComplexField2D sample_polar_function(const GridSpec& spec, const PolarFn& f,
                                     std::string quantity = "", std::string units = "");

// sqrt(sum |F|^2 dx dy), summed over a fixed pairwise tree so the result is
// bit-identical across runs and thread counts.
double field_norm(const ComplexField2D& f);
double field_norm(const RealField2D& f);

// Deterministic pairwise reduction helpers (fixed tree, no threading).
double pairwise_sum(const double* v, std::size_t n);
double pairwise_sum_indexed(std::size_t n, const std::function<double(std::size_t)>& term);

// Bilinear interpolation at a physical point strictly inside the grid.
std::complex<double> bilinear(const ComplexField2D& f, double x, double y);
double bilinear(const RealField2D& f, double x, double y);

// Azimuthal harmonics of F on the ring of radius r:
//   c_q = (1/n_phi) sum_k F(r, phi_k) exp(-i q phi_k),  phi_k = 2 pi k / n_phi,
// with F evaluated by bilinear interpolation. q runs over [-n_phi/2, n_phi/2).
struct AzimuthalSpectrum {
  int n_phi = 0;
  std::vector<std::complex<double>> coeffs;  // index q + n_phi/2

  std::complex<double> coeff(int q) const { return coeffs[static_cast<std::size_t>(q + n_phi / 2)]; }
  int q_min() const { return -n_phi / 2; }
  int q_max() const { return n_phi / 2 - 1; }
};
AzimuthalSpectrum azimuthal_spectrum(const ComplexField2D& f, double r, int n_phi);

// Number of strict local maxima of the interpolated ring profile density(r, .)
// over one revolution. Plateau runs count once; ties resolved with tolerance
// 1e-9 times the ring maximum. Throws on an all-zero ring.
int count_azimuthal_peaks(const RealField2D& density, double r);

// Worker threads used by grid sampling (results do not depend on the count).
void set_thread_count(int n);
int thread_count();

namespace detail {
void parallel_for_rows(int ny, const std::function<void(int)>& row_fn);
}

}  // namespace ferris
