#include "ferris/grid.hpp"

#include <atomic>
#include <cmath>
#include <sstream>
#include <thread>

#include "ferris/errors.hpp"

namespace ferris {

namespace {

std::atomic<int> g_threads{1};

bool is_pow2(int n) { return n > 0 && (n & (n - 1)) == 0; }

constexpr double kTwoPi = 6.283185307179586476925286766559;

}  // namespace

void set_thread_count(int n) { g_threads.store(n < 1 ? 1 : n); }
int thread_count() { return g_threads.load(); }

void detail::parallel_for_rows(int ny, const std::function<void(int)>& row_fn) {
  const int nthreads = thread_count();
  if (nthreads <= 1 || ny < 4 * nthreads) {
    for (int j = 0; j < ny; ++j) row_fn(j);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(nthreads));
  const int chunk = (ny + nthreads - 1) / nthreads;
  for (int t = 0; t < nthreads; ++t) {
    const int lo = t * chunk;
    const int hi = std::min(ny, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([lo, hi, &row_fn] {
      for (int j = lo; j < hi; ++j) row_fn(j);
    });
  }
  for (auto& th : pool) th.join();
}

void GridSpec::validate() const {
  if (nx < 16 || ny < 16 || !is_pow2(nx) || !is_pow2(ny))
    throw_config("grid: nx and ny must be powers of two >= 16 (got " + std::to_string(nx) + "x" +
                 std::to_string(ny) + ")");
  if (!(half_extent_x > 0.0) || !(half_extent_y > 0.0))
    throw_config("grid: half extents must be positive");
}

ComplexField2D make_complex_field(const GridSpec& spec, std::string quantity, std::string units) {
  spec.validate();
  ComplexField2D f;
  f.spec = spec;
  f.values.assign(spec.size(), {0.0, 0.0});
  f.quantity = std::move(quantity);
  f.units = std::move(units);
  return f;
}

RealField2D make_real_field(const GridSpec& spec, std::string quantity, std::string units) {
  spec.validate();
  RealField2D f;
  f.spec = spec;
  f.values.assign(spec.size(), 0.0);
  f.quantity = std::move(quantity);
  f.units = std::move(units);
  return f;
}

ComplexField2D sample_polar_function(const GridSpec& spec, const PolarFn& f, std::string quantity,
                                     std::string units) {
  ComplexField2D out = make_complex_field(spec, std::move(quantity), std::move(units));
  detail::parallel_for_rows(spec.ny, [&](int j) {
    const double y = spec.y(j);
    for (int i = 0; i < spec.nx; ++i) {
      const double x = spec.x(i);
      const double r = std::hypot(x, y);
      double phi = std::atan2(y, x);
      if (phi < 0.0) phi += kTwoPi;
      out.at(i, j) = f(r, phi);
    }
  });
  for (int j = 0; j < spec.ny; ++j)
    for (int i = 0; i < spec.nx; ++i) {
      const std::complex<double> v = out.at(i, j);
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
        std::ostringstream os;
        os << "sample_polar_function: non-finite value at x=" << spec.x(i) << " y=" << spec.y(j);
        throw_numeric(os.str());
      }
    }
  return out;
}

double pairwise_sum(const double* v, std::size_t n) {
  if (n <= 16) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += v[i];
    return s;
  }
  const std::size_t h = n / 2;
  return pairwise_sum(v, h) + pairwise_sum(v + h, n - h);
}

namespace {
double pairwise_indexed_impl(std::size_t lo, std::size_t hi,
                             const std::function<double(std::size_t)>& term) {
  if (hi - lo <= 16) {
    double s = 0.0;
    for (std::size_t i = lo; i < hi; ++i) s += term(i);
    return s;
  }
  const std::size_t mid = lo + (hi - lo) / 2;
  return pairwise_indexed_impl(lo, mid, term) + pairwise_indexed_impl(mid, hi, term);
}
}  // namespace

double pairwise_sum_indexed(std::size_t n, const std::function<double(std::size_t)>& term) {
  return pairwise_indexed_impl(0, n, term);
}

double field_norm(const ComplexField2D& f) {
  const double cell = f.spec.dx() * f.spec.dy();
  const double s = pairwise_sum_indexed(f.values.size(), [&](std::size_t i) {
    return std::norm(f.values[i]);
  });
  return std::sqrt(s * cell);
}

double field_norm(const RealField2D& f) {
  const double cell = f.spec.dx() * f.spec.dy();
  const double s = pairwise_sum_indexed(f.values.size(), [&](std::size_t i) {
    const double v = f.values[i];
    return v * v;
  });
  return std::sqrt(s * cell);
}

namespace {

template <typename Field, typename Value>
Value bilinear_impl(const Field& f, double x, double y) {
  const GridSpec& g = f.spec;
  const double u = x / g.dx() + g.nx / 2;
  const double v = y / g.dy() + g.ny / 2;
  const int i0 = static_cast<int>(std::floor(u));
  const int j0 = static_cast<int>(std::floor(v));
  if (i0 < 0 || j0 < 0 || i0 + 1 >= g.nx || j0 + 1 >= g.ny)
    throw_numeric("bilinear: point outside interpolation region");
  const double tx = u - i0;
  const double ty = v - j0;
  const Value f00 = f.at(i0, j0), f10 = f.at(i0 + 1, j0);
  const Value f01 = f.at(i0, j0 + 1), f11 = f.at(i0 + 1, j0 + 1);
  return f00 * ((1.0 - tx) * (1.0 - ty)) + f10 * (tx * (1.0 - ty)) + f01 * ((1.0 - tx) * ty) +
         f11 * (tx * ty);
}

void check_ring_radius(const GridSpec& g, double r) {
  const double rmax = std::min(g.half_extent_x, g.half_extent_y) / std::sqrt(2.0);
  if (!(r > 0.0) || !(r < rmax))
    throw_numeric("ring radius " + std::to_string(r) + " outside safe interpolation disc (0, " +
                  std::to_string(rmax) + ")");
}

}  // namespace

std::complex<double> bilinear(const ComplexField2D& f, double x, double y) {
  return bilinear_impl<ComplexField2D, std::complex<double>>(f, x, y);
}

double bilinear(const RealField2D& f, double x, double y) {
  return bilinear_impl<RealField2D, double>(f, x, y);
}

AzimuthalSpectrum azimuthal_spectrum(const ComplexField2D& f, double r, int n_phi) {
  if (n_phi < 64 || !is_pow2(n_phi)) throw_config("azimuthal_spectrum: n_phi must be a power of two >= 64");
  check_ring_radius(f.spec, r);

  std::vector<std::complex<double>> ring(static_cast<std::size_t>(n_phi));
  for (int k = 0; k < n_phi; ++k) {
    const double phi = kTwoPi * k / n_phi;
    ring[static_cast<std::size_t>(k)] = bilinear(f, r * std::cos(phi), r * std::sin(phi));
  }

  AzimuthalSpectrum spec;
  spec.n_phi = n_phi;
  spec.coeffs.assign(static_cast<std::size_t>(n_phi), {0.0, 0.0});
  for (int q = -n_phi / 2; q < n_phi / 2; ++q) {
    std::complex<double> acc{0.0, 0.0};
    for (int k = 0; k < n_phi; ++k) {
      const double ang = -kTwoPi * q * k / n_phi;
      acc += ring[static_cast<std::size_t>(k)] * std::complex<double>(std::cos(ang), std::sin(ang));
    }
    spec.coeffs[static_cast<std::size_t>(q + n_phi / 2)] = acc / static_cast<double>(n_phi);
  }
  return spec;
}

int count_azimuthal_peaks(const RealField2D& density, double r) {
  check_ring_radius(density.spec, r);
  constexpr int n = 4096;
  std::vector<double> ring(n);
  double ring_max = 0.0;
  for (int k = 0; k < n; ++k) {
    const double phi = kTwoPi * k / n;
    ring[static_cast<std::size_t>(k)] = bilinear(density, r * std::cos(phi), r * std::sin(phi));
    ring_max = std::max(ring_max, ring[static_cast<std::size_t>(k)]);
  }
  if (!(ring_max > 0.0)) throw_numeric("count_azimuthal_peaks: degenerate ring");

  const double tol = 1e-9 * ring_max;
  // cyclic sequence of slope signs, plateaus (|diff| <= tol) dropped
  std::vector<int> signs;
  signs.reserve(n);
  for (int k = 0; k < n; ++k) {
    const double d = ring[static_cast<std::size_t>((k + 1) % n)] - ring[static_cast<std::size_t>(k)];
    if (d > tol)
      signs.push_back(+1);
    else if (d < -tol)
      signs.push_back(-1);
  }
  if (signs.empty()) return 0;  // constant ring: no strict maxima
  int peaks = 0;
  for (std::size_t k = 0; k < signs.size(); ++k) {
    if (signs[k] == 1 && signs[(k + 1) % signs.size()] == -1) ++peaks;
  }
  return peaks;
}

}  // namespace ferris
