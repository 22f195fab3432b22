#include "ferris/propagation.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <sstream>

#include "ferris/errors.hpp"

namespace ferris {

namespace {

constexpr double kPi = 3.1415926535897932384626433832795;

// Edge fraction above which propagate() refuses the field outright; below
// that but above the warn level the step proceeds with a diagnostic.
constexpr double kEdgeErrorFraction = 1e-3;
constexpr double kEdgeWarnFraction = 1e-8;

struct PlanPair {
  fftw_plan fwd = nullptr;
  fftw_plan bwd = nullptr;
  fftw_complex* buf = nullptr;
  std::size_t n = 0;
};

std::mutex g_plan_mutex;
std::map<std::pair<int, int>, PlanPair>& plan_cache() {
  static std::map<std::pair<int, int>, PlanPair> cache;
  return cache;
}

PlanPair& plans_for(int nx, int ny) {
  std::lock_guard<std::mutex> lock(g_plan_mutex);
  auto& cache = plan_cache();
  auto it = cache.find({nx, ny});
  if (it != cache.end()) return it->second;
  PlanPair p;
  p.n = static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny);
  p.buf = fftw_alloc_complex(p.n);
  // row-major with y as the slow index: FFTW dims are (ny, nx)
  p.fwd = fftw_plan_dft_2d(ny, nx, p.buf, p.buf, FFTW_FORWARD, FFTW_ESTIMATE);
  p.bwd = fftw_plan_dft_2d(ny, nx, p.buf, p.buf, FFTW_BACKWARD, FFTW_ESTIMATE);
  return cache.emplace(std::make_pair(nx, ny), p).first->second;
}

int signed_freq_index(int i, int n) { return i <= n / 2 ? i : i - n; }

}  // namespace

void PropagationPlan::validate() const {
  if (!(K > 0.0)) throw_config("propagation: K must be positive");
  if (!(z_end > z_start)) throw_config("propagation: z_end must exceed z_start");
  if (n_planes < 2) throw_config("propagation: n_planes must be >= 2");
  if (apodization < 0.0 || apodization > 0.5)
    throw_config("propagation: apodization must be in [0, 0.5]");
}

double nyquist_edge_fraction(const ComplexField2D& psi) {
  const GridSpec& g = psi.spec;
  PlanPair& plans = plans_for(g.nx, g.ny);
  for (std::size_t i = 0; i < plans.n; ++i) {
    plans.buf[i][0] = psi.values[i].real();
    plans.buf[i][1] = psi.values[i].imag();
  }
  fftw_execute(plans.fwd);
  double total = 0.0;
  double edge = 0.0;
  for (int j = 0; j < g.ny; ++j) {
    const double fy = std::abs(signed_freq_index(j, g.ny)) / (0.5 * g.ny);
    for (int i = 0; i < g.nx; ++i) {
      const double fx = std::abs(signed_freq_index(i, g.nx)) / (0.5 * g.nx);
      const std::size_t idx = static_cast<std::size_t>(j) * g.nx + i;
      const double p = plans.buf[idx][0] * plans.buf[idx][0] + plans.buf[idx][1] * plans.buf[idx][1];
      total += p;
      if (std::max(fx, fy) >= 0.9) edge += p;
    }
  }
  return total > 0.0 ? edge / total : 0.0;
}

ComplexField2D propagate(const ComplexField2D& psi, double K, double dz) {
  if (!(K > 0.0)) throw_config("propagate: K must be positive");
  if (!std::isfinite(dz)) throw_config("propagate: dz must be finite");
  const GridSpec& g = psi.spec;

  const double edge = nyquist_edge_fraction(psi);
  if (edge > kEdgeErrorFraction) {
    std::ostringstream os;
    os << "propagate: " << edge
       << " of the spectral power sits in the band above 90% of the grid Nyquist frequency";
    throw_numeric(os.str());
  }
  if (edge > kEdgeWarnFraction) {
    std::ostringstream os;
    os << "propagate: marginal sampling, edge-band spectral fraction " << edge;
    warn(os.str());
  }
  if (dz == 0.0) return psi;

  PlanPair& plans = plans_for(g.nx, g.ny);
  for (std::size_t i = 0; i < plans.n; ++i) {
    plans.buf[i][0] = psi.values[i].real();
    plans.buf[i][1] = psi.values[i].imag();
  }
  fftw_execute(plans.fwd);

  const double dkx = 2.0 * kPi / (2.0 * g.half_extent_x);
  const double dky = 2.0 * kPi / (2.0 * g.half_extent_y);
  const double coef = -dz / (2.0 * K);
  for (int j = 0; j < g.ny; ++j) {
    const double ky = dky * signed_freq_index(j, g.ny);
    for (int i = 0; i < g.nx; ++i) {
      const double kx = dkx * signed_freq_index(i, g.nx);
      const double phase = coef * (kx * kx + ky * ky);
      const double c = std::cos(phase), s = std::sin(phase);
      const std::size_t idx = static_cast<std::size_t>(j) * g.nx + i;
      const double re = plans.buf[idx][0], im = plans.buf[idx][1];
      plans.buf[idx][0] = re * c - im * s;
      plans.buf[idx][1] = re * s + im * c;
    }
  }

  fftw_execute(plans.bwd);
  ComplexField2D out = psi;
  const double scale = 1.0 / static_cast<double>(plans.n);
  for (std::size_t i = 0; i < plans.n; ++i)
    out.values[i] = {plans.buf[i][0] * scale, plans.buf[i][1] * scale};
  return out;
}

ComplexField2D apodize(const ComplexField2D& psi, double margin) {
  if (margin <= 0.0) return psi;
  const GridSpec& g = psi.spec;
  auto window = [margin](int idx, int n) {
    const double t = (idx + 0.5) / n;  // (0, 1)
    const double s = std::min(t, 1.0 - t);
    if (s >= margin) return 1.0;
    return 0.5 * (1.0 - std::cos(kPi * s / margin));
  };
  ComplexField2D out = psi;
  for (int j = 0; j < g.ny; ++j) {
    const double wy = window(j, g.ny);
    for (int i = 0; i < g.nx; ++i) out.at(i, j) *= wy * window(i, g.nx);
  }
  return out;
}

double rms_radius(const ComplexField2D& psi) {
  const GridSpec& g = psi.spec;
  const double den = pairwise_sum_indexed(psi.values.size(), [&](std::size_t idx) {
    return std::norm(psi.values[idx]);
  });
  if (!(den > 0.0)) throw_numeric("rms_radius: zero field");
  const double num = pairwise_sum_indexed(psi.values.size(), [&](std::size_t idx) {
    const int j = static_cast<int>(idx) / g.nx;
    const int i = static_cast<int>(idx) % g.nx;
    const double x = g.x(i), y = g.y(j);
    return (x * x + y * y) * std::norm(psi.values[idx]);
  });
  return std::sqrt(num / den);
}

FocusScan find_focus(const ComplexField2D& psi, double K, const PropagationPlan& plan) {
  plan.validate();
  const ComplexField2D src = apodize(psi, plan.apodization);

  FocusScan scan;
  scan.samples.reserve(static_cast<std::size_t>(plan.n_planes));
  auto rms_at = [&](double z) { return rms_radius(propagate(src, K, z)); };

  int best = 0;
  for (int i = 0; i < plan.n_planes; ++i) {
    const double z = plan.z_start + (plan.z_end - plan.z_start) * i / (plan.n_planes - 1.0);
    const double r = rms_at(z);
    scan.samples.emplace_back(z, r);
    if (r < scan.samples[static_cast<std::size_t>(best)].second) best = i;
  }

  if (best == 0 || best == plan.n_planes - 1) {
    scan.found = false;
    scan.note = "monotone in range";
    return scan;
  }

  // golden-section refinement on the bracketing pair of intervals
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double lo = scan.samples[static_cast<std::size_t>(best) - 1].first;
  double hi = scan.samples[static_cast<std::size_t>(best) + 1].first;
  const double tol = 1e-4 * (plan.z_end - plan.z_start);
  double x1 = hi - gr * (hi - lo);
  double x2 = lo + gr * (hi - lo);
  double f1 = rms_at(x1);
  double f2 = rms_at(x2);
  while (hi - lo > tol) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - gr * (hi - lo);
      f1 = rms_at(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + gr * (hi - lo);
      f2 = rms_at(x2);
    }
  }
  scan.found = true;
  scan.z_focus = 0.5 * (lo + hi);
  scan.rms_at_focus = rms_at(scan.z_focus);
  return scan;
}

}  // namespace ferris
