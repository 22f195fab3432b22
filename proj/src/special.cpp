#include "ferris/special.hpp"

#include <cmath>
#include <cstdlib>

#include "ferris/errors.hpp"

namespace ferris {

double assoc_laguerre(int p, int alpha, double x) {
  if (p < 0) throw_numeric("assoc_laguerre: negative degree");
  if (p == 0) return 1.0;
  double lm1 = 1.0;
  double l = 1.0 + alpha - x;
  for (int n = 1; n < p; ++n) {
    const double lp1 = ((2.0 * n + 1.0 + alpha - x) * l - (n + alpha) * lm1) / (n + 1.0);
    lm1 = l;
    l = lp1;
  }
  return l;
}

double bessel_j(int m, double x) {
  const int n = std::abs(m);
  const double v = std::cyl_bessel_j(static_cast<double>(n), std::abs(x));
  // J_{-n}(x) = (-1)^n J_n(x) and J_n(-x) = (-1)^n J_n(x)
  bool neg = false;
  if (m < 0 && (n & 1)) neg = !neg;
  if (x < 0.0 && (n & 1)) neg = !neg;
  return neg ? -v : v;
}

std::vector<double> bessel_j_sequence(int m_max, double x) {
  if (m_max < 0) throw_numeric("bessel_j_sequence: negative order");
  if (x < 0.0) throw_numeric("bessel_j_sequence: negative argument");
  std::vector<double> out(static_cast<std::size_t>(m_max) + 1, 0.0);
  if (x == 0.0) {
    out[0] = 1.0;
    return out;
  }
  if (x > m_max) {
    // upward recurrence is stable for n < x
    double jm1 = std::cyl_bessel_j(0.0, x);
    out[0] = jm1;
    if (m_max == 0) return out;
    double j = std::cyl_bessel_j(1.0, x);
    out[1] = j;
    for (int n = 1; n < m_max; ++n) {
      const double jp1 = (2.0 * n / x) * j - jm1;
      jm1 = j;
      j = jp1;
      out[static_cast<std::size_t>(n) + 1] = j;
    }
    return out;
  }
  // Miller's downward recurrence, normalised by J_0 + 2 sum J_{2k} = 1.
  const int start = m_max + 16 + static_cast<int>(x);
  double jp1 = 0.0;
  double j = 1e-30;
  double sum = 0.0;  // accumulates J_0 + 2*sum_{even n >= 2} J_n in the unnormalised scale
  for (int n = start; n >= 0; --n) {
    const double jm1 = (2.0 * (n + 1.0) / x) * j - jp1;
    jp1 = j;
    j = jm1;
    if (n <= m_max) out[static_cast<std::size_t>(n)] = j;
    if (n > 0 && (n % 2) == 0) sum += 2.0 * j;  // j now holds the value at order n
    if (std::abs(j) > 1e250) {
      j *= 1e-250;
      jp1 *= 1e-250;
      sum *= 1e-250;
      for (auto& v : out) v *= 1e-250;
    }
  }
  sum += j;  // order 0
  const double inv = 1.0 / sum;
  for (auto& v : out) v *= inv;
  return out;
}

double reduce_angle(double x) {
  constexpr double two_pi = 6.283185307179586476925286766559;
  return std::remainder(x, two_pi);
}

}  // namespace ferris
