#pragma once

#include <vector>

namespace ferris {

// Associated Laguerre polynomial L_p^alpha(x) by the three-term recurrence.
// Stable for the small p and moderate x used throughout (mode indices, 2r^2/w^2).
double assoc_laguerre(int p, int alpha, double x);

// Bessel function of the first kind, integer order, any sign of m and x.
double bessel_j(int m, double x);

// J_0(x) .. J_{m_max}(x) in one pass (downward Miller recurrence with
// normalisation, upward when x > m_max). Requires x >= 0.
std::vector<double> bessel_j_sequence(int m_max, double x);

// Exactly rounded reduction of x into [-pi, pi]. Large accumulated phases
// (k n d is of order 1e5 rad) must be reduced before they are summed with
// small terms, or the sum rounds at the 1e-11 rad level.
double reduce_angle(double x);

}  // namespace ferris
