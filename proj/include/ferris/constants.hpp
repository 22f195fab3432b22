#pragma once

namespace ferris::phys {

inline constexpr double c0 = 299792458.0;            // speed of light, m/s
inline constexpr double eps0 = 8.8541878128e-12;     // vacuum permittivity, F/m
inline constexpr double hbar = 1.054571817e-34;      // reduced Planck constant, J s

}  // namespace ferris::phys
