#pragma once

// Pinned physical constants (CODATA 2018). Fixed literals so that table and
// golden-file outputs never drift with an external data source.

namespace narrow3b::constants {

inline constexpr double amu_in_electron_masses = 1822.888486209;

// Hartree atomic units: mu_B = e*hbar/(2 m_e) = 1/2 exactly.
inline constexpr double bohr_magneton_au = 0.5;

// 1 gauss = 1e-4 T; atomic unit of magnetic flux density = 2.35051756758e5 T.
inline constexpr double gauss_in_au_field = 1e-4 / 2.35051756758e5;

// Root of the three-body channel equation at unitarity with zero range
// correction; recomputed by zrp::efimov_root_unitarity(), pinned here for the
// closed-form rate expressions. Kept to 13 digits.
inline constexpr double s0_efimov = 1.006237825103;

// Channel exponent of the repulsive barrier for the two-component fermion
// system. The defining equation lives outside this code base; the constant is
// pinned, not solved for.
inline constexpr double p0_fermion = 2.166;

inline constexpr double pi = 3.14159265358979323846;

} // namespace narrow3b::constants
