#pragma once
#include <cmath>
#include <stdexcept>

#include "constants.hpp"

// Unit conversions into Hartree atomic units. Everything downstream works in
// a.u. only; conversions happen at the catalog and CLI boundary.

namespace narrow3b {

struct PhysicalConstants {
	double amu_in_electron_masses = constants::amu_in_electron_masses;
	double bohr_magneton_au = constants::bohr_magneton_au;
	double gauss_in_au_field = constants::gauss_in_au_field;
};

inline double amu_to_au(double mass_amu, const PhysicalConstants& pc = {}) {
	if (!std::isfinite(mass_amu) || mass_amu <= 0)
		throw std::invalid_argument("amu_to_au: mass must be finite and positive");
	return mass_amu * pc.amu_in_electron_masses;
}

inline double au_to_amu(double mass_au, const PhysicalConstants& pc = {}) {
	if (!std::isfinite(mass_au) || mass_au <= 0)
		throw std::invalid_argument("au_to_amu: mass must be finite and positive");
	return mass_au / pc.amu_in_electron_masses;
}

// Product (delta_mu * delta_B) in a.u. of energy. Bilinear in both arguments;
// either may carry a sign, magnitudes are taken downstream where needed.
inline double moment_field_product_to_au(double delta_mu_in_muB, double delta_B_gauss,
                                         const PhysicalConstants& pc = {}) {
	if (!std::isfinite(delta_mu_in_muB) || !std::isfinite(delta_B_gauss))
		throw std::invalid_argument("moment_field_product_to_au: inputs must be finite");
	return delta_mu_in_muB * pc.bohr_magneton_au * delta_B_gauss * pc.gauss_in_au_field;
}

// Inverse of moment_field_product_to_au for the combined product, in muB*gauss.
inline double moment_field_product_from_au(double product_au, const PhysicalConstants& pc = {}) {
	if (!std::isfinite(product_au))
		throw std::invalid_argument("moment_field_product_from_au: input must be finite");
	return product_au / (pc.bohr_magneton_au * pc.gauss_in_au_field);
}

} // namespace narrow3b
