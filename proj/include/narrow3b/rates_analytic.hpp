#pragma once
#include <cmath>
#include <stdexcept>

#include "constants.hpp"
#include "errors.hpp"

// Closed-form inelastic rate coefficients. Two families:
//  - broad-resonance forms, parameterized by a short-range phase Phi and
//    inelasticity eta measured in units of the potential range r0;
//  - narrow-resonance forms, where the effective range opens a window
//    r0 << alpha*|r_eff| << beta*|a| and the short-range physics enters
//    through a complex length A.
// All quantities in atomic units; rates come out as length^3/time (relaxation)
// or length^6/time (recombination) with hbar = 1.

namespace narrow3b::rates {

struct ShortRangeParams {
	double A_re = 0;
	double A_im = 0; // loss strength, stored as a magnitude >= 0
};

struct BroadParams {
	double Phi = 0;
	double eta = 0; // >= 0
};

struct NarrowSpec {
	double a = 0;      // two-body scattering length
	double r_eff = 0;  // effective range, negative
	double alpha = 1;  // inner boundary scale, order unity
	double beta = 1;   // outer boundary scale, order unity
	ShortRangeParams A;
	double l = 0;  // effective angular momentum of the entrance channel
	double s0 = constants::s0_efimov; // channel exponent (p0 for fermion specs)
	double m = 0;  // atom mass
};

inline double phi0(double l, double s0) {
	if (!(s0 > 0)) throw std::invalid_argument("phi0: s0 must be positive");
	if (l < 0) throw std::invalid_argument("phi0: l must be >= 0");
	return std::atan(s0 / (l + 0.5));
}

// Short-range phase. Principal branch; a vanishing denominator sits on the
// branch boundary and is rejected.
inline double phi_narrow(const ShortRangeParams& A, double r_eff, double alpha, double s0) {
	if (!(r_eff < 0)) throw std::invalid_argument("phi_narrow: r_eff must be negative");
	const double x = A.A_re / std::abs(r_eff);
	const double den = alpha + x;
	if (den == 0) throw physics_error("phi_narrow: pole of tan(Phi), branch boundary");
	return std::atan(2 * s0 * (alpha - x) / den);
}

inline double eta_narrow(const ShortRangeParams& A, double r_eff, double alpha, double phi0_angle,
                         double Phi) {
	if (!(phi0_angle > 0) || !(phi0_angle < constants::pi / 2))
		throw std::invalid_argument("eta_narrow: phi0 must lie in (0, pi/2)");
	if (A.A_im < 0) throw std::invalid_argument("eta_narrow: A_im must be >= 0");
	const double s = std::sin(Phi + phi0_angle);
	const double sinh_eta =
	    std::abs(A.A_im / (alpha * r_eff)) / std::sin(2 * phi0_angle) * s * s;
	return std::asinh(sinh_eta);
}

inline double varphi(double alpha, double beta, double s0, double phi0_angle) {
	if (!(alpha > 0) || !(beta > 0))
		throw std::invalid_argument("varphi: alpha and beta must be positive");
	return s0 * std::log(beta / alpha) + phi0_angle;
}

namespace detail {

struct NarrowPhases {
	double Phi = 0;
	double eta = 0;
	double phi0_l = 0;   // channel angle, enters the amplitude and varphi
	double varphi_l = 0;
};

// The inelasticity always uses the l = 0 angle: eta measures flux absorbed at
// short range, before the outer partial wave is resolved, so it cannot depend
// on l. Feeding the channel angle into eta_narrow double-counts the exit
// centrifugal factor and no longer matches the piecewise-channel propagation.
inline NarrowPhases narrow_phases(const NarrowSpec& sp) {
	NarrowPhases ph;
	ph.Phi = phi_narrow(sp.A, sp.r_eff, sp.alpha, sp.s0);
	const double absorb_angle = phi0(0.0, sp.s0);
	ph.eta = eta_narrow(sp.A, sp.r_eff, sp.alpha, absorb_angle, ph.Phi);
	ph.phi0_l = phi0(sp.l, sp.s0);
	ph.varphi_l = varphi(sp.alpha, sp.beta, sp.s0, ph.phi0_l);
	return ph;
}

inline void require_window(const NarrowSpec& sp) {
	if (!(sp.r_eff < 0)) throw physics_error("narrow rate: r_eff must be negative");
	if (!(sp.alpha > 0) || !(sp.beta > 0))
		throw physics_error("narrow rate: alpha, beta must be positive");
	if (!(sp.alpha * std::abs(sp.r_eff) < sp.beta * std::abs(sp.a)))
		throw physics_error("narrow rate: requires alpha*|r_eff| < beta*|a|");
	if (!(sp.m > 0)) throw physics_error("narrow rate: mass must be positive");
}

inline double log_periodic_denominator(const NarrowSpec& sp, const NarrowPhases& ph) {
	const double arg = sp.s0 * std::log(std::abs(sp.a / sp.r_eff)) + ph.Phi + ph.varphi_l;
	const double s = std::sin(arg), sh = std::sinh(ph.eta);
	return s * s + sh * sh;
}

} // namespace detail

// True when the three length scales are separated by at least `decades`
// orders of magnitude each. This is the flag carried by scan output rows;
// the evaluators themselves only refuse outright ordering violations.
inline bool narrow_regime_ok(const NarrowSpec& sp, double r0, double decades = 1.0) {
	const double f = std::pow(10.0, decades);
	const double inner = sp.alpha * std::abs(sp.r_eff);
	const double outer = sp.beta * std::abs(sp.a);
	return r0 > 0 && inner >= f * r0 && outer >= f * inner;
}

// Transition probability out of the entrance channel at wavenumber k, low
// energy. Values above 1 indicate out-of-window input and are clamped.
inline double inelastic_probability(double k, const NarrowSpec& sp, double k_window = 0.1) {
	detail::require_window(sp);
	if (!(k > 0)) throw std::invalid_argument("inelastic_probability: k must be positive");
	if (!(sp.l == 0.0 || sp.l == 1.5))
		throw std::invalid_argument("inelastic_probability: l must be 0 or 3/2");
	const double kR2 = k * sp.beta * std::abs(sp.a);
	if (kR2 > k_window)
		throw physics_error("inelastic_probability: k*beta*|a| above the low-energy window");
	const auto ph = detail::narrow_phases(sp);
	const double pre = 2 * constants::pi / (std::tgamma(sp.l + 1.5) * std::tgamma(sp.l + 0.5));
	const double p = pre * std::pow(kR2 / 2, 2 * sp.l + 1) * std::sin(2 * ph.phi0_l) *
	                 std::sinh(2 * ph.eta) / detail::log_periodic_denominator(sp, ph);
	return p > 1.0 ? 1.0 : p;
}

// Relaxation rate, identical bosons, a > 0, entrance channel l = 0.
inline double vrel_boson_narrow(const NarrowSpec& sp) {
	detail::require_window(sp);
	if (!(sp.a > 0)) throw physics_error("vrel_boson_narrow: requires a > 0");
	if (sp.l != 0.0) throw std::invalid_argument("vrel_boson_narrow: l must be 0");
	const auto ph = detail::narrow_phases(sp);
	return 2 * std::sqrt(3.0) * constants::pi * sp.beta * std::sin(2 * ph.phi0_l) *
	       std::sinh(2 * ph.eta) / detail::log_periodic_denominator(sp, ph) * sp.a / sp.m;
}

// Recombination rate, identical bosons, a < 0, lowest continuum channel l = 3/2.
inline double k3_neg_a_narrow(const NarrowSpec& sp) {
	detail::require_window(sp);
	if (!(sp.a < 0)) throw physics_error("k3_neg_a_narrow: requires a < 0");
	if (sp.l != 1.5) throw std::invalid_argument("k3_neg_a_narrow: l must be 3/2");
	const auto ph = detail::narrow_phases(sp);
	const double pi3 = constants::pi * constants::pi * constants::pi;
	const double b4 = sp.beta * sp.beta * sp.beta * sp.beta;
	const double a4 = sp.a * sp.a * sp.a * sp.a;
	return 12 * std::sqrt(3.0) * pi3 * b4 * std::sin(2 * ph.phi0_l) * std::sinh(2 * ph.eta) /
	       detail::log_periodic_denominator(sp, ph) * a4 / sp.m;
}

// Relaxation rate for the two-component fermion system; sp.s0 carries the
// barrier exponent p0 here and sp.l must be 0.
inline double vrel_fermion_narrow(const NarrowSpec& sp) {
	detail::require_window(sp);
	if (!(sp.a > 0)) throw physics_error("vrel_fermion_narrow: requires a > 0");
	if (sp.l != 0.0) throw std::invalid_argument("vrel_fermion_narrow: l must be 0");
	const double p0 = sp.s0;
	const double R1 = sp.alpha * std::abs(sp.r_eff);
	const double x = sp.A.A_re / R1;
	const double den = (1 - 4 * p0 * p0) * x * x + (2 * p0 + 1) * (2 * p0 + 1);
	return 256 * constants::pi * std::sqrt(3.0) * p0 * p0 * std::abs(sp.A.A_im) / sp.m /
	       (den * den) * std::pow(sp.beta * sp.a / R1, 1 - 2 * p0);
}

namespace detail {

inline void require_broad(double a, double r0, double min_ratio) {
	if (!(r0 > 0)) throw std::invalid_argument("broad rate: r0 must be positive");
	if (!(std::abs(a) >= min_ratio * r0))
		throw physics_error("broad rate: requires |a| >> r0");
}

} // namespace detail

inline double k3_broad_pos(double a, double r0, const BroadParams& bp, double m,
                           double min_ratio = 10.0) {
	detail::require_broad(a, r0, min_ratio);
	if (!(a > 0)) throw physics_error("k3_broad_pos: requires a > 0");
	const double s = std::sin(constants::s0_efimov * std::log(a / r0) + bp.Phi);
	const double sh = std::sinh(bp.eta);
	return 67.1 * std::exp(-2 * bp.eta) * (s * s + sh * sh) * a * a * a * a / m;
}

inline double k3_broad_neg(double a, double r0, const BroadParams& bp, double m,
                           double min_ratio = 10.0) {
	detail::require_broad(a, r0, min_ratio);
	if (!(a < 0)) throw physics_error("k3_broad_neg: requires a < 0");
	const double s = std::sin(constants::s0_efimov * std::log(-a / r0) + bp.Phi + 1.53);
	const double sh = std::sinh(bp.eta);
	return 4590 * std::sinh(2 * bp.eta) / (s * s + sh * sh) * a * a * a * a / m;
}

inline double vrel_broad(double a, double r0, const BroadParams& bp, double m,
                         double min_ratio = 10.0) {
	detail::require_broad(a, r0, min_ratio);
	if (!(a > 0)) throw physics_error("vrel_broad: requires a > 0");
	const double s = std::sin(constants::s0_efimov * std::log(a / r0) + bp.Phi + 1.47);
	const double sh = std::sinh(bp.eta);
	return 20.3 * std::sinh(2 * bp.eta) / (s * s + sh * sh) * a / m;
}

} // namespace narrow3b::rates
