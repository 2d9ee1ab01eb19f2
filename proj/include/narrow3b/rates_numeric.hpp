#pragma once
#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include "constants.hpp"
#include "errors.hpp"
#include "numerics.hpp"
#include "rates_analytic.hpp"

// Single-channel hyperradial scattering on the piecewise potential
//
//           0                          r0   < R < R1 = alpha*|r_eff|
//   W(R) =  -/+ (nu^2 -/+ 1/4)/(2 mu R^2)   R1 < R < R2 = beta*|a|
//           E_nu + l(l+1)/(2 mu R^2)        R  > R2
//
// with a complex boundary condition F ~ sin(k(R - A)) carrying absorption at
// short range. One wavenumber k parameterizes all three regions; the channel
// threshold E_nu only shifts the energy bookkeeping, never the propagation.
// This is the independent oracle the closed-form rates are checked against.

namespace narrow3b::channel {

using rates::ShortRangeParams;
using cplx = std::complex<double>;

enum class ThreeBodySystem { boson_recomb, boson_relax, fermion_relax };
enum class RateProcess { relaxation, recombination };

struct PiecewiseChannel {
	ThreeBodySystem system = ThreeBodySystem::boson_relax;
	double r0 = 0;
	double R1 = 0; // alpha*|r_eff|
	double R2 = 0; // beta*|a|
	double nu = 0; // middle-branch exponent magnitude (s0 or p0)
	bool repulsive_middle = false;
	double l = 0;    // outer centrifugal quantum number
	double E_nu = 0; // entrance-channel threshold
	cplx A;          // short-range length; imag part stored as magnitude >= 0
	double mu = 0;
	double mu2 = 0;
};

struct ScatterResult {
	cplx tan_delta;
	double R_coeff = 1;
	double one_minus_R = 0;
	double k = 0;
};

struct StepSpec {
	double middle_tau_step = 1e-3;   // RK4 step in ln R when integrating the middle branch
	double zero_energy_guard = 1e-5; // closed form allowed while (k*R2)^2 <= guard*nu^2
	bool force_numeric_middle = false;
};

struct ThresholdFit {
	double exponent = 0;
	double residual = 0; // RMS in log space
};

inline PiecewiseChannel build_channel(ThreeBodySystem system, double a, double r_eff,
                                      double alpha, double beta, const ShortRangeParams& A,
                                      double mu, double mu2, double r0) {
	if (!(r_eff < 0)) throw std::invalid_argument("build_channel: r_eff must be negative");
	if (!(alpha > 0) || !(beta > 0))
		throw std::invalid_argument("build_channel: alpha, beta must be positive");
	if (!(mu > 0) || !(mu2 > 0))
		throw std::invalid_argument("build_channel: masses must be positive");
	if (A.A_im < 0) throw std::invalid_argument("build_channel: A_im must be >= 0");
	PiecewiseChannel ch;
	ch.system = system;
	ch.r0 = r0;
	ch.R1 = alpha * std::abs(r_eff);
	ch.R2 = beta * std::abs(a);
	ch.A = cplx(A.A_re, A.A_im);
	ch.mu = mu;
	ch.mu2 = mu2;
	switch (system) {
	case ThreeBodySystem::boson_recomb:
		ch.nu = constants::s0_efimov;
		ch.repulsive_middle = false;
		ch.l = 1.5;
		ch.E_nu = 0;
		break;
	case ThreeBodySystem::boson_relax:
		if (!(a > 0)) throw physics_error("build_channel: relaxation requires a > 0");
		ch.nu = constants::s0_efimov;
		ch.repulsive_middle = false;
		ch.l = 0;
		ch.E_nu = -1.0 / (2 * mu2 * a * a);
		break;
	case ThreeBodySystem::fermion_relax:
		if (!(a > 0)) throw physics_error("build_channel: relaxation requires a > 0");
		ch.nu = constants::p0_fermion;
		ch.repulsive_middle = true;
		ch.l = 0;
		ch.E_nu = -1.0 / (2 * mu2 * a * a);
		break;
	}
	if (!(r0 > 0 && r0 < ch.R1 && ch.R1 < ch.R2))
		throw physics_error("build_channel: requires r0 < alpha*|r_eff| < beta*|a|");
	return ch;
}

namespace detail {

struct PairG {
	cplx G;
	cplx Gp; // dG/dtau, tau = ln R
};

// RK4 on G'' = q(tau) G for the middle branch, renormalized so the pair never
// overflows. The log derivative is invariant under the rescaling.
inline PairG integrate_middle(const PiecewiseChannel& ch, double k, PairG g, double tau2,
                              double tau_step) {
	const std::size_t n = std::max<std::size_t>(64, std::size_t(std::ceil(tau2 / tau_step)));
	const double h = tau2 / double(n);
	const double sign = ch.repulsive_middle ? 1.0 : -1.0;
	const double nu2 = ch.nu * ch.nu;
	auto q = [&](double tau) {
		const double R = ch.R1 * std::exp(tau);
		return sign * nu2 - k * k * R * R;
	};
	double tau = 0;
	for (std::size_t i = 0; i < n; ++i) {
		const double q1 = q(tau), q2 = q(tau + h / 2), q4 = q(tau + h);
		const cplx k1G = g.Gp, k1P = q1 * g.G;
		const cplx k2G = g.Gp + h / 2 * k1P, k2P = q2 * (g.G + h / 2 * k1G);
		const cplx k3G = g.Gp + h / 2 * k2P, k3P = q2 * (g.G + h / 2 * k2G);
		const cplx k4G = g.Gp + h * k3P, k4P = q4 * (g.G + h * k3G);
		g.G += h / 6 * (k1G + 2.0 * k2G + 2.0 * k3G + k4G);
		g.Gp += h / 6 * (k1P + 2.0 * k2P + 2.0 * k3P + k4P);
		tau += h;
		if ((i & 31u) == 31u) {
			const double m = std::max(std::abs(g.G), std::abs(g.Gp));
			if (m > 1e100) {
				g.G /= m;
				g.Gp /= m;
			}
		}
	}
	return g;
}

} // namespace detail

// Propagates the regular solution from the short-range boundary to R2 and
// returns its logarithmic derivative F'/F there. E counts from zero, so the
// wavenumber shared by all regions is k = sqrt(2 mu (E - E_nu)).
inline cplx propagate(const PiecewiseChannel& ch, double E, const StepSpec& step = {}) {
	const double ksq = 2 * ch.mu * (E - ch.E_nu);
	if (!(ksq > 0)) throw std::invalid_argument("propagate: E must lie above the threshold");
	const double k = std::sqrt(ksq);

	// absorbing boundary: positive A_im moves flux into the origin
	const cplx Ac(ch.A.real(), -std::abs(ch.A.imag()));
	const cplx z1 = k * (ch.R1 - Ac);
	const cplx F1 = std::sin(z1);
	const cplx dF1 = k * std::cos(z1);
	const double sR1 = std::sqrt(ch.R1);
	detail::PairG g{F1 / sR1, sR1 * dF1 - F1 / (2 * sR1)};

	const double tau2 = std::log(ch.R2 / ch.R1);
	if (tau2 > 0) {
		const double kR2 = k * ch.R2;
		const bool closed_ok =
		    !step.force_numeric_middle && kR2 * kR2 <= step.zero_energy_guard * ch.nu * ch.nu;
		if (closed_ok) {
			// exact zero-energy pair sqrt(R)*{cos,sin}(nu ln(R/R1)), or the
			// hyperbolic pair across the repulsive barrier
			cplx G2, Gp2;
			if (ch.repulsive_middle) {
				const double chh = std::cosh(ch.nu * tau2), shh = std::sinh(ch.nu * tau2);
				G2 = g.G * chh + g.Gp * shh / ch.nu;
				Gp2 = g.G * ch.nu * shh + g.Gp * chh;
			} else {
				const double cs = std::cos(ch.nu * tau2), sn = std::sin(ch.nu * tau2);
				G2 = g.G * cs + g.Gp * sn / ch.nu;
				Gp2 = -g.G * ch.nu * sn + g.Gp * cs;
			}
			g = {G2, Gp2};
		} else {
			g = detail::integrate_middle(ch, k, g, tau2, step.middle_tau_step);
		}
	}
	if (std::abs(g.G) == 0) throw numeric_error("propagate: log-derivative pole at R2");
	return (g.Gp / g.G + 0.5) / ch.R2;
}

// Matches the interior log derivative against the two free solutions
// sqrt(R) J_p(kR), sqrt(R) N_p(kR) with p = l + 1/2, in the convention where
// the asymptotic wave is sin(kR - l pi/2 + delta), i.e. u ~ J - tan(delta) N.
// Absorption then shows up as Im tan(delta) > 0.
inline cplx extract_tandelta(cplx logderiv, double l, double k_out, double R_match) {
	if (!(k_out > 0) || !(R_match > 0))
		throw std::invalid_argument("extract_tandelta: need k > 0 and R > 0");
	const double x = k_out * R_match;
	double uJ, duJ, uN, duN;
	if (l == 0.0) {
		// p = 1/2: the Bessel pair collapses to plain trig (common factors cancel)
		uJ = std::sin(x);
		duJ = k_out * std::cos(x);
		uN = -std::cos(x);
		duN = k_out * std::sin(x);
	} else {
		const double p = l + 0.5;
		const double sR = std::sqrt(R_match);
		const double J = std::cyl_bessel_j(p, x), Jn = std::cyl_bessel_j(p + 1, x);
		const double N = std::cyl_neumann(p, x), Nn = std::cyl_neumann(p + 1, x);
		const double dJ = (p / x) * J - Jn; // dZ/dx recurrence
		const double dN = (p / x) * N - Nn;
		uJ = sR * J;
		duJ = J / (2 * sR) + sR * k_out * dJ;
		uN = sR * N;
		duN = N / (2 * sR) + sR * k_out * dN;
	}
	cplx num, den;
	if (std::abs(logderiv) > 1.0) {
		num = uJ - duJ / logderiv;
		den = uN - duN / logderiv;
	} else {
		num = logderiv * uJ - duJ;
		den = logderiv * uN - duN;
	}
	if (std::abs(den) == 0) throw numeric_error("extract_tandelta: matching matrix singular");
	return num / den;
}

// Elastic probability |(1 + i t)/(1 - i t)|^2, with 1 - R computed in the
// algebraically exact form that survives Im t down to the underflow limit.
inline ScatterResult reflection(cplx tan_delta, double k = 0) {
	if (!std::isfinite(std::abs(tan_delta)))
		throw std::invalid_argument("reflection: tan_delta must be finite");
	const double m2 = std::norm(tan_delta);
	const double im = tan_delta.imag();
	const double den = 1 + 2 * im + m2;
	if (den <= 0) throw physics_error("reflection: total absorption limit tan_delta = -i");
	ScatterResult res;
	res.tan_delta = tan_delta;
	res.one_minus_R = 4 * im / den;
	res.R_coeff = (1 - 2 * im + m2) / den;
	res.k = k;
	return res;
}

inline double rate_from_probability(const ScatterResult& res, RateProcess process, double mu,
                                    double k) {
	if (!(k > 0) || !(mu > 0))
		throw std::invalid_argument("rate_from_probability: need k > 0, mu > 0");
	const double pi = constants::pi;
	if (process == RateProcess::relaxation) return pi / (mu * k) * res.one_minus_R;
	return 192 * pi * pi / (mu * k * k * k * k) * res.one_minus_R;
}

// One full evaluation at wavenumber k relative to the channel threshold.
inline ScatterResult scatter_at_k(const PiecewiseChannel& ch, double k,
                                  const StepSpec& step = {}) {
	const double E = ch.E_nu + k * k / (2 * ch.mu);
	const cplx y2 = propagate(ch, E, step);
	return reflection(extract_tandelta(y2, ch.l, k, ch.R2), k);
}

inline double rate_at_k(const PiecewiseChannel& ch, double k, const StepSpec& step = {}) {
	const RateProcess process = ch.system == ThreeBodySystem::boson_recomb
	                                ? RateProcess::recombination
	                                : RateProcess::relaxation;
	return rate_from_probability(scatter_at_k(ch, k, step), process, ch.mu, k);
}

// Log-log slope of (1 - R) against k; the low-energy law is 2l + 1.
inline ThresholdFit threshold_scan(const PiecewiseChannel& ch, const std::vector<double>& k_list,
                                   const StepSpec& step = {}, double residual_threshold = 0.05) {
	if (k_list.size() < 4)
		throw std::invalid_argument("threshold_scan: need at least 4 wavenumbers");
	double kmin = k_list.front(), kmax = k_list.front();
	for (double k : k_list) {
		kmin = std::min(kmin, k);
		kmax = std::max(kmax, k);
	}
	// tolerate endpoint rounding when the caller builds the decade by division
	if (!(kmax >= 10 * kmin * (1 - 1e-9)))
		throw std::invalid_argument("threshold_scan: wavenumbers must span a decade");
	std::vector<double> lx, ly;
	lx.reserve(k_list.size());
	ly.reserve(k_list.size());
	for (double k : k_list) {
		const double p = scatter_at_k(ch, k, step).one_minus_R;
		if (!(p > 0)) throw numeric_error("threshold_scan: vanishing inelastic probability");
		lx.push_back(std::log(k));
		ly.push_back(std::log(p));
	}
	const LinearFit fit = linear_fit(lx, ly);
	if (fit.rms_residual > residual_threshold)
		throw numeric_error("threshold_scan: power-law fit residual above threshold");
	return {fit.slope, fit.rms_residual};
}

// Continues the log derivative outward through the centrifugal tail by a RK4
// Riccati integration. Used to verify that the matching radius is arbitrary.
inline cplx continue_outer(cplx y, double l, double k, double R_from, double R_to,
                           std::size_t n_steps = 4000) {
	if (!(R_to > R_from)) throw std::invalid_argument("continue_outer: need R_to > R_from");
	const double h = (R_to - R_from) / double(n_steps);
	auto f = [&](double R, cplx yv) { return cplx(l * (l + 1) / (R * R) - k * k) - yv * yv; };
	double R = R_from;
	for (std::size_t i = 0; i < n_steps; ++i) {
		const cplx k1 = f(R, y);
		const cplx k2 = f(R + h / 2, y + h / 2 * k1);
		const cplx k3 = f(R + h / 2, y + h / 2 * k2);
		const cplx k4 = f(R + h, y + h * k3);
		y += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
		R += h;
	}
	return y;
}

} // namespace narrow3b::channel
