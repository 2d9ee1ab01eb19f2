#pragma once
#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include "constants.hpp"
#include "errors.hpp"
#include "numerics.hpp"

// Zero-range-potential channel equation for three identical bosons. The
// channel exponent s is solved from
//
//   s*cosh(pi*s/2) - (8/sqrt(3))*sinh(pi*s/6)
//       = 12^(-1/4) * sinh(pi*s/2) * (2R/a + (r_eff/R)*s^2)
//
// continued to imaginary s via sigma = s^2 as the real solver variable:
// sigma >= 0 keeps the hyperbolic form, sigma < 0 becomes the trigonometric
// form in t = sqrt(-sigma). The code never touches complex s.

namespace narrow3b::zrp {

enum class Branch { lowest };

struct ChannelExponent {
	double R = 0;
	double s_squared = 0; // signed: > 0 attractive channel, < 0 repulsive
};

struct ZrpPotentialPoint {
	double R = 0;
	double U = 0;
	double W00 = 0;
};

struct C0Fit {
	double c0 = 0;
	double residual = 0; // RMS of the fit, relative to the RMS of the data
	double R_lo = 0;
	double R_hi = 0;
};

namespace detail {

inline constexpr double quarter_root_12 = 0.537284965911771; // 12^(-1/4)
inline constexpr double eight_over_sqrt3 = 4.618802153517007;

// Characteristic whose zero is the channel exponent, normalized by s so the
// trivial root at sigma = 0 is removed and the function is continuous there.
// rhs_const = 2R/a, rhs_lin = r_eff/R (the full right side is
// rhs_const + rhs_lin*sigma).
inline double characteristic(double sigma, double rhs_const, double rhs_lin) {
	const double pi = constants::pi;
	const double rhs = rhs_const + rhs_lin * sigma;
	if (sigma > 1e-30) {
		const double s = std::sqrt(sigma);
		if (s < 30.0) {
			return std::cosh(pi * s / 2) - eight_over_sqrt3 * std::sinh(pi * s / 6) / s -
			       quarter_root_12 * std::sinh(pi * s / 2) / s * rhs;
		}
		// large-s form, normalized by cosh(pi*s/2) to avoid overflow
		return s - eight_over_sqrt3 * std::exp(-pi * s / 3) - quarter_root_12 * rhs;
	}
	if (sigma < -1e-30) {
		const double t = std::sqrt(-sigma);
		return std::cos(pi * t / 2) - eight_over_sqrt3 * std::sin(pi * t / 6) / t -
		       quarter_root_12 * std::sin(pi * t / 2) / t * rhs;
	}
	return 1.0 - eight_over_sqrt3 * pi / 6 - quarter_root_12 * pi / 2 * rhs;
}

// Largest sigma root: the lowest channel. Scans downward from sigma_hi and
// refines the first sign change.
inline double largest_root(double rhs_const, double rhs_lin, double sigma_lo = -30.0) {
	const double s0sq = constants::s0_efimov * constants::s0_efimov;
	double sigma_hi = s0sq + 0.25;
	if (rhs_const > 0) {
		const double est = quarter_root_12 * rhs_const;
		sigma_hi += 2.0 * est * est + 2.0 * est;
	}
	for (int it = 0; it < 200 && characteristic(sigma_hi, rhs_const, rhs_lin) < 0; ++it)
		sigma_hi = 2 * sigma_hi + 1;

	const std::size_t n = 1600;
	double prev_sigma = sigma_hi;
	double prev_val = characteristic(prev_sigma, rhs_const, rhs_lin);
	if (prev_val == 0) return prev_sigma;
	for (std::size_t i = 1; i <= n; ++i) {
		const double sigma = sigma_hi + (sigma_lo - sigma_hi) * double(i) / double(n);
		const double val = characteristic(sigma, rhs_const, rhs_lin);
		if (val == 0) return sigma;
		if ((val > 0) != (prev_val > 0)) {
			return find_root_bracketed(
			    [&](double x) { return characteristic(x, rhs_const, rhs_lin); }, sigma,
			    prev_sigma, 1e-14, 1e-14);
		}
		prev_sigma = sigma;
		prev_val = val;
	}
	throw numeric_error("zrp: no channel root in the scanned interval");
}

} // namespace detail

// Universal exponent at unitarity with vanishing range correction, to full
// double precision. Root of the left-hand side alone.
inline double efimov_root_unitarity() {
	const double sigma = find_root_bracketed(
	    [](double x) { return detail::characteristic(x, 0.0, 0.0); }, 0.81, 1.21, 1e-15, 1e-15);
	return std::sqrt(sigma);
}

// Channel exponent at hyperradius R. Pass a = +infinity for the unitarity
// point (2R/a underflows to exactly zero there).
inline ChannelExponent solve_s_at(double R, double a, double r_eff,
                                  Branch branch = Branch::lowest) {
	(void)branch; // only the lowest channel is tracked
	if (!(R > 0)) throw std::invalid_argument("solve_s_at: R must be positive");
	if (r_eff > 0) throw std::invalid_argument("solve_s_at: r_eff must be <= 0");
	if (a == 0) throw std::invalid_argument("solve_s_at: a must be nonzero (use inf for unitarity)");
	const double rhs_const = 2 * R / a;
	const double rhs_lin = r_eff / R;
	return {R, detail::largest_root(rhs_const, rhs_lin)};
}

// Ordered scan with branch-continuity verification. Throws physics_error on a
// detected jump between adjacent grid points.
inline std::vector<ChannelExponent> solve_s_scan(const std::vector<double>& R_grid, double a,
                                                 double r_eff) {
	std::vector<ChannelExponent> out;
	out.reserve(R_grid.size());
	for (std::size_t i = 0; i < R_grid.size(); ++i) {
		out.push_back(solve_s_at(R_grid[i], a, r_eff));
		if (i > 0) {
			const double dlog = std::abs(std::log(R_grid[i] / R_grid[i - 1]));
			const double allowed =
			    (0.5 + 0.5 * std::abs(out[i - 1].s_squared)) * (1.0 + 10.0 * dlog);
			if (std::abs(out[i].s_squared - out[i - 1].s_squared) > allowed)
				throw physics_error("zrp: branch jump detected along R scan");
		}
	}
	return out;
}

inline ZrpPotentialPoint zrp_potentials(double R, double a, double r_eff, double mu) {
	if (!(mu > 0)) throw std::invalid_argument("zrp_potentials: mu must be positive");
	const ChannelExponent ce = solve_s_at(R, a, r_eff);
	const double U = -(ce.s_squared + 0.25) / (2 * mu * R * R);
	// the diagonal correction is higher order than 1/R^2 here and is dropped
	return {R, U, U};
}

inline double free_channel_potential(int lambda, double R, double mu) {
	if (lambda < 0) throw std::invalid_argument("free_channel_potential: lambda must be >= 0");
	if (!(R > 0) || !(mu > 0))
		throw std::invalid_argument("free_channel_potential: R and mu must be positive");
	return (double(lambda) * (lambda + 4) + 15.0 / 4.0) / (2 * mu * R * R);
}

// Linear coefficient of s^2 ~ c0*R/|r_eff| at unitarity, fitted over
// R in [window.first, window.second] (defaults to [1e-3, 1e-2]*|r_eff|).
inline C0Fit fit_c0(double r_eff, std::pair<double, double> fit_window = {0, 0},
                    std::size_t n_points = 24, double residual_threshold = 0.02) {
	if (!(r_eff < 0)) throw std::invalid_argument("fit_c0: r_eff must be negative");
	const double reff_mag = -r_eff;
	double R_lo = fit_window.first, R_hi = fit_window.second;
	if (R_lo <= 0 || R_hi <= 0) {
		R_lo = 1e-3 * reff_mag;
		R_hi = 1e-2 * reff_mag;
	}
	if (!(R_lo < R_hi)) throw std::invalid_argument("fit_c0: bad window");
	const double inf = std::numeric_limits<double>::infinity();
	double sxx = 0, sxy = 0, syy = 0;
	std::vector<double> xs = logspace(R_lo, R_hi, n_points);
	std::vector<double> ys(n_points);
	for (std::size_t i = 0; i < n_points; ++i) {
		const double x = xs[i] / reff_mag;
		// -(2 mu R^2 W00 + 1/4) = s^2, fitted against c0 * R/|r_eff|
		const double y = solve_s_at(xs[i], inf, r_eff).s_squared;
		ys[i] = y;
		sxx += x * x;
		sxy += x * y;
		syy += y * y;
	}
	C0Fit fit;
	fit.R_lo = R_lo;
	fit.R_hi = R_hi;
	fit.c0 = sxy / sxx;
	double ss = 0;
	for (std::size_t i = 0; i < n_points; ++i) {
		const double r = ys[i] - fit.c0 * xs[i] / reff_mag;
		ss += r * r;
	}
	fit.residual = std::sqrt(ss / syy);
	if (fit.residual > residual_threshold)
		throw physics_error("fit_c0: window outside the asymptotic regime");
	return fit;
}

} // namespace narrow3b::zrp
