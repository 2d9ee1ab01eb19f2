#pragma once
#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

#include "constants.hpp"
#include "errors.hpp"
#include "numerics.hpp"

// Two-body scattering on model potentials with a tunable outer barrier.
// Everything runs in atomic units with the pair reduced mass mu2 passed
// explicitly. The barrier height B controls how negative the effective
// range can be made while D sets the depth and the bound-state count.

namespace narrow3b::twobody {

enum class PotentialKind { sech_barrier, morse_barrier };

struct PotentialModel {
	PotentialKind kind = PotentialKind::sech_barrier;
	double D = 0;  // well depth, >= 0
	double B = 0;  // barrier height, >= 0
	double r0 = 1; // length scale; the shape argument is x = 3 r / r0
};

struct PhaseShiftSample {
	double k = 0;
	double delta = 0;
};

struct ScatteringFit {
	double a = 0;
	double r_eff = 0;
	double residual = 0; // RMS of k cot(delta) against the fitted line
	std::pair<double, double> k_window{0, 0};
	int n_excluded = 0; // samples dropped because delta sat on a multiple of pi
};

struct NumerovGrid {
	double h = 0;       // radial step; 0 picks r0/400 tightened for stiff walls
	double r_match = 0; // asymptotic matching radius; 0 derives it from the tail
	double tail_floor = 1e-8;
};

struct TuneResult {
	PotentialModel model;
	double a = 0;
	double r_eff = 0;
};

inline void validate(const PotentialModel& m) {
	if (!(m.D >= 0) || !(m.B >= 0) || !(m.r0 > 0))
		throw std::invalid_argument("PotentialModel: need D >= 0, B >= 0, r0 > 0");
}

inline double eval_potential(const PotentialModel& m, double r) {
	validate(m);
	if (!(r >= 0)) throw std::invalid_argument("eval_potential: r must be >= 0");
	const double x = 3 * r / m.r0;
	const double xb = x - 2;
	const double barrier = m.B * std::exp(-2 * xb * xb);
	if (m.kind == PotentialKind::sech_barrier) {
		const double s = 1.0 / std::cosh(x);
		return -m.D * s * s + barrier;
	}
	const double e = std::exp(-(x - 1));
	return m.D * ((1 - e) * (1 - e) - 1) + barrier;
}

namespace detail {

inline double auto_step(const PotentialModel& m, double mu2) {
	double vmax = 0;
	for (int i = 0; i <= 200; ++i)
		vmax = std::max(vmax, std::abs(eval_potential(m, i * (4 * m.r0 / 200))));
	double h = m.r0 / 400;
	if (vmax > 0) h = std::min(h, 0.05 / std::sqrt(2 * mu2 * vmax));
	return h;
}

// Outward Numerov sweep of u'' = (2 mu2 V - ksq) u from u(0) = 0.
// Rescales in place; only ratios of u survive, so that is harmless.
inline void numerov_sweep(const PotentialModel& m, double mu2, double ksq, double h,
                          std::size_t n, std::vector<double>& u) {
	u.assign(n + 1, 0.0);
	auto f = [&](std::size_t i) { return 2 * mu2 * eval_potential(m, double(i) * h) - ksq; };
	const double c = h * h / 12;
	double fm = f(0), f0 = f(1);
	u[0] = 0;
	u[1] = h;
	for (std::size_t i = 1; i < n; ++i) {
		const double fp = f(i + 1);
		u[i + 1] = (2 * u[i] * (1 + 5 * c * f0) - u[i - 1] * (1 - c * fm)) / (1 - c * fp);
		fm = f0;
		f0 = fp;
		const double au = std::abs(u[i + 1]);
		if (au > 1e100) {
			for (std::size_t j = 0; j <= i + 1; ++j) u[j] /= au;
		}
	}
}

// Radius beyond which |V| stays under floor_abs, probed on the step grid.
inline double tail_radius(const PotentialModel& m, double floor_abs, double r_min,
                          double r_cap) {
	const double dr = m.r0 / 50;
	double r = r_min;
	while (r < r_cap) {
		if (std::abs(eval_potential(m, r)) <= floor_abs) return r;
		r += dr;
	}
	return r_cap;
}

struct ZeroEnergyTail {
	double a = 0;     // extrapolated node r - u/u'
	bool node_ahead = false;
	int interior_nodes = 0;
};

inline ZeroEnergyTail zero_energy_sweep(const PotentialModel& m, double mu2) {
	validate(m);
	const double scale = std::max({m.D, m.B, 1e-300});
	const double r_end = tail_radius(m, 1e-22 * scale, 4 * m.r0, 40 * m.r0);
	const double h = auto_step(m, mu2);
	const std::size_t n = std::size_t(std::ceil(r_end / h));
	std::vector<double> u;
	numerov_sweep(m, mu2, 0.0, h, n, u);
	ZeroEnergyTail t;
	for (std::size_t i = 2; i <= n; ++i)
		if (u[i - 1] != 0 && std::signbit(u[i]) != std::signbit(u[i - 1])) ++t.interior_nodes;
	const double uN = u[n];
	const double slope = (u[n] - u[n - 1]) / h;
	if (slope != 0) {
		t.a = double(n) * h - uN / slope;
		t.node_ahead = uN != 0 && (uN / slope) < 0;
	} else {
		t.a = uN == 0 ? double(n) * h : std::numeric_limits<double>::infinity();
	}
	return t;
}

} // namespace detail

inline PhaseShiftSample solve_phase_shift(const PotentialModel& m, double mu2, double k,
                                          NumerovGrid grid = {}) {
	validate(m);
	if (!(mu2 > 0) || !(k > 0))
		throw std::invalid_argument("solve_phase_shift: need mu2 > 0 and k > 0");
	const double h = grid.h > 0 ? grid.h : detail::auto_step(m, mu2);
	double r_match = grid.r_match;
	if (r_match <= 0) {
		const double floor_abs = grid.tail_floor * k * k / (2 * mu2);
		r_match = detail::tail_radius(m, floor_abs, 4 * m.r0, 80 * m.r0);
	}
	// two sample points a fixed span apart pin the outgoing wave
	const std::size_t na = std::size_t(std::ceil(r_match / h));
	const std::size_t nb = na + std::size_t(std::ceil(2 * m.r0 / h));
	std::vector<double> u;
	detail::numerov_sweep(m, mu2, k * k, h, nb, u);
	const double ra = double(na) * h, rb = double(nb) * h;
	const double det = -std::sin(k * (rb - ra));
	if (std::abs(det) < 1e-12)
		throw numeric_error("solve_phase_shift: degenerate sampling span");
	const double P = (u[na] * std::cos(k * rb) - u[nb] * std::cos(k * ra)) / det;
	const double Q = (u[nb] * std::sin(k * ra) - u[na] * std::sin(k * rb)) / det;
	double delta = std::atan2(Q, P);
	// reduce onto the branch through zero; cot(delta) is unaffected
	if (delta > constants::pi / 2) delta -= constants::pi;
	if (delta <= -constants::pi / 2) delta += constants::pi;
	return {k, delta};
}

inline ScatteringFit fit_scattering_params(const std::vector<PhaseShiftSample>& samples) {
	if (samples.size() < 3)
		throw std::invalid_argument("fit_scattering_params: need at least 3 samples");
	std::vector<double> x, y;
	ScatteringFit fit;
	double k_lo = 0, k_hi = 0;
	for (const auto& s : samples) {
		if (std::abs(std::sin(s.delta)) < 1e-8) {
			++fit.n_excluded;
			continue;
		}
		x.push_back(s.k * s.k);
		y.push_back(s.k / std::tan(s.delta));
		if (k_lo == 0 || s.k < k_lo) k_lo = s.k;
		if (s.k > k_hi) k_hi = s.k;
	}
	if (x.size() < 3)
		throw physics_error("fit_scattering_params: too few usable samples after exclusion");
	const LinearFit line = linear_fit(x, y);
	fit.a = -1.0 / line.intercept; // intercept 0 maps to the infinite-a sentinel
	fit.r_eff = 2 * line.slope;
	fit.residual = line.rms_residual;
	fit.k_window = {k_lo, k_hi};
	return fit;
}

inline int count_bound_states(const PotentialModel& m, double mu2) {
	if (!(mu2 > 0)) throw std::invalid_argument("count_bound_states: need mu2 > 0");
	const auto t = detail::zero_energy_sweep(m, mu2);
	return t.interior_nodes + (t.node_ahead ? 1 : 0);
}

inline double a_zero_energy(const PotentialModel& m, double mu2) {
	if (!(mu2 > 0)) throw std::invalid_argument("a_zero_energy: need mu2 > 0");
	return detail::zero_energy_sweep(m, mu2).a;
}

// Phase shifts on an automatically shrunk window k in [k_hi/100, k_hi] with
// k_hi capped so that |delta| stays well inside a branch, then the linear fit
// of k cot(delta) against k^2.
inline ScatteringFit fit_model_window(const PotentialModel& m, double mu2,
                                      std::size_t n_points = 5) {
	validate(m);
	const double a_est = detail::zero_energy_sweep(m, mu2).a;
	double k_hi = 1e-2 / m.r0;
	// the |a| cap keeps the intercept resolvable, but floor it so the window
	// stays usable when |a| blows up near a node threshold
	if (std::isfinite(a_est) && std::abs(a_est) > m.r0)
		k_hi = std::min(k_hi, std::max(0.3 / std::abs(a_est), 1e-4 / m.r0));
	const auto ks = logspace(k_hi / 100, k_hi, n_points);
	std::vector<PhaseShiftSample> samples;
	samples.reserve(ks.size());
	for (double k : ks) samples.push_back(solve_phase_shift(m, mu2, k));
	return fit_scattering_params(samples);
}

namespace detail {

// Smallest D with at least n zero-energy nodes, resolved to ~1e-12 relative.
inline double threshold_depth(PotentialKind kind, double B, double r0, double mu2, int n) {
	PotentialModel m{kind, 0, B, r0};
	auto count = [&](double D) {
		m.D = D;
		return count_bound_states(m, mu2);
	};
	const double D0 = 1.0 / (2 * mu2 * r0 * r0);
	double hi = D0;
	int guard = 0;
	while (count(hi) < n) {
		hi *= 2;
		if (++guard > 60) throw physics_error("tune_to_target: bound-state box exhausted");
	}
	double lo = hi / 2;
	while (lo > 0 && count(lo) >= n) lo /= 2;
	for (int i = 0; i < 80; ++i) {
		const double mid = 0.5 * (lo + hi);
		if (count(mid) >= n)
			hi = mid;
		else
			lo = mid;
		if (hi - lo <= 1e-12 * hi) break;
	}
	return hi;
}

// D on (thr_n, thr_{n+1}) matching the requested zero-energy 1/a. On that
// branch 1/a grows monotonically from -inf up to the next pole, except for
// the finite jump across a = 0, so the search walks from the correct end.
inline double solve_depth_for_a(PotentialKind kind, double B, double r0, double mu2,
                                double target_a, int n_bound, double D_lo, double D_hi) {
	PotentialModel m{kind, 0, B, r0};
	auto inv_a = [&](double D) {
		m.D = D;
		return 1.0 / zero_energy_sweep(m, mu2).a;
	};
	const double span = D_hi - D_lo;
	const double t = 1.0 / target_a;
	double xa, xb;
	if (target_a > 0) {
		// start just above the pole where a = +inf and walk up
		xa = D_lo + 1e-9 * span;
		double fa = inv_a(xa);
		xb = xa;
		double step = 1e-6 * span;
		while (true) {
			xb = std::min(xa + step, D_hi - 1e-9 * span);
			const double fb = inv_a(xb);
			if ((fa - t) * (fb - t) <= 0) break;
			if (xb >= D_hi - 1e-9 * span)
				throw physics_error("tune_to_target: scattering length not reachable");
			xa = xb;
			fa = fb;
			step *= 2;
		}
	} else {
		xb = D_hi - 1e-9 * span;
		double fb = inv_a(xb);
		xa = xb;
		double step = 1e-6 * span;
		while (true) {
			xa = std::max(xb - step, D_lo + 1e-9 * span);
			const double fa = inv_a(xa);
			if ((fa - t) * (fb - t) <= 0) break;
			if (xa <= D_lo + 1e-9 * span)
				throw physics_error("tune_to_target: scattering length not reachable");
			xb = xa;
			fb = fa;
			step *= 2;
		}
	}
	return find_root_bracketed([&](double D) { return inv_a(D) - t; }, xa, xb, 1e-14);
}

} // namespace detail

// Finds (D, B) so that the model carries n_bound two-body bound states and
// reproduces target_a and target_reff as seen by the low-energy fit. Infinite
// target_a asks for the unitarity point, resolved as the n_bound-th node
// threshold itself. target_reff must be negative: the barrier only ever pushes
// the effective range down.
inline TuneResult tune_to_target(PotentialKind kind, double r0, double target_a,
                                 double target_reff, int n_bound, double tol = 1e-4,
                                 double mu2 = 0.5) {
	if (!(r0 > 0) || !(mu2 > 0))
		throw std::invalid_argument("tune_to_target: need r0 > 0 and mu2 > 0");
	if (n_bound < 1) throw std::invalid_argument("tune_to_target: need n_bound >= 1");
	if (target_a == 0) throw std::invalid_argument("tune_to_target: target_a must be nonzero");
	if (!(target_reff < 0))
		throw physics_error("tune_to_target: positive effective range is not reachable");
	const bool unitarity =
	    !std::isfinite(target_a) || std::abs(target_a) > 1e6 * r0;

	auto depth_for = [&](double B) {
		const double lo = detail::threshold_depth(kind, B, r0, mu2, n_bound);
		if (unitarity) return lo;
		const double hi = detail::threshold_depth(kind, B, r0, mu2, n_bound + 1);
		return detail::solve_depth_for_a(kind, B, r0, mu2, target_a, n_bound, lo, hi);
	};
	auto reff_at = [&](double B) {
		PotentialModel m{kind, depth_for(B), B, r0};
		return fit_model_window(m, mu2).r_eff;
	};

	// bracket in B: the fitted range decreases monotonically as the barrier grows
	const double D0 = 1.0 / (2 * mu2 * r0 * r0);
	double B_lo = 0, f_lo = reff_at(0) - target_reff;
	if (f_lo <= 0) throw physics_error("tune_to_target: target effective range above reach");
	double B_hi = D0, f_hi = reff_at(B_hi) - target_reff;
	int guard = 0;
	while (f_hi > 0) {
		B_lo = B_hi;
		f_lo = f_hi;
		B_hi *= 2;
		if (++guard > 40) throw physics_error("tune_to_target: barrier box exhausted");
		f_hi = reff_at(B_hi) - target_reff;
	}
	// Illinois iteration on the fitted effective range
	double B = B_hi, f = f_hi;
	for (int i = 0; i < 200 && std::abs(f) > tol * std::abs(target_reff); ++i) {
		B = (B_lo * f_hi - B_hi * f_lo) / (f_hi - f_lo);
		f = reff_at(B) - target_reff;
		if (f * f_hi < 0) {
			B_lo = B_hi;
			f_lo = f_hi;
		} else {
			f_lo *= 0.5;
		}
		B_hi = B;
		f_hi = f;
	}

	TuneResult out;
	out.model = {kind, depth_for(B), B, r0};
	const ScatteringFit fit = fit_model_window(out.model, mu2);
	out.a = fit.a;
	out.r_eff = fit.r_eff;

	// polish the depth against the window fit if the zero-energy metric drifted
	if (!unitarity) {
		for (int pass = 0; pass < 3 && std::abs(out.a - target_a) > tol * std::abs(target_a);
		     ++pass) {
			const double miss = 1.0 / out.a - 1.0 / target_a;
			const double corrected = 1.0 / (1.0 / target_a - miss);
			out.model.D = detail::solve_depth_for_a(
			    kind, B, r0, mu2, corrected, n_bound,
			    detail::threshold_depth(kind, B, r0, mu2, n_bound),
			    detail::threshold_depth(kind, B, r0, mu2, n_bound + 1));
			const ScatteringFit f2 = fit_model_window(out.model, mu2);
			out.a = f2.a;
			out.r_eff = f2.r_eff;
		}
	}
	return out;
}

} // namespace narrow3b::twobody
