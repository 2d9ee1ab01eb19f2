#pragma once
#include <cmath>
#include <cstddef>
#include <vector>

#include "constants.hpp"
#include "errors.hpp"
#include "numerics.hpp"
#include "rates_analytic.hpp"
#include "rates_numeric.hpp"

// Rate curves over a scattering-length grid, peak extraction, and recovery of
// the matching radii (alpha, beta) from measured peak positions.

namespace narrow3b::scan {

enum class ScanSystem { boson_recomb_neg_a, boson_relax_pos_a, fermion_relax };
enum class Engine { analytic, numeric };

struct ScanSpec {
	ScanSystem system = ScanSystem::boson_relax_pos_a;
	std::vector<double> a_grid; // signed scattering lengths
	double r_eff = -1;
	double alpha = 1;
	double beta = 1;
	rates::ShortRangeParams A;
	double r0 = 0; // short-range scale, only gates the regime flag
	double m = 1;  // atom mass; mu = m/sqrt(3), mu2 = m/2
	double k = 0;  // collision wavenumber for the numeric engine; 0 = 1e-3/(beta|a|)
};

struct ScanRow {
	double a = 0;
	double ratio = 0; // |a / r_eff|
	double rate = 0;
	double scaled = 0; // rate * m / |a|^(2l+1), dimensionless shape
	bool regime_ok = true;
};

struct PeakFit {
	std::vector<double> peak_positions; // |a| at rate maxima
	double alpha_fit = 0;
	double beta_fit = 0;
	double residual = 0; // RMS phase misfit in radians
};

inline rates::NarrowSpec narrow_spec_at(const ScanSpec& s, double a) {
	rates::NarrowSpec sp;
	sp.a = a;
	sp.r_eff = s.r_eff;
	sp.alpha = s.alpha;
	sp.beta = s.beta;
	sp.A = s.A;
	sp.m = s.m;
	switch (s.system) {
	case ScanSystem::boson_recomb_neg_a:
		sp.l = 1.5;
		sp.s0 = constants::s0_efimov;
		break;
	case ScanSystem::boson_relax_pos_a:
		sp.l = 0;
		sp.s0 = constants::s0_efimov;
		break;
	case ScanSystem::fermion_relax:
		sp.l = 0;
		sp.s0 = constants::p0_fermion;
		break;
	}
	return sp;
}

inline double rate_analytic_at(const ScanSpec& s, double a) {
	const rates::NarrowSpec sp = narrow_spec_at(s, a);
	switch (s.system) {
	case ScanSystem::boson_recomb_neg_a: return rates::k3_neg_a_narrow(sp);
	case ScanSystem::boson_relax_pos_a: return rates::vrel_boson_narrow(sp);
	default: return rates::vrel_fermion_narrow(sp);
	}
}

inline double rate_numeric_at(const ScanSpec& s, double a,
                              const channel::StepSpec& step = {}) {
	channel::ThreeBodySystem sys;
	switch (s.system) {
	case ScanSystem::boson_recomb_neg_a: sys = channel::ThreeBodySystem::boson_recomb; break;
	case ScanSystem::boson_relax_pos_a: sys = channel::ThreeBodySystem::boson_relax; break;
	default: sys = channel::ThreeBodySystem::fermion_relax; break;
	}
	const double mu = s.m / std::sqrt(3.0);
	const double mu2 = s.m / 2;
	const auto ch = channel::build_channel(sys, a, s.r_eff, s.alpha, s.beta, s.A, mu, mu2,
	                                       s.r0 > 0 ? s.r0 : 1e-3 * std::abs(s.r_eff));
	const double k = s.k > 0 ? s.k : 1e-3 / (s.beta * std::abs(a));
	return channel::rate_at_k(ch, k, step);
}

inline double rate_at(const ScanSpec& s, double a, Engine engine) {
	return engine == Engine::analytic ? rate_analytic_at(s, a) : rate_numeric_at(s, a);
}

// 2l + 1 powers of |a| divide out the threshold prefactor so the scaled
// column exposes the log-periodic shape alone.
inline double scaled_exponent(ScanSystem system) {
	return system == ScanSystem::boson_recomb_neg_a ? 4.0 : 1.0;
}

inline std::vector<ScanRow> scan_rates(const ScanSpec& s, Engine engine) {
	if (s.a_grid.empty()) throw std::invalid_argument("scan_rates: empty grid");
	std::vector<ScanRow> rows;
	rows.reserve(s.a_grid.size());
	const double p = scaled_exponent(s.system);
	for (double a : s.a_grid) {
		ScanRow row;
		row.a = a;
		row.ratio = std::abs(a / s.r_eff);
		row.rate = rate_at(s, a, engine);
		row.scaled = row.rate * s.m / std::pow(std::abs(a), p);
		row.regime_ok = rates::narrow_regime_ok(narrow_spec_at(s, a),
		                                        s.r0 > 0 ? s.r0 : 0);
		rows.push_back(row);
	}
	return rows;
}

// Rate maxima located as minima of |a|^(2l+1)/rate, which is quadratic in
// ln|a| near a peak; the vertex of the parabola through the bracketing
// triple refines each grid hit.
inline std::vector<double> find_peaks(const ScanSpec& s, Engine engine) {
	if (s.a_grid.size() < 7) throw std::invalid_argument("find_peaks: grid too coarse");
	const double p = scaled_exponent(s.system);
	std::vector<double> u, y;
	u.reserve(s.a_grid.size());
	y.reserve(s.a_grid.size());
	for (double a : s.a_grid) {
		const double rate = rate_at(s, a, engine);
		if (!(rate > 0)) throw numeric_error("find_peaks: nonpositive rate on grid");
		u.push_back(std::log(std::abs(a)));
		y.push_back(std::pow(std::abs(a), p) / rate);
	}
	std::vector<double> peaks;
	for (std::size_t i = 1; i + 1 < u.size(); ++i) {
		if (y[i] < y[i - 1] && y[i] < y[i + 1]) {
			const double v =
			    parabola_vertex(u[i - 1], y[i - 1], u[i], y[i], u[i + 1], y[i + 1]);
			peaks.push_back(std::exp(v));
		}
	}
	return peaks;
}

namespace detail {

inline double wrap_half_pi(double x) {
	const double pi = constants::pi;
	x = std::fmod(x, pi);
	if (x > pi / 2) x -= pi;
	if (x <= -pi / 2) x += pi;
	return x;
}

struct PhasePoint {
	double x = 0; // s0 ln(|a_peak| / |r_eff|)
	double r_eff = 0;
};

struct PhaseObjective {
	const std::vector<PhasePoint>& pts;
	rates::ShortRangeParams A;
	double s0, phi0;

	// best-fitting theta = s0 ln(beta) for this alpha, by circular mean
	double theta_star(double alpha) const {
		double sn = 0, cs = 0;
		for (const auto& p : pts) {
			const double Phi = rates::phi_narrow(A, p.r_eff, alpha, s0);
			const double v = p.x + Phi - s0 * std::log(alpha) + phi0;
			sn += std::sin(2 * v);
			cs += std::cos(2 * v);
		}
		return -0.5 * std::atan2(sn, cs);
	}
	double misfit(double alpha) const {
		const double th = theta_star(alpha);
		double j = 0;
		for (const auto& p : pts) {
			const double Phi = rates::phi_narrow(A, p.r_eff, alpha, s0);
			const double v = wrap_half_pi(p.x + Phi - s0 * std::log(alpha) + phi0 + th);
			j += v * v;
		}
		return j;
	}
};

} // namespace detail

// Recovers (alpha, beta) from peak positions through the resonance condition
// s0 ln|a/r_eff| + Phi(alpha) + s0 ln(beta/alpha) + phi0 = n pi. A single curve
// only pins the combination Phi + s0 ln(beta/alpha), because the global phase
// can be traded between the two; alpha becomes identifiable once curves at two
// or more distinct r_eff enter, since Phi depends on alpha through Re A/|r_eff|.
// When Re A = 0 the phase is alpha-free altogether, so alpha = 1 by convention
// and one curve suffices. beta lands on the branch with s0 ln(beta) in
// [-pi/2, pi/2).
inline PeakFit fit_alpha_beta(const std::vector<ScanSpec>& specs, Engine engine) {
	if (specs.empty()) throw std::invalid_argument("fit_alpha_beta: no scans given");
	for (const auto& s : specs) {
		if (s.system == ScanSystem::fermion_relax)
			throw physics_error("fit_alpha_beta: fermion rates carry no log-periodic peaks");
		if (s.system != specs.front().system || s.A.A_re != specs.front().A.A_re ||
		    s.A.A_im != specs.front().A.A_im)
			throw std::invalid_argument("fit_alpha_beta: scans must share system and A");
	}
	const double s0 = constants::s0_efimov;
	const double l = specs.front().system == ScanSystem::boson_recomb_neg_a ? 1.5 : 0.0;
	PeakFit out;
	std::vector<detail::PhasePoint> pts;
	int distinct_reff = 0;
	for (const auto& s : specs) {
		const auto peaks = find_peaks(s, engine);
		if (peaks.size() < 2)
			throw physics_error("fit_alpha_beta: need at least 2 peaks per curve");
		bool fresh = true;
		for (const auto& p : pts) fresh = fresh && p.r_eff != s.r_eff;
		distinct_reff += fresh ? 1 : 0;
		for (double ap : peaks) {
			out.peak_positions.push_back(ap);
			pts.push_back({s0 * std::log(ap / std::abs(s.r_eff)), s.r_eff});
		}
	}
	detail::PhaseObjective obj{pts, specs.front().A, s0, rates::phi0(l, s0)};

	double alpha;
	if (specs.front().A.A_re == 0) {
		alpha = 1.0; // degenerate direction, see above
	} else {
		if (distinct_reff < 2)
			throw physics_error(
			    "fit_alpha_beta: alpha is not identifiable from a single r_eff");
		auto j_of_log = [&](double la) { return obj.misfit(std::exp(la)); };
		alpha = std::exp(minimize_golden(j_of_log, -2.5, 2.5, 1e-12));
	}
	double theta = obj.theta_star(alpha);
	if (theta >= constants::pi / 2) theta -= constants::pi;
	out.alpha_fit = alpha;
	out.beta_fit = std::exp(theta / s0);
	out.residual = std::sqrt(obj.misfit(alpha) / double(pts.size()));
	return out;
}

inline PeakFit fit_alpha_beta(const ScanSpec& s, Engine engine) {
	return fit_alpha_beta(std::vector<ScanSpec>{s}, engine);
}

} // namespace narrow3b::scan
