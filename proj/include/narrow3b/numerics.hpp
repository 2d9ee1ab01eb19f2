#pragma once
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <vector>

#include "errors.hpp"

// Small numeric toolbox shared by the solver modules: safeguarded 1D root
// finding, linear least squares, grid builders.

namespace narrow3b {

inline std::vector<double> logspace(double lo, double hi, std::size_t n) {
	if (!(lo > 0) || !(hi > 0) || n < 2)
		throw std::invalid_argument("logspace: need positive bounds and n >= 2");
	std::vector<double> g(n);
	const double l0 = std::log(lo), l1 = std::log(hi);
	for (std::size_t i = 0; i < n; ++i)
		g[i] = std::exp(l0 + (l1 - l0) * double(i) / double(n - 1));
	g.front() = lo;
	g.back() = hi;
	return g;
}

inline std::vector<double> linspace(double lo, double hi, std::size_t n) {
	if (n < 2) throw std::invalid_argument("linspace: need n >= 2");
	std::vector<double> g(n);
	for (std::size_t i = 0; i < n; ++i)
		g[i] = lo + (hi - lo) * double(i) / double(n - 1);
	return g;
}

// Bisection with secant acceleration on a bracketing interval. f(lo) and
// f(hi) must have opposite signs. Tolerance is on x, absolute + relative.
template <class F>
double find_root_bracketed(F&& f, double lo, double hi, double xtol_rel = 1e-14,
                           double xtol_abs = 0.0, int max_iter = 200) {
	double flo = f(lo), fhi = f(hi);
	if (flo == 0) return lo;
	if (fhi == 0) return hi;
	if ((flo > 0) == (fhi > 0))
		throw numeric_error("find_root_bracketed: endpoints do not bracket a root");
	for (int it = 0; it < max_iter; ++it) {
		const double width = hi - lo;
		if (width <= xtol_abs + xtol_rel * std::max(std::abs(lo), std::abs(hi)))
			break;
		// secant candidate, clipped away from the bracket edges
		double xs = lo - flo * width / (fhi - flo);
		const double margin = 0.01 * width;
		if (!(xs > lo + margin && xs < hi - margin)) xs = 0.5 * (lo + hi);
		const double fs = f(xs);
		if (fs == 0) return xs;
		if ((fs > 0) == (flo > 0)) {
			lo = xs;
			flo = fs;
		} else {
			hi = xs;
			fhi = fs;
		}
	}
	return 0.5 * (lo + hi);
}

struct LinearFit {
	double intercept = 0;
	double slope = 0;
	double rms_residual = 0; // RMS of (y - fit), not normalized
};

inline LinearFit linear_fit(const std::vector<double>& x, const std::vector<double>& y) {
	const std::size_t n = x.size();
	if (n != y.size() || n < 2)
		throw std::invalid_argument("linear_fit: need two same-length samples at least");
	double sx = 0, sy = 0, sxx = 0, sxy = 0;
	for (std::size_t i = 0; i < n; ++i) {
		sx += x[i];
		sy += y[i];
		sxx += x[i] * x[i];
		sxy += x[i] * y[i];
	}
	const double det = double(n) * sxx - sx * sx;
	if (det == 0) throw std::invalid_argument("linear_fit: degenerate abscissae");
	LinearFit fit;
	fit.slope = (double(n) * sxy - sx * sy) / det;
	fit.intercept = (sy - fit.slope * sx) / double(n);
	double ss = 0;
	for (std::size_t i = 0; i < n; ++i) {
		const double r = y[i] - (fit.intercept + fit.slope * x[i]);
		ss += r * r;
	}
	fit.rms_residual = std::sqrt(ss / double(n));
	return fit;
}

// Vertex abscissa of the parabola through three points; x2 must be the middle
// sample of a local extremum triple.
inline double parabola_vertex(double x1, double y1, double x2, double y2, double x3, double y3) {
	const double d21 = (y2 - y1) / (x2 - x1);
	const double d32 = (y3 - y2) / (x3 - x2);
	const double curv = (d32 - d21) / (x3 - x1);
	if (curv == 0) return x2;
	return 0.5 * (x1 + x2 - d21 / curv);
}

// Golden-section minimizer for smooth 1D objectives on [lo, hi].
template <class F>
double minimize_golden(F&& f, double lo, double hi, double xtol = 1e-10, int max_iter = 200) {
	const double invphi = 0.6180339887498949;
	double a = lo, b = hi;
	double c = b - invphi * (b - a);
	double d = a + invphi * (b - a);
	double fc = f(c), fd = f(d);
	for (int it = 0; it < max_iter && (b - a) > xtol * (1 + std::abs(a) + std::abs(b)); ++it) {
		if (fc < fd) {
			b = d;
			d = c;
			fd = fc;
			c = b - invphi * (b - a);
			fc = f(c);
		} else {
			a = c;
			c = d;
			fc = fd;
			d = a + invphi * (b - a);
			fd = f(d);
		}
	}
	return 0.5 * (a + b);
}

} // namespace narrow3b
