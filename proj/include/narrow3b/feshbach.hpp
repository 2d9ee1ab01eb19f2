#pragma once
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "errors.hpp"
#include "units.hpp"

// Magnetic resonance catalog: each entry carries the measured resonance
// parameters in mixed experimental units (Gauss, Bohr magnetons, amu) plus
// the van der Waals length in atomic units. For unlike pairs mass_amu holds
// twice the reduced mass of the pair, so mu2 = mass/2 uniformly.

namespace narrow3b::feshbach {

struct ResonanceEntry {
	std::string species;
	double position_G = 0;
	double a_bg = 0;       // background scattering length, a.u.
	double delta_mu_muB = 0;
	double delta_B_G = 0;
	double mass_amu = 0;
	double r0 = 0;         // van der Waals length, a.u.
};

struct Catalog {
	std::vector<ResonanceEntry> entries;
	std::vector<int> skipped_lines; // populated only in lenient mode
};

enum class ResonanceClass { narrow, broad, marginal };

struct ClassifyThresholds {
	double narrow_ratio = 10; // |r_eff| >= narrow_ratio * r0
	double broad_ratio = 1;   // |r_eff| <= broad_ratio * r0
};

inline const char* to_string(ResonanceClass c) {
	switch (c) {
	case ResonanceClass::narrow: return "narrow";
	case ResonanceClass::broad: return "broad";
	default: return "marginal";
	}
}

// r_eff = -1 / | mu2 * a_bg * delta_mu * delta_B |, everything in a.u.
inline double reff_from_resonance(const ResonanceEntry& e,
                                  const PhysicalConstants& pc = {}) {
	if (!(e.mass_amu > 0))
		throw std::invalid_argument("reff_from_resonance: mass must be positive");
	const double mu2 = amu_to_au(e.mass_amu, pc) / 2;
	const double coupling = moment_field_product_to_au(e.delta_mu_muB, e.delta_B_G, pc);
	const double prod = std::abs(mu2 * e.a_bg * coupling);
	if (!(prod > 0))
		throw physics_error("reff_from_resonance: vanishing resonance strength");
	return -1.0 / prod;
}

inline ResonanceClass classify(double r_eff, double r0, ClassifyThresholds th = {}) {
	if (!(r0 > 0)) throw std::invalid_argument("classify: need r0 > 0");
	const double ratio = std::abs(r_eff) / r0;
	if (ratio >= th.narrow_ratio) return ResonanceClass::narrow;
	if (ratio <= th.broad_ratio) return ResonanceClass::broad;
	return ResonanceClass::marginal;
}

inline const char* catalog_header() {
	return "species,position_G,a_bg_au,delta_mu_muB,delta_B_G,mass_amu,r0_au";
}

namespace detail {

inline std::string trim(const std::string& s) {
	const auto b = s.find_first_not_of(" \t\r\n");
	if (b == std::string::npos) return "";
	const auto e = s.find_last_not_of(" \t\r\n");
	return s.substr(b, e - b + 1);
}

inline bool parse_number(const std::string& field, double& out) {
	const std::string t = trim(field);
	if (t.empty()) return false;
	char* end = nullptr;
	out = std::strtod(t.c_str(), &end);
	return end == t.c_str() + t.size();
}

inline std::vector<std::string> split_csv(const std::string& line) {
	std::vector<std::string> out;
	std::string cur;
	for (char c : line) {
		if (c == ',') {
			out.push_back(cur);
			cur.clear();
		} else {
			cur += c;
		}
	}
	out.push_back(cur);
	return out;
}

} // namespace detail

// Strict mode throws on the first malformed row; lenient mode skips such rows
// and records their 1-based line numbers.
inline Catalog load_catalog(std::istream& in, bool lenient = false) {
	Catalog cat;
	std::string line;
	int lineno = 0;
	bool header_seen = false;
	while (std::getline(in, line)) {
		++lineno;
		const std::string t = detail::trim(line);
		if (t.empty() || t[0] == '#') continue;
		if (!header_seen) {
			if (t != catalog_header())
				throw std::invalid_argument("catalog line " + std::to_string(lineno) +
				                            ": missing or wrong header");
			header_seen = true;
			continue;
		}
		const auto fields = detail::split_csv(t);
		ResonanceEntry e;
		bool ok = fields.size() == 7;
		if (ok) {
			e.species = detail::trim(fields[0]);
			ok = !e.species.empty() && detail::parse_number(fields[1], e.position_G) &&
			     detail::parse_number(fields[2], e.a_bg) &&
			     detail::parse_number(fields[3], e.delta_mu_muB) &&
			     detail::parse_number(fields[4], e.delta_B_G) &&
			     detail::parse_number(fields[5], e.mass_amu) &&
			     detail::parse_number(fields[6], e.r0);
		}
		if (!ok) {
			if (lenient) {
				cat.skipped_lines.push_back(lineno);
				continue;
			}
			throw std::invalid_argument("catalog line " + std::to_string(lineno) +
			                            ": malformed row");
		}
		cat.entries.push_back(std::move(e));
	}
	if (!header_seen) throw std::invalid_argument("catalog: empty input");
	return cat;
}

inline Catalog load_catalog_file(const std::string& path, bool lenient = false) {
	std::ifstream in(path);
	if (!in) throw std::invalid_argument("catalog: cannot open " + path);
	return load_catalog(in, lenient);
}

inline std::string format_sig(double v) {
	char buf[40];
	std::snprintf(buf, sizeof buf, "%.12g", v);
	return buf;
}

inline void emit_table(const std::vector<ResonanceEntry>& entries, std::ostream& out) {
	out << catalog_header() << "\n";
	for (const auto& e : entries) {
		out << e.species << ',' << format_sig(e.position_G) << ',' << format_sig(e.a_bg)
		    << ',' << format_sig(e.delta_mu_muB) << ',' << format_sig(e.delta_B_G) << ','
		    << format_sig(e.mass_amu) << ',' << format_sig(e.r0) << "\n";
	}
}

} // namespace narrow3b::feshbach
