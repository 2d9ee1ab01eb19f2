// Command-line front end: resonance tables, two-body fits and tuning, channel
// exponent curves, rate scans with both evaluation engines, and threshold
// checks. All quantities are atomic units unless a column name says otherwise.
#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <memory>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <narrow3b/narrow3b.hpp>

namespace {

using namespace narrow3b;

std::string fmt12(double v) {
	char buf[40];
	std::snprintf(buf, sizeof buf, "%.12g", v);
	return buf;
}

struct Cell {
	std::string text;
	bool quoted = false;
};

Cell num(double v) { return {fmt12(v), !std::isfinite(v)}; }
Cell txt(std::string s) { return {std::move(s), true}; }

struct Table {
	std::vector<std::string> cols;
	std::vector<std::vector<Cell>> rows;
	std::vector<std::pair<std::string, std::string>> notes;
};

std::string json_escape(const std::string& s) {
	std::string out;
	for (char c : s) {
		switch (c) {
		case '"': out += "\\\""; break;
		case '\\': out += "\\\\"; break;
		case '\n': out += "\\n"; break;
		case '\t': out += "\\t"; break;
		default:
			if (static_cast<unsigned char>(c) < 0x20) {
				char buf[8];
				std::snprintf(buf, sizeof buf, "\\u%04x", c);
				out += buf;
			} else {
				out += c;
			}
		}
	}
	return out;
}

void write_csv(const Table& t, std::ostream& os, bool annotate) {
	if (annotate)
		for (const auto& [k, v] : t.notes) os << "# " << k << "=" << v << "\n";
	for (std::size_t i = 0; i < t.cols.size(); ++i)
		os << t.cols[i] << (i + 1 < t.cols.size() ? "," : "\n");
	for (const auto& row : t.rows)
		for (std::size_t i = 0; i < row.size(); ++i)
			os << row[i].text << (i + 1 < row.size() ? "," : "\n");
}

void write_json(const Table& t, std::ostream& os, bool annotate) {
	os << "{";
	if (annotate && !t.notes.empty()) {
		os << "\"meta\":{";
		for (std::size_t i = 0; i < t.notes.size(); ++i)
			os << (i ? "," : "") << "\"" << json_escape(t.notes[i].first) << "\":\""
			   << json_escape(t.notes[i].second) << "\"";
		os << "},";
	}
	os << "\"rows\":[";
	for (std::size_t r = 0; r < t.rows.size(); ++r) {
		os << (r ? "," : "") << "{";
		for (std::size_t i = 0; i < t.rows[r].size(); ++i) {
			const Cell& c = t.rows[r][i];
			os << (i ? "," : "") << "\"" << json_escape(t.cols[i]) << "\":";
			if (c.quoted)
				os << "\"" << json_escape(c.text) << "\"";
			else
				os << c.text;
		}
		os << "}";
	}
	os << "]}\n";
}

struct OutputOpts {
	std::string format = "csv";
	std::string out;
	std::string config;
	bool annotate = false;
};

void add_output_opts(CLI::App* sub, OutputOpts& o) {
	sub->add_option("--format", o.format, "output format")
	    ->check(CLI::IsMember({"csv", "json"}));
	sub->add_option("--out", o.out, "write output to this file instead of stdout");
	sub->add_flag("--annotate", o.annotate, "prepend the parameters used");
	sub->add_option("--config", o.config, "key=value file; command-line flags win");
}

// The parser only reads config files attached to the app it finishes on, never
// to a subcommand, so preset subcommand options by expanding the file into
// extra tokens before the real parse. Keys already given as flags are skipped,
// which is what makes explicit flags win.
std::vector<std::string> expand_config_args(const std::vector<std::string>& given) {
	std::string path;
	for (std::size_t i = 0; i < given.size(); ++i) {
		if (given[i] == "--config" && i + 1 < given.size())
			path = given[i + 1];
		else if (given[i].rfind("--config=", 0) == 0)
			path = given[i].substr(9);
	}
	if (path.empty()) return given;
	std::ifstream f(path);
	if (!f) throw std::invalid_argument("cannot open config file " + path);
	auto trim = [](const std::string& s) {
		const auto b = s.find_first_not_of(" \t\r");
		const auto e = s.find_last_not_of(" \t\r");
		return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
	};
	std::vector<std::string> out = given;
	std::string line;
	int lineno = 0;
	while (std::getline(f, line)) {
		++lineno;
		const std::string stripped = trim(line);
		if (stripped.empty() || stripped[0] == '#') continue;
		const auto eq = stripped.find('=');
		const std::string key = eq == std::string::npos ? std::string() : trim(stripped.substr(0, eq));
		if (key.empty())
			throw std::invalid_argument(path + " line " + std::to_string(lineno) +
			                            ": expected key=value");
		std::string val = trim(stripped.substr(eq + 1));
		if (val.size() >= 2 && (val.front() == '"' || val.front() == '\'') &&
		    val.back() == val.front())
			val = val.substr(1, val.size() - 2);
		const std::string flag = "--" + key;
		bool explicitly_given = false;
		for (const std::string& t : given)
			if (t == flag || t.rfind(flag + "=", 0) == 0) {
				explicitly_given = true;
				break;
			}
		if (!explicitly_given) out.push_back(flag + "=" + val);
	}
	return out;
}

void emit(const Table& t, const OutputOpts& o) {
	std::ostringstream buf;
	if (o.format == "json")
		write_json(t, buf, o.annotate);
	else
		write_csv(t, buf, o.annotate);
	if (o.out.empty()) {
		std::cout << buf.str();
	} else {
		std::ofstream f(o.out);
		if (!f) throw std::invalid_argument("cannot open output file " + o.out);
		f << buf.str();
	}
}

twobody::PotentialKind parse_kind(const std::string& s) {
	if (s == "sech_barrier") return twobody::PotentialKind::sech_barrier;
	if (s == "morse_barrier") return twobody::PotentialKind::morse_barrier;
	throw std::invalid_argument("unknown potential kind: " + s);
}

scan::ScanSystem parse_system(const std::string& s) {
	if (s == "boson_recomb_neg_a") return scan::ScanSystem::boson_recomb_neg_a;
	if (s == "boson_relax_pos_a") return scan::ScanSystem::boson_relax_pos_a;
	if (s == "fermion_relax") return scan::ScanSystem::fermion_relax;
	throw std::invalid_argument("unknown system: " + s);
}

// shared scan parameters for rates-scan, fit-alpha-beta and threshold-check
struct ScanArgs {
	std::string system = "boson_relax_pos_a";
	std::string engine = "analytic";
	double a_lo = 0, a_hi = 0;
	std::size_t n = 100;
	double r_eff = 0;
	std::vector<double> r_eff_list; // fit-alpha-beta takes one curve per value
	double alpha = 1, beta = 1;
	double A_re = 0, A_im = 0;
	double r0 = 0;
	double m = 0;
	double k = 0;
};

void add_scan_opts(CLI::App* sub, ScanArgs& s, bool with_grid, bool multi_reff = false) {
	sub->add_option("--system", s.system, "three-body process")
	    ->check(CLI::IsMember({"boson_recomb_neg_a", "boson_relax_pos_a", "fermion_relax"}))
	    ->required();
	if (with_grid) {
		sub->add_option("--a-lo", s.a_lo, "smallest |a|")->required();
		sub->add_option("--a-hi", s.a_hi, "largest |a|")->required();
		sub->add_option("--n", s.n, "grid points, log spaced");
		sub->add_option("--engine", s.engine, "rate evaluator")
		    ->check(CLI::IsMember({"analytic", "numeric"}));
	}
	if (multi_reff)
		sub->add_option("--r-eff", s.r_eff_list,
		                "effective range(s), negative; repeat or comma-join for several curves")
		    ->delimiter(',')
		    ->required();
	else
		sub->add_option("--r-eff", s.r_eff, "effective range, negative")->required();
	sub->add_option("--alpha", s.alpha, "inner matching radius in units of |r_eff|");
	sub->add_option("--beta", s.beta, "outer matching radius in units of |a|");
	sub->add_option("--A-re", s.A_re, "short-range length, real part");
	sub->add_option("--A-im", s.A_im, "short-range absorption, >= 0")->required();
	sub->add_option("--r0", s.r0, "short-range scale (regime flag, numeric boundary)");
	sub->add_option("--m", s.m, "atom mass")->required();
	sub->add_option("--k", s.k, "collision wavenumber; 0 picks 1e-3/(beta*|a|)");
}

scan::ScanSpec make_scan_spec(const ScanArgs& args) {
	scan::ScanSpec spec;
	spec.system = parse_system(args.system);
	spec.r_eff = args.r_eff;
	spec.alpha = args.alpha;
	spec.beta = args.beta;
	spec.A = {args.A_re, args.A_im};
	spec.r0 = args.r0;
	spec.m = args.m;
	spec.k = args.k;
	if (args.a_lo > 0 && args.a_hi > args.a_lo) {
		spec.a_grid = logspace(args.a_lo, args.a_hi, args.n);
		if (spec.system == scan::ScanSystem::boson_recomb_neg_a)
			for (double& a : spec.a_grid) a = -a;
	}
	return spec;
}

void note_scan_common(Table& t, const ScanArgs& a) {
	t.notes.emplace_back("system", a.system);
	t.notes.emplace_back("alpha", fmt12(a.alpha));
	t.notes.emplace_back("beta", fmt12(a.beta));
	t.notes.emplace_back("A_re", fmt12(a.A_re));
	t.notes.emplace_back("A_im", fmt12(a.A_im));
	t.notes.emplace_back("r0", fmt12(a.r0));
	t.notes.emplace_back("m", fmt12(a.m));
}

void note_scan_args(Table& t, const ScanArgs& a) {
	t.notes.emplace_back("r_eff", fmt12(a.r_eff));
	note_scan_common(t, a);
}

} // namespace

int main(int argc, char** argv) {
	CLI::App app{"three-body loss rates near narrow two-body resonances"};
	app.require_subcommand(1);

	// ---- s0 ----------------------------------------------------------
	auto s0_out = std::make_shared<OutputOpts>();
	{
		auto* sub = app.add_subcommand("s0", "universal channel exponent at unitarity");
		add_output_opts(sub, *s0_out);
		sub->callback([s0_out] {
			Table t;
			t.cols = {"s0"};
			t.rows = {{num(zrp::efimov_root_unitarity())}};
			emit(t, *s0_out);
		});
	}

	// ---- reff-table ----------------------------------------------------
	auto rt_out = std::make_shared<OutputOpts>();
	auto rt_catalog = std::make_shared<std::string>("data/table1.csv");
	auto rt_lenient = std::make_shared<bool>(false);
	auto rt_narrow = std::make_shared<double>(10);
	auto rt_broad = std::make_shared<double>(1);
	{
		auto* sub = app.add_subcommand("reff-table",
		                               "effective ranges and widths from a resonance catalog");
		sub->add_option("--catalog", *rt_catalog, "CSV catalog path");
		sub->add_flag("--lenient", *rt_lenient, "skip malformed rows instead of failing");
		sub->add_option("--narrow-ratio", *rt_narrow, "|r_eff|/r0 at or above this is narrow");
		sub->add_option("--broad-ratio", *rt_broad, "|r_eff|/r0 at or below this is broad");
		add_output_opts(sub, *rt_out);
		sub->callback([=] {
			const auto cat = feshbach::load_catalog_file(*rt_catalog, *rt_lenient);
			Table t;
			t.cols = {"species", "position_G", "a_bg_au", "r_eff_au", "r0_au", "ratio",
			          "class"};
			t.notes.emplace_back("catalog", *rt_catalog);
			if (!cat.skipped_lines.empty()) {
				std::string s;
				for (int ln : cat.skipped_lines)
					s += (s.empty() ? "" : ";") + std::to_string(ln);
				t.notes.emplace_back("skipped_lines", s);
			}
			feshbach::ClassifyThresholds th{*rt_narrow, *rt_broad};
			for (const auto& e : cat.entries) {
				const double reff = feshbach::reff_from_resonance(e);
				const double ratio = std::abs(reff) / e.r0;
				t.rows.push_back({txt(e.species), num(e.position_G), num(e.a_bg),
				                  num(reff), num(e.r0), num(ratio),
				                  txt(feshbach::to_string(
				                      feshbach::classify(reff, e.r0, th)))});
			}
			emit(t, *rt_out);
		});
	}

	// ---- twobody-fit -----------------------------------------------------
	auto tf_out = std::make_shared<OutputOpts>();
	auto tf_kind = std::make_shared<std::string>("sech_barrier");
	auto tf = std::make_shared<twobody::PotentialModel>();
	auto tf_mu2 = std::make_shared<double>(0.5);
	auto tf_npts = std::make_shared<std::size_t>(5);
	{
		auto* sub = app.add_subcommand("twobody-fit",
		                               "scattering length and effective range of a model potential");
		sub->add_option("--kind", *tf_kind, "sech_barrier or morse_barrier")->required();
		sub->add_option("--D", tf->D, "well depth")->required();
		sub->add_option("--B", tf->B, "barrier height")->required();
		sub->add_option("--r0", tf->r0, "length scale")->required();
		sub->add_option("--mu2", *tf_mu2, "pair reduced mass");
		sub->add_option("--n-points", *tf_npts, "samples in the fit window");
		add_output_opts(sub, *tf_out);
		sub->callback([=] {
			tf->kind = parse_kind(*tf_kind);
			twobody::validate(*tf);
			Table t;
			t.cols = {"a_au", "r_eff_au", "residual", "k_lo_au", "k_hi_au", "n_excluded",
			          "n_bound"};
			t.notes.emplace_back("kind", *tf_kind);
			t.notes.emplace_back("D", fmt12(tf->D));
			t.notes.emplace_back("B", fmt12(tf->B));
			t.notes.emplace_back("r0", fmt12(tf->r0));
			t.notes.emplace_back("mu2", fmt12(*tf_mu2));
			if (tf->D == 0 && tf->B == 0) {
				// free potential: every phase shift vanishes identically
				t.rows.push_back({num(0), num(0), num(0), num(0), num(0), num(0), num(0)});
				emit(t, *tf_out);
				return;
			}
			const auto fit = twobody::fit_model_window(*tf, *tf_mu2, *tf_npts);
			const int nb = twobody::count_bound_states(*tf, *tf_mu2);
			t.rows.push_back({num(fit.a), num(fit.r_eff), num(fit.residual),
			                  num(fit.k_window.first), num(fit.k_window.second),
			                  num(fit.n_excluded), num(nb)});
			emit(t, *tf_out);
		});
	}

	// ---- tune -----------------------------------------------------------
	auto tn_out = std::make_shared<OutputOpts>();
	auto tn_kind = std::make_shared<std::string>("sech_barrier");
	auto tn_r0 = std::make_shared<double>(0);
	auto tn_a = std::make_shared<double>(std::numeric_limits<double>::infinity());
	auto tn_reff = std::make_shared<double>(0);
	auto tn_nb = std::make_shared<int>(1);
	auto tn_tol = std::make_shared<double>(1e-4);
	auto tn_mu2 = std::make_shared<double>(0.5);
	{
		auto* sub = app.add_subcommand("tune",
		                               "find (D, B) reproducing a target a and effective range");
		sub->add_option("--kind", *tn_kind, "sech_barrier or morse_barrier")->required();
		sub->add_option("--r0", *tn_r0, "length scale")->required();
		sub->add_option("--a", *tn_a, "target scattering length; inf for unitarity");
		sub->add_option("--r-eff", *tn_reff, "target effective range, negative")->required();
		sub->add_option("--n-bound", *tn_nb, "required two-body bound states");
		sub->add_option("--tol", *tn_tol, "relative tolerance on the targets");
		sub->add_option("--mu2", *tn_mu2, "pair reduced mass");
		add_output_opts(sub, *tn_out);
		sub->callback([=] {
			const auto res = twobody::tune_to_target(parse_kind(*tn_kind), *tn_r0, *tn_a,
			                                         *tn_reff, *tn_nb, *tn_tol, *tn_mu2);
			Table t;
			t.cols = {"D_au", "B_au", "a_au", "r_eff_au", "n_bound"};
			t.notes.emplace_back("kind", *tn_kind);
			t.notes.emplace_back("target_a", fmt12(*tn_a));
			t.notes.emplace_back("target_r_eff", fmt12(*tn_reff));
			t.rows.push_back({num(res.model.D), num(res.model.B), num(res.a),
			                  num(res.r_eff),
			                  num(twobody::count_bound_states(res.model, *tn_mu2))});
			emit(t, *tn_out);
		});
	}

	// ---- zrp-curve -------------------------------------------------------
	auto zc_out = std::make_shared<OutputOpts>();
	auto zc_reff = std::make_shared<double>(0);
	auto zc_a = std::make_shared<double>(std::numeric_limits<double>::infinity());
	auto zc_rlo = std::make_shared<double>(0);
	auto zc_rhi = std::make_shared<double>(0);
	auto zc_n = std::make_shared<std::size_t>(200);
	auto zc_m = std::make_shared<double>(1);
	auto zc_fit = std::make_shared<bool>(false);
	auto zc_wlo = std::make_shared<double>(0);
	auto zc_whi = std::make_shared<double>(0);
	auto zc_tol = std::make_shared<double>(0.02);
	{
		auto* sub = app.add_subcommand("zrp-curve",
		                               "channel exponent and adiabatic potential against hyperradius");
		sub->add_option("--r-eff", *zc_reff, "effective range, negative")->required();
		sub->add_option("--a", *zc_a, "scattering length; inf for unitarity");
		sub->add_option("--r-lo", *zc_rlo, "smallest hyperradius; 0 = 1e-3*|r_eff|");
		sub->add_option("--r-hi", *zc_rhi, "largest hyperradius; 0 = 1e2*|r_eff|");
		sub->add_option("--n", *zc_n, "grid points, log spaced");
		sub->add_option("--m", *zc_m, "atom mass (sets mu = m/sqrt(3) for the potential)");
		sub->add_flag("--fit-c0", *zc_fit, "fit the linear small-R coefficient instead");
		sub->add_option("--window-lo", *zc_wlo, "fit window start; 0 = 1e-3*|r_eff|");
		sub->add_option("--window-hi", *zc_whi, "fit window end; 0 = 1e-2*|r_eff|");
		sub->add_option("--tol", *zc_tol, "residual threshold for the fit");
		add_output_opts(sub, *zc_out);
		sub->callback([=] {
			Table t;
			t.notes.emplace_back("r_eff", fmt12(*zc_reff));
			t.notes.emplace_back("a", fmt12(*zc_a));
			if (*zc_fit) {
				const auto fit =
				    zrp::fit_c0(*zc_reff, {*zc_wlo, *zc_whi}, 24, *zc_tol);
				t.cols = {"c0", "residual", "R_lo_au", "R_hi_au"};
				t.rows.push_back(
				    {num(fit.c0), num(fit.residual), num(fit.R_lo), num(fit.R_hi)});
				emit(t, *zc_out);
				return;
			}
			const double mag = std::abs(*zc_reff);
			const double lo = *zc_rlo > 0 ? *zc_rlo : 1e-3 * mag;
			const double hi = *zc_rhi > 0 ? *zc_rhi : 1e2 * mag;
			const double mu = *zc_m / std::sqrt(3.0);
			t.cols = {"R_au", "s_squared", "U_au"};
			for (const auto& ce :
			     zrp::solve_s_scan(logspace(lo, hi, *zc_n), *zc_a, *zc_reff)) {
				const double U = -(ce.s_squared + 0.25) / (2 * mu * ce.R * ce.R);
				t.rows.push_back({num(ce.R), num(ce.s_squared), num(U)});
			}
			emit(t, *zc_out);
		});
	}

	// ---- rates-scan -------------------------------------------------------
	auto rs_out = std::make_shared<OutputOpts>();
	auto rs_args = std::make_shared<ScanArgs>();
	{
		auto* sub = app.add_subcommand("rates-scan", "loss rate along a scattering-length grid");
		add_scan_opts(sub, *rs_args, true);
		add_output_opts(sub, *rs_out);
		sub->callback([=] {
			const auto spec = make_scan_spec(*rs_args);
			const auto engine = rs_args->engine == "numeric" ? scan::Engine::numeric
			                                                 : scan::Engine::analytic;
			Table t;
			t.cols = {"a_au", "abs_a_over_reff", "rate_au", "scaled", "regime"};
			note_scan_args(t, *rs_args);
			t.notes.emplace_back("engine", rs_args->engine);
			for (const auto& row : scan::scan_rates(spec, engine))
				t.rows.push_back({num(row.a), num(row.ratio), num(row.rate),
				                  num(row.scaled), txt(row.regime_ok ? "ok" : "edge")});
			emit(t, *rs_out);
		});
	}

	// ---- fit-alpha-beta -----------------------------------------------------
	auto fb_out = std::make_shared<OutputOpts>();
	auto fb_args = std::make_shared<ScanArgs>();
	{
		auto* sub = app.add_subcommand("fit-alpha-beta",
		                               "recover matching radii from rate-peak positions");
		add_scan_opts(sub, *fb_args, true, true);
		add_output_opts(sub, *fb_out);
		sub->callback([=] {
			std::vector<scan::ScanSpec> specs;
			std::string reffs;
			for (double re : fb_args->r_eff_list) {
				ScanArgs one = *fb_args;
				one.r_eff = re;
				specs.push_back(make_scan_spec(one));
				reffs += (reffs.empty() ? "" : ";") + fmt12(re);
			}
			const auto engine = fb_args->engine == "numeric" ? scan::Engine::numeric
			                                                 : scan::Engine::analytic;
			const auto fit = scan::fit_alpha_beta(specs, engine);
			Table t;
			t.cols = {"alpha", "beta", "residual", "n_peaks", "peaks_au"};
			t.notes.emplace_back("r_eff", reffs);
			note_scan_common(t, *fb_args);
			t.notes.emplace_back("engine", fb_args->engine);
			std::string peaks;
			for (double p : fit.peak_positions)
				peaks += (peaks.empty() ? "" : ";") + fmt12(p);
			t.rows.push_back({num(fit.alpha_fit), num(fit.beta_fit), num(fit.residual),
			                  num(double(fit.peak_positions.size())), txt(peaks)});
			emit(t, *fb_out);
		});
	}

	// ---- threshold-check ----------------------------------------------------
	auto tc_out = std::make_shared<OutputOpts>();
	auto tc_args = std::make_shared<ScanArgs>();
	auto tc_a = std::make_shared<double>(0);
	auto tc_klo = std::make_shared<double>(1e-4);
	auto tc_khi = std::make_shared<double>(1e-3);
	auto tc_n = std::make_shared<std::size_t>(8);
	auto tc_tol = std::make_shared<double>(0.05);
	{
		auto* sub = app.add_subcommand("threshold-check",
		                               "low-energy exponent of the inelastic probability");
		add_scan_opts(sub, *tc_args, false);
		sub->add_option("--a", *tc_a, "scattering length, signed")->required();
		sub->add_option("--k-lo-frac", *tc_klo, "lowest k in units of 1/(beta*|a|)");
		sub->add_option("--k-hi-frac", *tc_khi, "highest k in units of 1/(beta*|a|)");
		sub->add_option("--n", *tc_n, "wavenumber count");
		sub->add_option("--tol", *tc_tol, "power-law fit residual threshold");
		add_output_opts(sub, *tc_out);
		sub->callback([=] {
			channel::ThreeBodySystem sys;
			double expected = 1;
			switch (parse_system(tc_args->system)) {
			case scan::ScanSystem::boson_recomb_neg_a:
				sys = channel::ThreeBodySystem::boson_recomb;
				expected = 4;
				break;
			case scan::ScanSystem::boson_relax_pos_a:
				sys = channel::ThreeBodySystem::boson_relax;
				break;
			default: sys = channel::ThreeBodySystem::fermion_relax; break;
			}
			const double mu = tc_args->m / std::sqrt(3.0);
			const double mu2 = tc_args->m / 2;
			const double r0 = tc_args->r0 > 0 ? tc_args->r0
			                                  : 1e-3 * std::abs(tc_args->r_eff);
			const auto ch = channel::build_channel(
			    sys, *tc_a, tc_args->r_eff, tc_args->alpha, tc_args->beta,
			    {tc_args->A_re, tc_args->A_im}, mu, mu2, r0);
			const double scale = 1.0 / (tc_args->beta * std::abs(*tc_a));
			const auto fit = channel::threshold_scan(
			    ch, logspace(*tc_klo * scale, *tc_khi * scale, *tc_n), {}, *tc_tol);
			Table t;
			t.cols = {"exponent", "expected", "residual"};
			note_scan_args(t, *tc_args);
			t.rows.push_back({num(fit.exponent), num(expected), num(fit.residual)});
			emit(t, *tc_out);
		});
	}

	try {
		std::vector<std::string> args(argv + 1, argv + argc);
		args = expand_config_args(args);
		std::reverse(args.begin(), args.end()); // the vector overload wants it reversed
		app.parse(std::move(args));
	} catch (const CLI::ParseError& e) {
		if (e.get_exit_code() == 0) return app.exit(e); // help and friends
		app.exit(e);
		return 2;
	} catch (const physics_error& e) {
		std::cerr << "error: " << e.what() << "\n";
		return 3;
	} catch (const numeric_error& e) {
		std::cerr << "error: " << e.what() << "\n";
		return 4;
	} catch (const std::invalid_argument& e) {
		std::cerr << "error: " << e.what() << "\n";
		return 2;
	} catch (const std::exception& e) {
		std::cerr << "error: " << e.what() << "\n";
		return 4;
	}
	return 0;
}
