#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include <narrow3b/constants.hpp>
#include <narrow3b/numerics.hpp>
#include <narrow3b/rates_analytic.hpp>
#include <narrow3b/scan.hpp>

using namespace narrow3b;
using namespace narrow3b::scan;

namespace {

ScanSpec relax_spec() {
	ScanSpec s;
	s.system = ScanSystem::boson_relax_pos_a;
	s.r_eff = -1e3;
	s.A = {10, 10};
	s.m = 1;
	s.a_grid = logspace(1e5, 1e8, 400);
	return s;
}

} // namespace

TEST_CASE("scan rows carry consistent derived columns") {
	ScanSpec s = relax_spec();
	s.a_grid = logspace(1e5, 1e6, 5);
	s.r0 = 10;
	const auto rows = scan_rates(s, Engine::analytic);
	REQUIRE(rows.size() == 5);
	for (const auto& row : rows) {
		CHECK(row.ratio == Catch::Approx(std::abs(row.a / s.r_eff)).epsilon(1e-14));
		CHECK(row.rate > 0);
		CHECK(row.scaled ==
		      Catch::Approx(row.rate * s.m / std::abs(row.a)).epsilon(1e-14));
		CHECK(row.rate == Catch::Approx(rate_analytic_at(s, row.a)).epsilon(1e-14));
		CHECK(row.regime_ok);
	}
	s.a_grid.clear();
	CHECK_THROWS_AS(scan_rates(s, Engine::analytic), std::invalid_argument);
}

TEST_CASE("recombination rows scale by the fourth power") {
	ScanSpec s = relax_spec();
	s.system = ScanSystem::boson_recomb_neg_a;
	s.a_grid = {-2e5, -5e5};
	const auto rows = scan_rates(s, Engine::analytic);
	for (const auto& row : rows) {
		CHECK(row.a < 0);
		CHECK(row.scaled ==
		      Catch::Approx(row.rate * s.m / std::pow(std::abs(row.a), 4)).epsilon(1e-14));
	}
}

TEST_CASE("peaks sit on the analytic resonance condition, spaced by one period") {
	const ScanSpec s = relax_spec();
	const auto peaks = find_peaks(s, Engine::analytic);
	REQUIRE(peaks.size() >= 2);
	const double s0 = constants::s0_efimov;
	const double Phi = rates::phi_narrow(s.A, s.r_eff, s.alpha, s0);
	const double phi = rates::varphi(s.alpha, s.beta, s0, rates::phi0(0, s0));
	for (double ap : peaks) {
		const double v = s0 * std::log(ap / std::abs(s.r_eff)) + Phi + phi;
		const double frac = std::abs(std::remainder(v, constants::pi));
		CHECK(frac < 1e-3);
	}
	const double period = std::exp(constants::pi / s0);
	for (std::size_t i = 1; i < peaks.size(); ++i)
		CHECK(peaks[i] / peaks[i - 1] == Catch::Approx(period).epsilon(1e-3));

	ScanSpec coarse = s;
	coarse.a_grid = logspace(1e5, 1e6, 5);
	CHECK_THROWS_AS(find_peaks(coarse, Engine::analytic), std::invalid_argument);
}

TEST_CASE("planted matching radii are recovered from two curves") {
	ScanSpec s1 = relax_spec();
	s1.alpha = 1.3;
	s1.beta = 0.8;
	s1.A = {2000, 5};
	ScanSpec s2 = s1;
	s2.r_eff = -3e3;
	const auto fit = fit_alpha_beta({s1, s2}, Engine::analytic);
	CHECK(fit.alpha_fit == Catch::Approx(1.3).epsilon(1e-3));
	CHECK(fit.beta_fit == Catch::Approx(0.8).epsilon(1e-3));
	CHECK(fit.residual < 1e-3);
	CHECK(fit.peak_positions.size() >= 4);
}

TEST_CASE("a single curve cannot pin alpha unless the phase is alpha-free") {
	ScanSpec s = relax_spec();
	s.A = {2000, 5};
	CHECK_THROWS_AS(fit_alpha_beta(s, Engine::analytic), physics_error);

	// Re A = 0 drops alpha from the phase; convention alpha = 1, beta meaningful
	s = relax_spec();
	s.beta = 0.8;
	s.A = {0, 10};
	const auto fit = fit_alpha_beta(s, Engine::analytic);
	CHECK(fit.alpha_fit == 1.0);
	CHECK(fit.beta_fit == Catch::Approx(0.8).epsilon(1e-3));
}

TEST_CASE("fit rejects inconsistent or fermionic inputs") {
	ScanSpec s = relax_spec();
	ScanSpec other = s;
	other.A = {1, 10};
	CHECK_THROWS_AS(fit_alpha_beta({s, other}, Engine::analytic), std::invalid_argument);
	CHECK_THROWS_AS(fit_alpha_beta(std::vector<ScanSpec>{}, Engine::analytic),
	                std::invalid_argument);
	s.system = ScanSystem::fermion_relax;
	CHECK_THROWS_AS(fit_alpha_beta(s, Engine::analytic), physics_error);

	// fermion rates are monotone in a, so no peaks exist to fit
	ScanSpec f = relax_spec();
	f.system = ScanSystem::fermion_relax;
	f.A = {0, 10};
	CHECK_THROWS_AS(fit_alpha_beta(f, Engine::analytic), physics_error);
}

TEST_CASE("numeric engine reproduces the analytic curve on a sparse grid") {
	ScanSpec s = relax_spec();
	s.a_grid = logspace(2e5, 2e6, 4);
	s.r0 = 1.0;
	const auto ana = scan_rates(s, Engine::analytic);
	const auto num = scan_rates(s, Engine::numeric);
	REQUIRE(ana.size() == num.size());
	for (std::size_t i = 0; i < ana.size(); ++i)
		CHECK(num[i].rate == Catch::Approx(ana[i].rate).epsilon(0.01));
}

TEST_CASE("fermion spec swaps the channel exponent") {
	ScanSpec s = relax_spec();
	s.system = ScanSystem::fermion_relax;
	s.A = {0, 10};
	const auto sp = narrow_spec_at(s, 1e5);
	CHECK(sp.s0 == constants::p0_fermion);
	CHECK(sp.l == 0);
	CHECK(scaled_exponent(s.system) == 1.0);
	CHECK(scaled_exponent(ScanSystem::boson_recomb_neg_a) == 4.0);
	// the numeric route must agree for fermions too
	const double ana = rate_analytic_at(s, 1e5);
	s.r0 = 1.0;
	const double num = rate_numeric_at(s, 1e5);
	CHECK(num == Catch::Approx(ana).epsilon(0.01));
}
