#include <catch2/catch_amalgamated.hpp>

#include <limits>

#include <narrow3b/units.hpp>

using namespace narrow3b;

TEST_CASE("mass conversion round-trips") {
	const double m = amu_to_au(86.909180531);
	CHECK(m == Catch::Approx(86.909180531 * 1822.888486209).epsilon(1e-14));
	CHECK(au_to_amu(m) == Catch::Approx(86.909180531).epsilon(1e-14));
}

TEST_CASE("mass conversion rejects nonpositive and nonfinite input") {
	CHECK_THROWS_AS(amu_to_au(0), std::invalid_argument);
	CHECK_THROWS_AS(amu_to_au(-2), std::invalid_argument);
	CHECK_THROWS_AS(amu_to_au(std::numeric_limits<double>::quiet_NaN()), std::invalid_argument);
	CHECK_THROWS_AS(au_to_amu(0), std::invalid_argument);
}

TEST_CASE("moment-field product is bilinear and sign preserving") {
	const double p = moment_field_product_to_au(2.0, 0.1);
	CHECK(p == Catch::Approx(2.0 * 0.5 * 0.1 * 1e-4 / 2.35051756758e5).epsilon(1e-14));
	CHECK(moment_field_product_to_au(-2.0, 0.1) == Catch::Approx(-p).epsilon(1e-14));
	CHECK(moment_field_product_to_au(4.0, 0.1) == Catch::Approx(2 * p).epsilon(1e-14));
	CHECK(moment_field_product_to_au(2.0, 0.2) == Catch::Approx(2 * p).epsilon(1e-14));
	CHECK(moment_field_product_from_au(p) == Catch::Approx(0.2).epsilon(1e-14));
}

TEST_CASE("moment-field product rejects nonfinite input") {
	CHECK_THROWS_AS(moment_field_product_to_au(std::numeric_limits<double>::infinity(), 1),
	                std::invalid_argument);
	CHECK_THROWS_AS(moment_field_product_to_au(1, std::numeric_limits<double>::quiet_NaN()),
	                std::invalid_argument);
}

TEST_CASE("constants can be overridden consistently") {
	PhysicalConstants pc;
	pc.amu_in_electron_masses = 1800.0;
	CHECK(amu_to_au(2.0, pc) == Catch::Approx(3600.0).epsilon(1e-14));
	CHECK(au_to_amu(3600.0, pc) == Catch::Approx(2.0).epsilon(1e-14));
}
