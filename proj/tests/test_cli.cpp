#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include <json.hpp>

// End-to-end checks of the installed binary: output formats, option handling,
// config files, and the exit-code contract (2 usage, 3 physics, 4 numerics).

namespace {

struct CliRun {
	int code = -1;
	std::string out;
};

CliRun run_cli(const std::string& args) {
	CliRun r;
	const std::string cmd = std::string(NARROW3B_CLI_PATH) + " " + args + " 2>/dev/null";
	FILE* p = ::popen(cmd.c_str(), "r");
	if (!p) return r;
	char buf[4096];
	std::size_t got;
	while ((got = std::fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, got);
	const int rc = ::pclose(p);
	r.code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
	return r;
}

// CSV body parsed into rows of fields, annotation lines skipped
std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
	std::vector<std::vector<std::string>> rows;
	std::istringstream in(text);
	std::string line;
	while (std::getline(in, line)) {
		if (line.empty() || line[0] == '#') continue;
		std::vector<std::string> fields;
		std::string cur;
		for (char c : line) {
			if (c == ',') {
				fields.push_back(cur);
				cur.clear();
			} else {
				cur += c;
			}
		}
		fields.push_back(cur);
		rows.push_back(std::move(fields));
	}
	return rows;
}

const std::string catalog_arg = std::string("--catalog ") + NARROW3B_DATA_DIR + "/table1.csv";

} // namespace

TEST_CASE("s0 prints the universal exponent in both formats") {
	const CliRun csv = run_cli("s0");
	REQUIRE(csv.code == 0);
	const auto rows = parse_csv(csv.out);
	REQUIRE(rows.size() == 2);
	CHECK(rows[0][0] == "s0");
	CHECK(std::stod(rows[1][0]) == Catch::Approx(1.0062378251).epsilon(1e-9));

	const CliRun js = run_cli("s0 --format json");
	REQUIRE(js.code == 0);
	const auto j = nlohmann::json::parse(js.out);
	REQUIRE(j.contains("rows"));
	CHECK(j["rows"][0]["s0"].get<double>() == Catch::Approx(1.0062378251).epsilon(1e-9));
}

TEST_CASE("reff-table reproduces the bundled catalog") {
	const CliRun r = run_cli("reff-table " + catalog_arg);
	REQUIRE(r.code == 0);
	const auto rows = parse_csv(r.out);
	REQUIRE(rows.size() == 16); // header + 15 resonances
	REQUIRE(rows[0].size() == 7);
	CHECK(rows[0][3] == "r_eff_au");
	CHECK(rows[1][0] == "6Li");
	CHECK(std::stod(rows[1][3]) == Catch::Approx(-71455.82545950053).epsilon(1e-10));
	CHECK(rows[1][6] == "narrow");

	const CliRun js = run_cli("reff-table --format json " + catalog_arg);
	REQUIRE(js.code == 0);
	const auto j = nlohmann::json::parse(js.out);
	REQUIRE(j["rows"].size() == 15);
	CHECK(j["rows"][0]["species"].get<std::string>() == "6Li");
	CHECK(j["rows"][0]["r_eff_au"].get<double>() ==
	      Catch::Approx(std::stod(rows[1][3])).epsilon(1e-14));
	CHECK(run_cli("reff-table --catalog /no/such/file.csv").code == 2);
}

TEST_CASE("twobody-fit handles the free potential and bad geometry") {
	const CliRun r =
	    run_cli("twobody-fit --kind sech_barrier --D 0 --B 0 --r0 1");
	REQUIRE(r.code == 0);
	const auto rows = parse_csv(r.out);
	REQUIRE(rows.size() == 2);
	CHECK(std::stod(rows[1][0]) == 0.0);
	CHECK(run_cli("twobody-fit --kind sech_barrier --D 1 --B 0 --r0 0").code == 2);
	CHECK(run_cli("twobody-fit --kind bogus --D 1 --B 0 --r0 1").code == 2);
}

TEST_CASE("zrp-curve fits the linear short-distance coefficient") {
	const CliRun r = run_cli("zrp-curve --r-eff=-1 --fit-c0");
	REQUIRE(r.code == 0);
	const auto rows = parse_csv(r.out);
	REQUIRE(rows.size() == 2);
	CHECK(rows[0][0] == "c0");
	const double c0 = std::stod(rows[1][0]);
	CHECK(c0 == Catch::Approx(1.68).margin(0.05));
	CHECK(std::stod(rows[1][1]) < 0.02);
}

TEST_CASE("zrp-curve tabulates the adiabatic channel") {
	const CliRun r = run_cli("zrp-curve --r-eff=-1000 --n 5");
	REQUIRE(r.code == 0);
	const auto rows = parse_csv(r.out);
	REQUIRE(rows.size() == 6);
	CHECK(rows[0][0] == "R_au");
	for (std::size_t i = 1; i < rows.size(); ++i) {
		CHECK(std::stod(rows[i][1]) > 0); // s^2 on the lowest branch
		CHECK(std::stod(rows[i][2]) < 0); // attractive channel
	}
}

TEST_CASE("rates-scan output is deterministic and format-independent") {
	const std::string args =
	    "rates-scan --system boson_relax_pos_a --a-lo 2e5 --a-hi 2e6 --n 4 "
	    "--r-eff=-1000 --A-re 10 --A-im 10 --m 1 --annotate";
	const CliRun first = run_cli(args);
	const CliRun second = run_cli(args);
	REQUIRE(first.code == 0);
	CHECK(first.out == second.out);

	const auto rows = parse_csv(first.out);
	REQUIRE(rows.size() == 5);
	const CliRun js = run_cli(args + " --format json");
	REQUIRE(js.code == 0);
	const auto j = nlohmann::json::parse(js.out);
	CHECK(j["meta"]["r_eff"].get<std::string>() == "-1000");
	REQUIRE(j["rows"].size() == 4);
	for (std::size_t i = 0; i < 4; ++i) {
		CHECK(j["rows"][i]["rate_au"].get<double>() == std::stod(rows[i + 1][2]));
		CHECK(j["rows"][i]["regime"].get<std::string>() == rows[i + 1][4]);
	}
}

TEST_CASE("output lands in the requested file") {
	const std::string path = "/tmp/narrow3b_cli_out_test.csv";
	std::remove(path.c_str());
	const CliRun r = run_cli("s0 --out " + path);
	REQUIRE(r.code == 0);
	CHECK(r.out.empty());
	std::ifstream f(path);
	REQUIRE(f.good());
	std::stringstream buf;
	buf << f.rdbuf();
	CHECK(buf.str() == run_cli("s0").out);
	std::remove(path.c_str());
}

TEST_CASE("config file presets options and flags override it") {
	const std::string path = "/tmp/narrow3b_cli_cfg_test.ini";
	{
		std::ofstream cfg(path);
		cfg << "system=boson_relax_pos_a\n"
		       "a-lo=1e5\n"
		       "a-hi=1e6\n"
		       "n=3\n"
		       "r-eff=-1000\n"
		       "A-re=10\n"
		       "A-im=10\n"
		       "m=1\n";
	}
	const CliRun base = run_cli("rates-scan --config " + path);
	REQUIRE(base.code == 0);
	CHECK(parse_csv(base.out).size() == 4); // header + 3 points

	const CliRun widened = run_cli("rates-scan --config " + path + " --n 5");
	REQUIRE(widened.code == 0);
	CHECK(parse_csv(widened.out).size() == 6); // flag wins over the file
	std::remove(path.c_str());
}

TEST_CASE("fit-alpha-beta recovers planted radii from two curves") {
	const CliRun r = run_cli(
	    "fit-alpha-beta --system boson_relax_pos_a --a-lo 1e5 --a-hi 1e8 --n 400 "
	    "--r-eff=-1000,-3000 --alpha 1.3 --beta 0.8 --A-re 2000 --A-im 5 --m 1");
	REQUIRE(r.code == 0);
	const auto rows = parse_csv(r.out);
	REQUIRE(rows.size() == 2);
	CHECK(std::stod(rows[1][0]) == Catch::Approx(1.3).epsilon(1e-3));
	CHECK(std::stod(rows[1][1]) == Catch::Approx(0.8).epsilon(1e-3));

	// one curve with Re A != 0 leaves alpha unconstrained: physics error
	const CliRun deg = run_cli(
	    "fit-alpha-beta --system boson_relax_pos_a --a-lo 1e5 --a-hi 1e8 --n 400 "
	    "--r-eff=-1000 --alpha 1.3 --beta 0.8 --A-re 2000 --A-im 5 --m 1");
	CHECK(deg.code == 3);

	// too coarse a grid to bracket peaks: usage error
	const CliRun coarse = run_cli(
	    "fit-alpha-beta --system boson_relax_pos_a --a-lo 1e5 --a-hi 1e8 --n 5 "
	    "--r-eff=-1000,-3000 --A-re 2000 --A-im 5 --m 1");
	CHECK(coarse.code == 2);
}

TEST_CASE("threshold-check reports the low-energy exponent") {
	const CliRun relax = run_cli(
	    "threshold-check --system boson_relax_pos_a --a 1e5 --r-eff=-1000 "
	    "--A-re 10 --A-im 10 --m 1");
	REQUIRE(relax.code == 0);
	auto rows = parse_csv(relax.out);
	REQUIRE(rows.size() == 2);
	CHECK(std::stod(rows[1][0]) == Catch::Approx(1.0).epsilon(0.02));
	CHECK(std::stod(rows[1][1]) == 1.0);

	const CliRun recomb = run_cli(
	    "threshold-check --system boson_recomb_neg_a --a=-1e5 --r-eff=-1000 "
	    "--A-re 10 --A-im 10 --m 1");
	REQUIRE(recomb.code == 0);
	rows = parse_csv(recomb.out);
	CHECK(std::stod(rows[1][0]) == Catch::Approx(4.0).epsilon(0.02));
	CHECK(std::stod(rows[1][1]) == 4.0);

	// pushing the window against k*beta*|a| ~ 1 breaks the pure power law
	const CliRun broken = run_cli(
	    "threshold-check --system boson_relax_pos_a --a 1e5 --r-eff=-1000 "
	    "--A-re 10 --A-im 10 --m 1 --k-lo-frac 1e-4 --k-hi-frac 0.9 --tol 0.01");
	CHECK(broken.code == 4);
}

TEST_CASE("usage and physics failures map to distinct exit codes") {
	CHECK(run_cli("--help").code == 0);
	CHECK(run_cli("s0 --help").code == 0);
	CHECK(run_cli("").code == 2);          // a subcommand is mandatory
	CHECK(run_cli("frobnicate").code == 2);
	CHECK(run_cli("s0 --no-such-flag").code == 2);
	CHECK(run_cli("tune --kind sech_barrier --r0 50 --r-eff 100").code == 3);
}
