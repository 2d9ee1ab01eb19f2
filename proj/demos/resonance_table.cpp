// Classifies the bundled resonance catalog by effective range against the
// van der Waals length of each species.
#include <cstdio>
#include <cstdlib>

#include <narrow3b/narrow3b.hpp>

using namespace narrow3b;

int main(int argc, char** argv) {
	const char* path = argc > 1 ? argv[1] : NARROW3B_DATA_DIR "/table1.csv";
	feshbach::Catalog cat;
	try {
		cat = feshbach::load_catalog_file(path);
	} catch (const std::exception& e) {
		std::fprintf(stderr, "%s\n", e.what());
		return 2;
	}
	std::printf("%-10s %-10s %-12s %-8s %-10s %s\n", "species", "B0 [G]",
	            "r_eff [au]", "r0 [au]", "|reff|/r0", "class");
	for (const auto& e : cat.entries) {
		const double reff = feshbach::reff_from_resonance(e);
		const auto cls = feshbach::classify(reff, e.r0);
		std::printf("%-10s %-10g %-12.4g %-8g %-10.3g %s\n", e.species.c_str(),
		            e.position_G, reff, e.r0, std::abs(reff) / e.r0,
		            feshbach::to_string(cls));
	}
	return 0;
}
