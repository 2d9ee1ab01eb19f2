// Prints vibrational relaxation rates across a scattering-length sweep,
// closed form next to the channel integration, so the log-periodic pattern
// and the agreement between the two engines are visible at a glance.
#include <cstdio>

#include <narrow3b/narrow3b.hpp>

using namespace narrow3b;

int main() {
	scan::ScanSpec s;
	s.system = scan::ScanSystem::boson_relax_pos_a;
	s.r_eff = -1e3;
	s.A = {10, 10};
	s.r0 = 1;
	s.m = 1;
	s.a_grid = logspace(3e5, 3e7, 25);

	std::printf("# boson relaxation, r_eff=%g, A=(%g,%g), atomic units\n",
	            s.r_eff, s.A.A_re, s.A.A_im);
	std::printf("%-14s %-14s %-14s %-10s\n", "a", "V_analytic", "V_numeric", "ratio");
	for (double a : s.a_grid) {
		const double va = scan::rate_analytic_at(s, a);
		const double vn = scan::rate_numeric_at(s, a);
		std::printf("%-14.6g %-14.6g %-14.6g %-10.6f\n", a, va, vn, vn / va);
	}
	return 0;
}
