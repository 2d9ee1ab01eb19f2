#pragma once
#include <stdexcept>

namespace narrow3b {

// Input is outside the physical regime the routine is valid in.
struct physics_error : std::runtime_error {
	using std::runtime_error::runtime_error;
};

// An algorithm failed to converge or lost precision.
struct numeric_error : std::runtime_error {
	using std::runtime_error::runtime_error;
};

} // namespace narrow3b
