#pragma once

// Umbrella header: three-body inelastic rates near narrow two-body resonances.

#include "constants.hpp"
#include "errors.hpp"
#include "feshbach.hpp"
#include "numerics.hpp"
#include "rates_analytic.hpp"
#include "rates_numeric.hpp"
#include "scan.hpp"
#include "twobody.hpp"
#include "units.hpp"
#include "zrp.hpp"
