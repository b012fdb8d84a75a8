#pragma once

namespace raretrend {

// Inverse of the standard normal CDF. Rational approximation (Acklam's
// coefficients) polished by one Halley step; absolute error is below 1e-9
// across (0, 1). Throws std::domain_error outside the open unit interval.
double normal_quantile(double p);

}  // namespace raretrend
