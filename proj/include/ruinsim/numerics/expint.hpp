#pragma once

namespace ruinsim {

/// Exponential integral Ei(x) (Cauchy principal value) for x > 0.
///
/// Throws DomainError for x <= 0 and OverflowError once e^x/x leaves the
/// double range; callers that only need e^{-x} Ei(x) should use expi_scaled.
double expi(double x);

/// e^{-x} Ei(x) for x > 0, finite for every representable x.
double expi_scaled(double x);

}  // namespace ruinsim
