#pragma once

namespace fkdvb {

/// Euler Gamma function.
double gamma_fn(double x);

/// Normalisation of the one-sided fractional derivative, 1 / Gamma(1 - alpha).
double dalpha_constant(double alpha);

/// e^x * Gamma(a, x) for x >= 0, where Gamma(a, x) is the (non-normalised)
/// upper incomplete gamma function. Finite for all x >= 0 when a < 1.
double scaled_upper_gamma(double a, double x);

/// k^p - (k-1)^p for k >= 1, without cancellation for large k.
double power_difference(double k, double p);

}  // namespace fkdvb
