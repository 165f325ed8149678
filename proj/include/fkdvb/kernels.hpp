#pragma once

// Quadratic-cost history sums shared by the fractional operator and the
// quadratic form. Each has a serial reference and an OpenMP version that
// must agree with it to rounding; the library calls the OpenMP versions.

#include <span>

namespace fkdvb::kernels {

/// out[i] = sum_{k=0}^{i-1} b[k] * (f[i-k] - f[i-k-1]); out[0] = 0.
/// Requires b.size() >= f.size() - 1 and out.size() == f.size().
void l1_history_serial(std::span<const double> f, std::span<const double> b,
                       std::span<double> out);
void l1_history_omp(std::span<const double> f, std::span<const double> b, std::span<double> out);

/// out[i] = sum_{k=1}^{i} (a[k] * d[i-k] + c[k] * d[i-k+1]); out[0] = 0.
/// Product-integration weights for a piecewise-linear integrand; a and c are
/// indexed from 1 (entry 0 unused).
void linear_history_serial(std::span<const double> d, std::span<const double> a,
                           std::span<const double> c, std::span<double> out);
void linear_history_omp(std::span<const double> d, std::span<const double> a,
                        std::span<const double> c, std::span<double> out);

}  // namespace fkdvb::kernels
