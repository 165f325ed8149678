#pragma once

// Characteristic function P(z) = tau z^2 + z^a - h'(phi_-) of the equation
// linearised about the left far-field state, and its roots on the principal
// branch (cut along the negative real axis).

#include <complex>
#include <optional>
#include <vector>

#include "fkdvb/fracops.hpp"

namespace fkdvb {

using cplx = std::complex<double>;

/// Far-field states and dispersion of a travelling wave. The speed and the
/// slope h'(phi_-) are derived: c = phi_+ + phi_-, h' = phi_- - phi_+ > 0.
class WaveParams {
 public:
  WaveParams(double phi_minus, double phi_plus, double tau, FracParams frac);
  /// Parameters with phi_- = hprime, phi_+ = 0 (only h' enters P).
  static WaveParams from_hprime(double tau, double alpha, double hprime);

  double phi_minus() const noexcept { return phi_minus_; }
  double phi_plus() const noexcept { return phi_plus_; }
  double tau() const noexcept { return tau_; }
  const FracParams& frac() const noexcept { return frac_; }
  double alpha() const noexcept { return frac_.alpha(); }
  double c() const noexcept { return c_; }
  double hprime() const noexcept { return hprime_; }

  /// h(phi) = -c (phi - phi_-) + phi^2 - phi_-^2 and its derivative.
  double flux(double phi) const noexcept {
    return -c_ * (phi - phi_minus_) + phi * phi - phi_minus_ * phi_minus_;
  }
  double flux_slope(double phi) const noexcept { return -c_ + 2.0 * phi; }

 private:
  double phi_minus_;
  double phi_plus_;
  double tau_;
  FracParams frac_;
  double c_;
  double hprime_;
};

/// Roots of P: the positive real root and, for tau > 0, the conjugate pair
/// (stored as the member with positive imaginary part).
struct CharRoots {
  double lambda = 0.0;
  std::optional<cplx> upper;
  double lambda_residual = 0.0;
  double pair_residual = 0.0;

  std::optional<cplx> lower() const {
    if (!upper) return std::nullopt;
    return std::conj(*upper);
  }
};

/// z^a on the principal branch; 0^a = 0. Throws BranchCutError on (-inf, 0).
cplx principal_power(cplx z, double a);

cplx eval_char(cplx z, const WaveParams& w);
cplx eval_char_derivative(cplx z, const WaveParams& w);

/// The unique positive zero of P (bracketing, bisection, one Newton polish).
double find_lambda(const WaveParams& w);

/// The conjugate pair of zeros with negative real part (tau > 0 only).
/// Returns {upper, lower}.
std::pair<cplx, cplx> find_complex_pair(const WaveParams& w);

/// Positive root plus (tau > 0) the pair, with residuals.
CharRoots find_roots(const WaveParams& w);

/// Axis-aligned rectangle. When it straddles the negative real axis the
/// contour is indented around the cut by legs at Im z = +/- eps.
struct Rectangle {
  double re_min;
  double re_max;
  double im_min;
  double im_max;
};

/// Number of zeros of P inside the rectangle (cut excluded), from the
/// winding number of P along the boundary. Sampling doubles until every
/// step changes arg P by less than pi/2.
int count_roots_argument_principle(const WaveParams& w, const Rectangle& r, double eps = 1e-8);

}  // namespace fkdvb
