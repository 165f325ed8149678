#include "fkdvb/special.hpp"

#include <cmath>

#include <boost/math/special_functions/gamma.hpp>

#include "fkdvb/errors.hpp"

namespace fkdvb {

double gamma_fn(double x) { return std::tgamma(x); }

double dalpha_constant(double alpha) { return 1.0 / std::tgamma(1.0 - alpha); }

double scaled_upper_gamma(double a, double x) {
  if (!(x >= 0.0)) throw InvalidArgument("scaled_upper_gamma: x must be >= 0");
  if (x == 0.0) return std::tgamma(a);
  if (x < 500.0) return std::exp(x) * boost::math::tgamma(a, x);
  // Asymptotic series x^(a-1) * sum_k (a-1)(a-2)...(a-k) / x^k; at x >= 500
  // the terms fall below double precision long before the series diverges.
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 30; ++k) {
    term *= (a - k) / x;
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum)) break;
  }
  return std::pow(x, a - 1.0) * sum;
}

double power_difference(double k, double p) {
  if (k == 1.0) return 1.0;
  return -std::pow(k, p) * std::expm1(p * std::log1p(-1.0 / k));
}

}  // namespace fkdvb
