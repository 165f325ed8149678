#include "fkdvb/fracops.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include <unsupported/Eigen/FFT>

#include "fkdvb/errors.hpp"
#include "fkdvb/kernels.hpp"
#include "fkdvb/special.hpp"

namespace fkdvb {

FracParams::FracParams(double alpha) : alpha_(alpha) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw InvalidArgument("FracParams: alpha = " + std::to_string(alpha) +
                          " violates 0 < alpha < 1");
  d_alpha_ = dalpha_constant(alpha);
  const double check = 1.0 / gamma_fn(1.0 - alpha);
  if (std::abs(d_alpha_ - check) > 1e-14 * std::abs(check))
    throw NumericalError("FracParams: inconsistent d_alpha");
}

std::vector<double> l1_weights(std::size_t count, double alpha) {
  std::vector<double> b(count);
  const double p = 1.0 - alpha;
  for (std::size_t k = 0; k < count; ++k) b[k] = power_difference(static_cast<double>(k + 1), p);
  return b;
}

L1Stencil::L1Stencil(std::size_t n, double h, const FracParams& p)
    : scale_(std::pow(h, -p.alpha()) / gamma_fn(2.0 - p.alpha())),
      b_(l1_weights(n, p.alpha())) {}

double exponential_tail_response(double rate, double distance, const FracParams& p) {
  const double a = p.alpha();
  return p.d_alpha() * std::pow(rate, a) * scaled_upper_gamma(1.0 - a, rate * distance);
}

GridFunction apply_dalpha(const GridFunction& f, const FracParams& p, Execution exec) {
  const std::size_t n = f.size();
  const double h = f.grid.h();
  std::vector<double> out(n);
  const auto b = l1_weights(n, p.alpha());
  if (exec == Execution::Serial)
    kernels::l1_history_serial(f.values, b, out);
  else
    kernels::l1_history_omp(f.values, b, out);
  const double scale = std::pow(h, -p.alpha()) / gamma_fn(2.0 - p.alpha());
  for (double& g : out) g *= scale;

  TailModel out_tail = TailModel::zero();
  if (f.tail.kind() == TailModel::Kind::ExponentialApproach) {
    const double r = f.tail.rate();
    const double x0 = f.grid.xmin();
    const double offset = f.tail.offset_at(x0);
    for (std::size_t i = 0; i < n; ++i)
      out[i] += offset * exponential_tail_response(r, f.grid.x(i) - x0, p);
    out_tail = TailModel::exponential_approach(
        0.0, f.tail.amplitude() * dalpha_of_exponential(r, p), r);
  }
  return GridFunction(f.grid, std::move(out), out_tail);
}

double dalpha_of_exponential(double lambda, const FracParams& p) {
  if (!(lambda > 0.0)) throw InvalidArgument("dalpha_of_exponential: lambda must be > 0");
  return std::pow(lambda, p.alpha());
}

std::complex<double> fourier_symbol(double k, const FracParams& p) {
  if (k == 0.0) return {0.0, 0.0};
  const double a = p.alpha();
  const double phase = (k > 0.0 ? 1.0 : -1.0) * a * std::numbers::pi / 2.0;
  return std::polar(std::pow(std::abs(k), a), phase);
}

Spectrum spectrum(const GridFunction& f) {
  const std::size_t n = f.size();
  const double h = f.grid.h();
  std::vector<std::complex<double>> in(f.values.begin(), f.values.end());
  std::vector<std::complex<double>> out;
  Eigen::FFT<double> fft;
  fft.fwd(out, in);
  Spectrum s;
  s.k.resize(n);
  s.fhat.resize(n);
  const double dk = 2.0 * std::numbers::pi / (static_cast<double>(n) * h);
  for (std::size_t m = 0; m < n; ++m) {
    const double idx = 2 * m < n ? static_cast<double>(m)
                                 : static_cast<double>(m) - static_cast<double>(n);
    s.k[m] = idx * dk;
    s.fhat[m] = h * out[m] * std::polar(1.0, -s.k[m] * f.grid.xmin());
  }
  return s;
}

double sobolev_norm(const GridFunction& f, double s, bool homogeneous) {
  if (!(s >= 0.0)) throw InvalidArgument("sobolev_norm: s must be >= 0");
  const Spectrum sp = spectrum(f);
  const double n = static_cast<double>(f.size());
  double sum = 0.0;
  for (std::size_t m = 0; m < sp.k.size(); ++m) {
    const double k2 = sp.k[m] * sp.k[m];
    const double w = homogeneous ? (s == 0.0 ? 1.0 : std::pow(k2, s)) : std::pow(1.0 + k2, s);
    sum += w * std::norm(sp.fhat[m]);
  }
  return std::sqrt(sum / (n * f.grid.h()));
}

}  // namespace fkdvb
