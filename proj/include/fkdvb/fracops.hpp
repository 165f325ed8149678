#pragma once

// One-sided (Caputo-type) fractional derivative
//   D^a f(x) = d_a * int_{-inf}^x f'(y) (x - y)^(-a) dy,   d_a = 1/Gamma(1-a),
// its Fourier symbol (ik)^a, and Fourier-side Sobolev norms.

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "fkdvb/grid.hpp"

namespace fkdvb {

enum class Execution { Serial, Parallel };

class FracParams {
 public:
  explicit FracParams(double alpha);
  double alpha() const noexcept { return alpha_; }
  double d_alpha() const noexcept { return d_alpha_; }

 private:
  double alpha_;
  double d_alpha_;
};

/// b_k = (k+1)^(1-a) - k^(1-a), k = 0..count-1.
std::vector<double> l1_weights(std::size_t count, double alpha);

/// Matrix form of the discrete operator on a uniform grid (tail excluded):
/// (D^a f)_i = sum_{j<=i} weight(i, j) f_j.
class L1Stencil {
 public:
  L1Stencil(std::size_t n, double h, const FracParams& p);
  double scale() const noexcept { return scale_; }
  std::span<const double> b() const noexcept { return b_; }
  double weight(std::size_t i, std::size_t j) const noexcept {
    if (i == 0 || j > i) return 0.0;
    if (j == i) return scale_ * b_[0];
    if (j == 0) return -scale_ * b_[i - 1];
    return scale_ * (b_[i - j] - b_[i - j - 1]);
  }

 private:
  double scale_;
  std::vector<double> b_;
};

/// D^a at distance s >= 0 to the right of x0 of the tail exp(rate*(y - x0)),
/// y < x0 (unit deviation at x0): d_a * rate^a * e^{rate s} Gamma(1-a, rate s).
double exponential_tail_response(double rate, double distance, const FracParams& p);

/// L1 product-integration approximation of D^a f at every grid node, with the
/// part of the integral left of the grid taken in closed form from f.tail.
GridFunction apply_dalpha(const GridFunction& f, const FracParams& p,
                          Execution exec = Execution::Parallel);

/// Exact multiplier lambda^a with D^a e^{lambda x} = lambda^a e^{lambda x}.
double dalpha_of_exponential(double lambda, const FracParams& p);

/// Principal-branch symbol (ik)^a = |k|^a exp(i sign(k) a pi / 2).
std::complex<double> fourier_symbol(double k, const FracParams& p);

/// Discrete approximation of the continuous transform
/// fhat(k) = int f(x) e^{-ikx} dx at the DFT frequencies of the grid.
struct Spectrum {
  std::vector<double> k;
  std::vector<std::complex<double>> fhat;
};
Spectrum spectrum(const GridFunction& f);

/// ||(1+|k|^2)^{s/2} fhat||_{L2}, or ||\,|k|^s fhat||_{L2} when homogeneous, with
/// the unitary normalisation (s = 0 gives the L2 norm of f). The caller
/// guarantees f is negligible at both grid ends.
double sobolev_norm(const GridFunction& f, double s, bool homogeneous);

}  // namespace fkdvb
