#pragma once

// The singular quadratic form
//   I[v] = int_{-inf}^0 int_{-inf}^xi v'(xi) v'(y) (xi - y)^(-a) dy dxi
// evaluated two ways: directly by product integration, and through the
// mollifier representation |x|^(-a) = int_0^inf t^(a-1) H(t x) dt with
// H = h * h, which turns I[v] into an integral of squares.

#include <array>
#include <cstdint>
#include <vector>

#include "fkdvb/charroots.hpp"
#include "fkdvb/fracops.hpp"
#include "fkdvb/grid.hpp"

namespace fkdvb {

/// v on (-inf, 0]: samples on [-L, 0] plus the model inner.tail for xi < -L.
/// With in_h2_0 set the function must vanish at 0.
class HalfLineFunction {
 public:
  HalfLineFunction(GridFunction inner, bool in_h2_0);

  const GridFunction& inner() const noexcept { return inner_; }
  const Grid& grid() const noexcept { return inner_.grid; }
  const TailModel& tail() const noexcept { return inner_.tail; }
  double boundary_value() const noexcept { return inner_.values.back(); }
  bool in_h2_0() const noexcept { return h2_0_; }

 private:
  GridFunction inner_;
  bool h2_0_;
};

enum class QuadMethod { Direct, KernelRepresentation };

struct QuadFormResult {
  double value = 0.0;
  QuadMethod method = QuadMethod::Direct;
  double estimated_error = 0.0;
};

/// F(x) = v'(x) for x <= 0 and 0 for x > 0, sampled on [-L, L].
GridFunction heaviside_slope(const HalfLineFunction& v);

/// Odd extension v*(x) = -v(-x) for x > 0, sampled on [-L, L].
GridFunction reflect_odd(const HalfLineFunction& v);

/// Product integration in y (kernel integrated exactly against the
/// piecewise-linear interpolant of v'), trapezoid in xi, closed-form tail
/// strips, Richardson extrapolation over h, 2h, 4h.
/// Needs an even number of grid intervals; a multiple of four enables the
/// third level.
QuadFormResult eval_I_direct(const HalfLineFunction& v, const FracParams& p,
                             Execution exec = Execution::Parallel);

/// Polynomial bump h(u) = (1 - (u/w)^2)^4 / sqrt(c) on |u| < w with
/// H = h * h scaled so that int_0^inf t^(a-1) H(t) dt = 1.
class MollifierKernel {
 public:
  MollifierKernel(const FracParams& p, double halfwidth);

  double alpha() const noexcept { return alpha_; }
  double halfwidth() const noexcept { return w_; }
  /// The constant c removed by the rescaling.
  double normalisation() const noexcept { return c_; }

  double h(double u) const noexcept;
  double h_d1(double u) const noexcept;
  double h_d2(double u) const noexcept;
  /// (h * h)(u), exact up to rounding.
  double H(double u) const noexcept;
  /// int h.
  double mass() const noexcept { return mass_; }
  /// int_0^inf t^(a-1) H(t) dt recomputed after rescaling.
  double moment() const;

 private:
  double alpha_;
  double w_;
  double c_ = 1.0;
  double amp_ = 1.0;  // 1 / sqrt(c)
  double mass_ = 0.0;
};

MollifierKernel build_kernel(const FracParams& p, double bump_halfwidth = 1.0);

/// int_0^inf t^a int h(t(z - xi)) h(t(z - y)) dz dt, by direct quadrature of
/// both integrals; equals |xi - y|^(-a) when the kernel is normalised.
double kernel_potential(const MollifierKernel& k, double xi, double y);

struct KernelQuadOptions {
  std::size_t t_nodes = 400;
  double t_min_factor = 1e-3;  // t_min = t_min_factor / L
  double t_max_factor = 1e3;   // t_max = t_max_factor / h
  /// Repeat on every other node and extrapolate in h^2.
  bool richardson = true;
  /// Allowed mismatch between the integrand at t_min / t_max and its
  /// asymptotic model, relative to the result.
  double endpoint_tolerance = 5e-2;
};

/// I[v] = 1/2 int_0^inf t^a int G_t(z)^2 dz dt with G_t = F * h(t .),
/// F the piecewise-linear slope of v cut off at 0.
QuadFormResult eval_I_kernel(const HalfLineFunction& v, const MollifierKernel& k,
                             const KernelQuadOptions& opt = {},
                             Execution exec = Execution::Parallel);

/// |h'/2 v(0)^2 - d_a I[v] - tau/2 v'(0)^2|; vanishes for solutions of the
/// linearised equation.
double energy_identity_residual(const HalfLineFunction& v, const WaveParams& w);

/// Seeded random test functions in H^2_0(-inf, 0), format version 1:
///   v(xi) = xi e^{r xi} sum_{k<3} a_k cos(omega_k xi + theta_k),
/// r in [0.6, 1.5], a_k in [-1, 1], omega_k in [0, 2], theta_k in [0, 2 pi).
struct RandomH20 {
  static constexpr int kVersion = 1;
  double rate = 1.0;
  std::array<double, 3> amp{};
  std::array<double, 3> freq{};
  std::array<double, 3> phase{};

  double operator()(double xi) const;
  double derivative(double xi) const;
};

std::vector<RandomH20> random_h2_0_family(std::uint64_t seed, std::size_t count);

/// [-30, 0] with h = 0.02: long enough that the truncated tail is below 1e-5.
Grid random_family_grid();

HalfLineFunction sample_half_line(const RandomH20& f, const Grid& g);

}  // namespace fkdvb
