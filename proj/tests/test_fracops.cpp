#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <random>
#include <vector>

#include <doctest.h>

#include "fkdvb/errors.hpp"
#include "fkdvb/fracops.hpp"
#include "fkdvb/special.hpp"

using namespace fkdvb;

namespace {

GridFunction exponential_on(const Grid& g, double lambda) {
  return GridFunction::sample(
      g, [lambda](double x) { return std::exp(lambda * x); },
      TailModel::exponential_approach(0.0, 1.0, lambda));
}

// max relative error of D^a e^{lambda x} against lambda^a e^{lambda x}
double eigen_error(double lambda, double alpha, double h) {
  const FracParams p(alpha);
  const Grid g = Grid::with_spacing(-20.0, 0.0, h);
  const auto d = apply_dalpha(exponential_on(g, lambda), p);
  const double m = dalpha_of_exponential(lambda, p);
  double err = 0.0;
  for (std::size_t i = 0; i < g.n(); ++i) {
    const double exact = m * std::exp(lambda * g.x(i));
    err = std::max(err, std::abs(d[i] - exact) / exact);
  }
  return err;
}

GridFunction gaussian(const Grid& g) {
  return GridFunction::sample(g, [](double x) { return std::exp(-x * x); });
}

}  // namespace

TEST_SUITE("fracops") {
  TEST_CASE("FracParams validates alpha and d_alpha") {
    for (double a : {0.1, 0.25, 0.5, 0.75, 0.9}) {
      const FracParams p(a);
      CHECK(p.d_alpha() == doctest::Approx(1.0 / std::tgamma(1.0 - a)).epsilon(1e-14));
    }
    for (double a : {0.0, 1.0, 1.5, -0.2, std::numeric_limits<double>::quiet_NaN()})
      CHECK_THROWS_AS(FracParams{a}, InvalidArgument);
  }

  TEST_CASE("gamma function") {
    CHECK(gamma_fn(0.5) == doctest::Approx(std::sqrt(std::numbers::pi)).epsilon(1e-14));
    CHECK(gamma_fn(5.0) == doctest::Approx(24.0).epsilon(1e-14));
    CHECK(dalpha_constant(0.5) == doctest::Approx(1.0 / std::sqrt(std::numbers::pi)).epsilon(1e-14));
  }

  TEST_CASE("scaled upper gamma at 0 and for large x") {
    // e^0 Gamma(a, 0) = Gamma(a)
    CHECK(scaled_upper_gamma(0.5, 0.0) == doctest::Approx(std::sqrt(std::numbers::pi)).epsilon(1e-13));
    // e^x Gamma(a, x) ~ x^(a-1) (1 + (a-1)/x)
    const double x = 1e4;
    CHECK(scaled_upper_gamma(0.5, x) ==
          doctest::Approx(std::pow(x, -0.5) * (1.0 - 0.5 / x)).epsilon(1e-7));
  }

  TEST_CASE("power_difference avoids cancellation") {
    CHECK(power_difference(1.0, 0.5) == doctest::Approx(1.0));
    const double k = 1e12;
    // ~ p k^(p-1)
    CHECK(power_difference(k, 0.5) == doctest::Approx(0.5 / std::sqrt(k)).epsilon(1e-9));
  }

  TEST_CASE("l1 weights") {
    const auto b = l1_weights(4, 0.5);
    CHECK(b[0] == doctest::Approx(1.0));
    CHECK(b[1] == doctest::Approx(std::sqrt(2.0) - 1.0));
    CHECK(b[3] == doctest::Approx(2.0 - std::sqrt(3.0)));
    for (std::size_t k = 1; k < b.size(); ++k) CHECK(b[k] < b[k - 1]);
  }

  TEST_CASE("dalpha_of_exponential examples") {
    CHECK(dalpha_of_exponential(1.0, FracParams(0.3)) == doctest::Approx(1.0));
    CHECK(dalpha_of_exponential(4.0, FracParams(0.5)) == doctest::Approx(2.0));
    CHECK(dalpha_of_exponential(2.0, FracParams(0.5)) == doctest::Approx(1.41421356237309515));
    CHECK_THROWS_AS(dalpha_of_exponential(0.0, FracParams(0.5)), InvalidArgument);
    CHECK_THROWS_AS(dalpha_of_exponential(-1.0, FracParams(0.5)), InvalidArgument);
  }

  TEST_CASE("exponential tail response at zero distance") {
    // d_a rate^a Gamma(1-a) = rate^a
    const FracParams p(0.5);
    CHECK(exponential_tail_response(4.0, 0.0, p) == doctest::Approx(2.0).epsilon(1e-13));
    // decays with distance
    CHECK(exponential_tail_response(1.0, 5.0, p) < exponential_tail_response(1.0, 1.0, p));
  }

  TEST_CASE("e^xi and e^{2 xi} on [-20, 0] at h = 0.01") {
    CHECK(eigen_error(1.0, 0.5, 0.01) <= 5e-3);
    CHECK(eigen_error(2.0, 0.5, 0.01) <= 5e-3);
  }

  TEST_CASE("eigen-relation converges at order 2 - a - 0.2") {
    for (double alpha : {0.25, 0.5, 0.75}) {
      const double e1 = eigen_error(1.0, alpha, 0.04);
      const double e2 = eigen_error(1.0, alpha, 0.02);
      CAPTURE(alpha);
      CHECK(std::log2(e1 / e2) >= 2.0 - alpha - 0.2);
    }
  }

  TEST_CASE("constants are annihilated") {
    const Grid g = Grid::with_spacing(-10.0, 5.0, 0.05);
    const GridFunction f(g, std::vector<double>(g.n(), 3.7), TailModel::constant(3.7));
    const auto d = apply_dalpha(f, FracParams(0.4));
    CHECK(max_abs(d.values) == 0.0);
  }

  TEST_CASE("linearity") {
    const FracParams p(0.6);
    const Grid g = Grid::with_spacing(-15.0, 3.0, 0.02);
    const auto f = GridFunction::sample(g, [](double x) { return std::exp(0.7 * x) * std::cos(x); },
                                        TailModel::zero());
    const auto k = GridFunction::sample(g, [](double x) { return std::exp(-x * x); });
    std::vector<double> mix(g.n());
    for (std::size_t i = 0; i < g.n(); ++i) mix[i] = 2.5 * f[i] - 1.25 * k[i];
    const auto df = apply_dalpha(f, p), dk = apply_dalpha(k, p);
    const auto dm = apply_dalpha(GridFunction(g, mix), p);
    double diff = 0.0, scale = 0.0;
    for (std::size_t i = 0; i < g.n(); ++i) {
      diff = std::max(diff, std::abs(dm[i] - (2.5 * df[i] - 1.25 * dk[i])));
      scale = std::max(scale, std::abs(dm[i]));
    }
    CHECK(diff <= 1e-13 * scale);
  }

  TEST_CASE("serial and parallel evaluation agree") {
    const FracParams p(0.5);
    const Grid g = Grid::with_spacing(-20.0, 0.0, 0.01);
    const auto f = exponential_on(g, 1.0);
    const auto s = apply_dalpha(f, p, Execution::Serial);
    const auto o = apply_dalpha(f, p, Execution::Parallel);
    for (std::size_t i = 0; i < g.n(); ++i) REQUIRE(s[i] == doctest::Approx(o[i]).epsilon(1e-13));
  }

  TEST_CASE("non-finite input is rejected") {
    const Grid g(0.0, 1.0, 5);
    std::vector<double> v(5, 0.0);
    v[2] = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(GridFunction(g, v), InvalidArgument);
  }

  TEST_CASE("fourier symbol") {
    const FracParams p(0.5);
    CHECK(std::abs(fourier_symbol(0.0, p)) == 0.0);
    const auto s1 = fourier_symbol(1.0, p);
    CHECK(s1.real() == doctest::Approx(std::sqrt(0.5)).epsilon(1e-15));
    CHECK(s1.imag() == doctest::Approx(std::sqrt(0.5)).epsilon(1e-15));
    // (i)^{1/2}
    CHECK(std::abs(s1 - std::sqrt(std::complex<double>(0.0, 1.0))) < 1e-15);
    const auto sm = fourier_symbol(-1.0, p);
    CHECK(std::abs(sm - std::conj(s1)) < 1e-15);
    CHECK(std::abs(fourier_symbol(4.0, p)) == doctest::Approx(2.0));
  }

  TEST_CASE("sobolev norms") {
    const Grid g = Grid::with_spacing(-20.0, 20.0, 0.01);
    const GridFunction zero(g, std::vector<double>(g.n(), 0.0));
    CHECK(sobolev_norm(zero, 1.0, true) == 0.0);
    CHECK(sobolev_norm(gaussian(g), 0.0, false) ==
          doctest::Approx(std::pow(std::numbers::pi / 2.0, 0.25)).epsilon(1e-10));
    CHECK(sobolev_norm(gaussian(g), 0.0, true) ==
          doctest::Approx(std::pow(std::numbers::pi / 2.0, 0.25)).epsilon(1e-10));
    // ||f'||^2 = int 4x^2 e^{-2x^2} = sqrt(pi/2)
    CHECK(sobolev_norm(gaussian(g), 1.0, true) ==
          doctest::Approx(std::pow(std::numbers::pi / 2.0, 0.25)).epsilon(1e-10));
    CHECK(sobolev_norm(gaussian(g), 1.0, false) ==
          doctest::Approx(std::sqrt(2.0) * std::pow(std::numbers::pi / 2.0, 0.25)).epsilon(1e-10));
    CHECK_THROWS_AS(sobolev_norm(gaussian(g), -0.5, true), InvalidArgument);
  }

  TEST_CASE("symbol consistency for a Gaussian") {
    // D^a of a Gaussian decays like x^{-1-a} on the right, so the window is
    // long on that side; the mismatch is truncation, not resolution.
    const FracParams p(0.5);
    const Grid g = Grid::with_spacing(-20.0, 300.0, 0.02);
    const auto f = gaussian(g);
    const auto sf = spectrum(f);
    const auto sd = spectrum(apply_dalpha(f, p));
    double num = 0.0, den = 0.0;
    for (std::size_t k = 0; k < sf.k.size(); ++k) {
      const auto target = fourier_symbol(sf.k[k], p) * sf.fhat[k];
      num += std::norm(sd.fhat[k] - target);
      den += std::norm(target);
    }
    CHECK(std::sqrt(num / den) <= 1e-2);
  }

  TEST_CASE("homogeneous norm identity, Gaussian, s = 1") {
    const FracParams p(0.5);
    const Grid g = Grid::with_spacing(-20.0, 100.0, 0.01);
    const auto f = gaussian(g);
    const double lhs = sobolev_norm(apply_dalpha(f, p), 1.0, true);
    const double rhs = sobolev_norm(f, 1.5, true);
    CHECK(std::abs(lhs / rhs - 1.0) <= 1e-3);
  }
}
