#include <cmath>
#include <random>

#include <doctest.h>

#include "fkdvb/charroots.hpp"
#include "fkdvb/errors.hpp"

using namespace fkdvb;

namespace {

// tests/oracles/char_roots_oracle.py (bisection and 2-D Newton at 40 digits)
struct RootFixture {
  double tau, alpha, hprime, lambda, re, im;
};
constexpr RootFixture kFixtures[] = {
    {1.0, 0.5, 1.0, 0.52488859865640479, -1.0075523593781792, 0.51311579559701487},
    {1.0, 0.25, 1.0, 0.43399041460866086, -0.65548089694198039, 0.4288769011609706},
    {1.0, 0.75, 1.0, 0.57949662869098089, -1.3658504948862445, 0.40141068029424368},
    {2.0, 0.5, 3.0, 1.0, -1.2249219472514776, 0.22684231543541333},
};

}  // namespace

TEST_SUITE("charroots") {
  TEST_CASE("WaveParams derives c and h' and enforces Lax") {
    const WaveParams w(2.0, 1.0, 1.0, FracParams(0.5));
    CHECK(w.c() == 3.0);
    CHECK(w.hprime() == 1.0);
    CHECK(w.flux(w.phi_minus()) == 0.0);
    CHECK(w.flux(w.phi_plus()) == 0.0);
    CHECK(w.flux_slope(w.phi_minus()) == doctest::Approx(w.hprime()));
    CHECK_THROWS_AS(WaveParams(1.0, 1.0, 1.0, FracParams(0.5)), InvalidArgument);
    CHECK_THROWS_AS(WaveParams(0.0, 1.0, 1.0, FracParams(0.5)), InvalidArgument);
    CHECK_THROWS_AS(WaveParams(1.0, 0.0, -0.1, FracParams(0.5)), InvalidArgument);
    CHECK_THROWS_AS(WaveParams::from_hprime(1.0, 0.5, 0.0), InvalidArgument);
  }

  TEST_CASE("eval_char examples") {
    CHECK(eval_char(0.0, WaveParams::from_hprime(1.0, 0.5, 2.5)) == cplx(-2.5, 0.0));
    CHECK(std::abs(eval_char(1.0, WaveParams::from_hprime(0.0, 0.5, 1.0))) == 0.0);
    CHECK(std::abs(eval_char(1.0, WaveParams::from_hprime(1.0, 0.5, 1.0)) - 1.0) < 1e-15);
  }

  TEST_CASE("branch cut") {
    const auto w = WaveParams::from_hprime(1.0, 0.5, 1.0);
    CHECK_THROWS_AS(eval_char(cplx(-1.0, 0.0), w), BranchCutError);
    CHECK_THROWS_AS(principal_power(cplx(-0.5, 0.0), 0.3), BranchCutError);
    // just above and below the cut the power jumps by e^{2 pi i a}
    const cplx above = principal_power(cplx(-1.0, 1e-14), 0.5);
    const cplx below = principal_power(cplx(-1.0, -1e-14), 0.5);
    CHECK(above.imag() == doctest::Approx(1.0));
    CHECK(below.imag() == doctest::Approx(-1.0));
    CHECK(std::abs(principal_power(0.0, 0.5)) == 0.0);
  }

  TEST_CASE("derivative matches a central difference") {
    const auto w = WaveParams::from_hprime(1.3, 0.4, 0.8);
    const cplx z(0.7, 0.9);
    const double e = 1e-6;
    const cplx fd = (eval_char(z + e, w) - eval_char(z - e, w)) / (2.0 * e);
    CHECK(std::abs(eval_char_derivative(z, w) - fd) < 1e-8);
  }

  TEST_CASE("find_lambda examples") {
    for (double a : {0.2, 0.5, 0.9}) CHECK(find_lambda(WaveParams::from_hprime(0.0, a, 1.0)) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(find_lambda(WaveParams::from_hprime(0.0, 0.5, 4.0)) == doctest::Approx(16.0).epsilon(1e-14));
    const auto w = WaveParams::from_hprime(1.0, 0.5, 1.0);
    const double lam = find_lambda(w);
    CHECK(lam == doctest::Approx(0.5249).epsilon(1e-4));
    CHECK(std::abs(eval_char(lam, w)) <= 1e-12);
  }

  TEST_CASE("tau = 0 closed form over random parameters") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> ua(0.05, 0.95), uh(0.1, 5.0);
    for (int k = 0; k < 200; ++k) {
      const double a = ua(rng), hp = uh(rng);
      const double exact = std::pow(hp, 1.0 / a);
      CAPTURE(a);
      CAPTURE(hp);
      REQUIRE(std::abs(find_lambda(WaveParams::from_hprime(0.0, a, hp)) - exact) <= 1e-12 * exact);
    }
  }

  TEST_CASE("tau = 0 with lambda far below 1") {
    // lambda ~ 9e-16 here; an absolute bisection tolerance used to lose it
    const double a = 0.057836933872779196, hp = 0.13461913242217932;
    const double exact = std::pow(hp, 1.0 / a);
    CHECK(find_lambda(WaveParams::from_hprime(0.0, a, hp)) == doctest::Approx(exact).epsilon(1e-13));
    CHECK(find_lambda(WaveParams::from_hprime(0.0, 0.05, 0.1)) == doctest::Approx(1e-20).epsilon(1e-13));
  }

  TEST_CASE("roots reproduce the oracle fixtures") {
    for (const auto& f : kFixtures) {
      const auto w = WaveParams::from_hprime(f.tau, f.alpha, f.hprime);
      const auto r = find_roots(w);
      CAPTURE(f.alpha);
      CHECK(r.lambda == doctest::Approx(f.lambda).epsilon(1e-13));
      CHECK(r.lambda_residual <= 1e-12);
      REQUIRE(r.upper.has_value());
      CHECK(std::abs(*r.upper - cplx(f.re, f.im)) <= 1e-10);
      CHECK(r.pair_residual <= 1e-10);
      CHECK(r.upper->real() < 0.0);
      CHECK(*r.lower() == std::conj(*r.upper));
    }
  }

  TEST_CASE("complex pair: conjugates, deterministic, absent for tau = 0") {
    const auto w = WaveParams::from_hprime(1.0, 0.5, 1.0);
    const auto [u1, l1] = find_complex_pair(w);
    const auto [u2, l2] = find_complex_pair(w);
    CHECK(std::abs(u1 - u2) <= 1e-9);
    CHECK(l1 == std::conj(u1));
    CHECK(std::abs(eval_char(l1, w)) <= 1e-10);
    CHECK_THROWS_AS(find_complex_pair(WaveParams::from_hprime(0.0, 0.5, 1.0)), InvalidArgument);
    CHECK_FALSE(find_roots(WaveParams::from_hprime(0.0, 0.5, 1.0)).upper.has_value());
  }

  TEST_CASE("alpha -> 1 limit approaches the quadratic roots") {
    const auto r = find_roots(WaveParams::from_hprime(1.0, 0.999, 1.0));
    const double s5 = std::sqrt(5.0);
    CHECK(std::abs(r.lambda - (s5 - 1.0) / 2.0) < 1e-2);
    CHECK(std::abs(*r.upper - cplx(-(1.0 + s5) / 2.0, 0.0)) < 1e-2);
    // oracle at alpha = 0.999
    CHECK(std::abs(*r.upper - cplx(-1.6176815949761613, 0.0022708933390320356)) < 1e-9);
  }

  TEST_CASE("argument-principle counts") {
    const auto w = WaveParams::from_hprime(1.0, 0.5, 1.0);
    CHECK(count_roots_argument_principle(w, {0.1, 10.0, -5.0, 5.0}) == 1);
    CHECK(count_roots_argument_principle(w, {2.0, 3.0, -1.0, 1.0}) == 0);
    // straddles the cut: indented
    CHECK(count_roots_argument_principle(w, {-2.0, -0.5, -1.0, 1.0}) == 2);
    CHECK(count_roots_argument_principle(w, {-2.0, -0.5, 0.1, 1.0}) == 1);
    // no further roots on large contours either side of the imaginary axis
    CHECK(count_roots_argument_principle(w, {0.05, 100.0, -100.0, 100.0}) == 1);
    CHECK(count_roots_argument_principle(w, {-100.0, -0.05, -100.0, 100.0}) == 2);
    // tau = 0: only the positive root
    const auto w0 = WaveParams::from_hprime(0.0, 0.5, 1.0);
    CHECK(count_roots_argument_principle(w0, {-100.0, -0.05, -100.0, 100.0}) == 0);
    CHECK(count_roots_argument_principle(w0, {0.05, 100.0, -100.0, 100.0}) == 1);
  }

  TEST_CASE("contours through a root or along the cut are rejected") {
    const auto w = WaveParams::from_hprime(0.0, 0.5, 1.0);
    CHECK_THROWS_AS(count_roots_argument_principle(w, {1.0, 2.0, -1.0, 1.0}), InvalidArgument);
    CHECK_THROWS_AS(count_roots_argument_principle(w, {-2.0, -1.0, 0.0, 1.0}), InvalidArgument);
    CHECK_THROWS_AS(count_roots_argument_principle(w, {1.0, 1.0, -1.0, 1.0}), InvalidArgument);
  }

  TEST_CASE("conjugate symmetry off the cut") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-10.0, 10.0);
    const auto w = WaveParams::from_hprime(1.7, 0.35, 2.2);
    for (int k = 0; k < 500; ++k) {
      const cplx z(u(rng), u(rng));
      const cplx a = eval_char(std::conj(z), w), b = std::conj(eval_char(z, w));
      REQUIRE(std::abs(a - b) <= 1e-12 * (1.0 + std::abs(a)));
    }
  }

  TEST_CASE("P increases on the positive axis") {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(1e-6, 20.0);
    const auto w = WaveParams::from_hprime(0.6, 0.45, 1.0);
    for (int k = 0; k < 500; ++k) {
      double z1 = u(rng), z2 = u(rng);
      if (z1 == z2) continue;
      if (z1 > z2) std::swap(z1, z2);
      REQUIRE(eval_char(z1, w).real() < eval_char(z2, w).real());
    }
  }

  TEST_CASE("lambda is continuous in h'") {
    for (double hp : {0.1, 1.0, 10.0}) {
      const double a = find_lambda(WaveParams::from_hprime(1.0, 0.5, hp));
      const double b = find_lambda(WaveParams::from_hprime(1.0, 0.5, hp * (1.0 + 1e-6)));
      CHECK(std::abs(b / a - 1.0) <= 1e-4);
    }
  }
}
