#include "fkdvb/quadform.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include <Eigen/Dense>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "fkdvb/errors.hpp"
#include "fkdvb/kernels.hpp"
#include "fkdvb/special.hpp"

namespace fkdvb {

namespace {

// Full Gauss-Legendre rule on [-1, 1] (boost stores only the non-negative half).
struct Rule {
  std::vector<double> x;
  std::vector<double> w;
};

template <unsigned N>
const Rule& gauss_rule() {
  static const Rule rule = [] {
    using G = boost::math::quadrature::gauss<double, N>;
    Rule r;
    const auto& a = G::abscissa();
    const auto& wt = G::weights();
    for (std::size_t i = 0; i < a.size(); ++i) {
      r.x.push_back(a[i]);
      r.w.push_back(wt[i]);
      if (a[i] != 0.0) {
        r.x.push_back(-a[i]);
        r.w.push_back(wt[i]);
      }
    }
    return r;
  }();
  return rule;
}

template <unsigned N, class F>
double gauss(F&& f, double a, double b) {
  const Rule& r = gauss_rule<N>();
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double acc = 0.0;
  for (std::size_t i = 0; i < r.x.size(); ++i) acc += r.w[i] * f(mid + half * r.x[i]);
  return acc * half;
}

void require_decaying(const HalfLineFunction& v, const char* who) {
  if (v.tail().level() != 0.0)
    throw InvalidArgument(std::string(who) + ": tail level " + std::to_string(v.tail().level()) +
                          " does not decay to zero");
}

}  // namespace

HalfLineFunction::HalfLineFunction(GridFunction inner, bool in_h2_0)
    : inner_(std::move(inner)), h2_0_(in_h2_0) {
  const Grid& g = inner_.grid;
  if (std::abs(g.xmax()) > 1e-12 * std::max(1.0, std::abs(g.xmin())))
    throw InvalidArgument("HalfLineFunction: grid must end at 0");
  if (h2_0_ && std::abs(boundary_value()) > 1e-12 * std::max(1.0, max_abs(inner_.values)))
    throw InvalidArgument("HalfLineFunction: H^2_0 member must vanish at 0, got v(0) = " +
                          std::to_string(boundary_value()));
}

GridFunction heaviside_slope(const HalfLineFunction& v) {
  const std::size_t n = v.grid().n();
  const auto d = derivative(v.inner().values, v.grid().h());
  std::vector<double> f(2 * n - 1, 0.0);
  std::copy(d.begin(), d.end(), f.begin());
  TailModel left = TailModel::zero();
  if (v.tail().kind() == TailModel::Kind::ExponentialApproach)
    left = TailModel::exponential_approach(0.0, v.tail().amplitude() * v.tail().rate(),
                                           v.tail().rate());
  const double L = -v.grid().xmin();
  return GridFunction(Grid(-L, L, 2 * n - 1), std::move(f), left, TailModel::zero());
}

GridFunction reflect_odd(const HalfLineFunction& v) {
  const auto& vals = v.inner().values;
  const std::size_t n = vals.size();
  if (std::abs(vals.back()) > 1e-12 * std::max(1.0, max_abs(vals)))
    throw InvalidArgument("reflect_odd: v(0) = " + std::to_string(vals.back()) + " is not 0");
  std::vector<double> out(2 * n - 1);
  for (std::size_t i = 0; i < n; ++i) out[i] = vals[i];
  for (std::size_t i = n; i < 2 * n - 1; ++i) out[i] = -vals[2 * (n - 1) - i];
  out[n - 1] = 0.0;
  const double level = v.tail().level();
  const TailModel right = level == 0.0 ? TailModel::zero() : TailModel::constant(-level);
  const double L = -v.grid().xmin();
  return GridFunction(Grid(-L, L, 2 * n - 1), std::move(out), v.tail(), right);
}

// ---------------------------------------------------------------- direct route

namespace {

// One Richardson level: nodes 0, stride, 2*stride, ... of the fine slope d.
double direct_level(const std::vector<double>& d_fine, std::size_t stride, double dx,
                    double tail_offset, double rate, const FracParams& p, Execution exec) {
  const std::size_t n = (d_fine.size() - 1) / stride + 1;
  const double h = dx * static_cast<double>(stride);
  const double a = p.alpha();
  std::vector<double> d(n);
  for (std::size_t i = 0; i < n; ++i) d[i] = d_fine[i * stride];

  // weights of d_{i-k} (A) and d_{i-k+1} (B) for the cell at distance k
  std::vector<double> A(n, 0.0), B(n, 0.0);
  const double hs = std::pow(h, 1.0 - a);
  for (std::size_t k = 1; k < n; ++k) {
    const double kk = static_cast<double>(k);
    const double m0 = power_difference(kk, 1.0 - a) / (1.0 - a);
    const double m1 = power_difference(kk, 2.0 - a) / (2.0 - a);
    A[k] = hs * (m1 - (kk - 1.0) * m0);
    B[k] = hs * (kk * m0 - m1);
  }
  std::vector<double> J(n);
  if (exec == Execution::Serial)
    kernels::linear_history_serial(d, A, B, J);
  else
    kernels::linear_history_omp(d, A, B, J);

  double strip = 0.0;
  if (tail_offset != 0.0) {
    const double ra = std::pow(rate, a);
    for (std::size_t i = 0; i < n; ++i)
      J[i] += tail_offset * ra * scaled_upper_gamma(1.0 - a, rate * h * static_cast<double>(i));
    strip = 0.5 * tail_offset * tail_offset * ra * gamma_fn(1.0 - a);
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += d[i] * J[i];
  acc -= 0.5 * (d.front() * J.front() + d.back() * J.back());
  return h * acc + strip;
}

}  // namespace

QuadFormResult eval_I_direct(const HalfLineFunction& v, const FracParams& p, Execution exec) {
  require_decaying(v, "eval_I_direct");
  const std::size_t cells = v.grid().n() - 1;
  if (cells % 2 != 0)
    throw InvalidArgument("eval_I_direct: need an even number of grid intervals, got " +
                          std::to_string(cells));
  const double dx = v.grid().h();
  const auto d = derivative(v.inner().values, dx);
  double offset = 0.0, rate = 1.0;
  if (v.tail().kind() == TailModel::Kind::ExponentialApproach) {
    offset = v.tail().offset_at(v.grid().xmin());
    rate = v.tail().rate();
  }
  const double a = p.alpha();
  const double r1 = std::pow(2.0, 2.0);
  const double r2 = std::pow(2.0, 3.0 - a);
  const double i1 = direct_level(d, 1, dx, offset, rate, p, exec);
  const double i2 = direct_level(d, 2, dx, offset, rate, p, exec);
  const double e12 = (r1 * i1 - i2) / (r1 - 1.0);

  QuadFormResult res;
  res.method = QuadMethod::Direct;
  if (cells % 4 == 0 && cells >= 16) {
    const double i4 = direct_level(d, 4, dx, offset, rate, p, exec);
    const double e24 = (r1 * i2 - i4) / (r1 - 1.0);
    res.value = (r2 * e12 - e24) / (r2 - 1.0);
    res.estimated_error = std::abs(res.value - e12);
  } else {
    res.value = e12;
    res.estimated_error = std::abs(e12 - i1);
  }
  return res;
}

// ------------------------------------------------------------------ the kernel

namespace {

double bump0(double u, double w) {
  const double q = 1.0 - (u / w) * (u / w);
  if (q <= 0.0) return 0.0;
  const double q2 = q * q;
  return q2 * q2;
}

// (h0 * h0)(a) for the unscaled bump, exact: the product is one polynomial
// of degree 16 on the overlap.
double conv0(double a, double w) {
  a = std::abs(a);
  if (a >= 2.0 * w) return 0.0;
  return gauss<9>([&](double x) { return bump0(x, w) * bump0(a - x, w); }, a - w, w);
}

double power_moment(double alpha, double w, double scale) {
  boost::math::quadrature::tanh_sinh<double> ts;
  return ts.integrate(
      [&](double t) { return std::pow(t, alpha - 1.0) * scale * conv0(t, w); }, 0.0, 2.0 * w,
      1e-14);
}

}  // namespace

MollifierKernel::MollifierKernel(const FracParams& p, double halfwidth)
    : alpha_(p.alpha()), w_(halfwidth) {
  if (!(halfwidth > 0.0) || !std::isfinite(halfwidth))
    throw InvalidArgument("build_kernel: bump half-width must be > 0");
  c_ = power_moment(alpha_, w_, 1.0);
  if (!(c_ > 0.0) || !std::isfinite(c_))
    throw NumericalError("build_kernel: moment quadrature failed",
                         "{\"c\": " + std::to_string(c_) + "}");
  amp_ = 1.0 / std::sqrt(c_);
  mass_ = amp_ * w_ * 256.0 / 315.0;
}

double MollifierKernel::h(double u) const noexcept { return amp_ * bump0(u, w_); }

double MollifierKernel::h_d1(double u) const noexcept {
  const double q = 1.0 - (u / w_) * (u / w_);
  if (q <= 0.0) return 0.0;
  return amp_ * 4.0 * q * q * q * (-2.0 * u / (w_ * w_));
}

double MollifierKernel::h_d2(double u) const noexcept {
  const double q = 1.0 - (u / w_) * (u / w_);
  if (q <= 0.0) return 0.0;
  const double w2 = w_ * w_;
  return amp_ * (48.0 * q * q * u * u / (w2 * w2) - 8.0 * q * q * q / w2);
}

double MollifierKernel::H(double u) const noexcept { return amp_ * amp_ * conv0(u, w_); }

double MollifierKernel::moment() const { return power_moment(alpha_, w_, amp_ * amp_); }

MollifierKernel build_kernel(const FracParams& p, double bump_halfwidth) {
  return MollifierKernel(p, bump_halfwidth);
}

double kernel_potential(const MollifierKernel& k, double xi, double y) {
  const double dist = std::abs(xi - y);
  if (!(dist > 0.0)) throw InvalidArgument("kernel_potential: xi and y must differ");
  const double w = k.halfwidth();
  const double lo_pt = std::min(xi, y), hi_pt = std::max(xi, y);
  auto inner = [&](double t) {
    const double r = w / t;
    const double lo = hi_pt - r, hi = lo_pt + r;
    if (!(hi > lo)) return 0.0;
    return gauss<9>([&](double z) { return k.h(t * (z - xi)) * k.h(t * (z - y)); }, lo, hi);
  };
  boost::math::quadrature::tanh_sinh<double> ts;
  return ts.integrate([&](double t) { return std::pow(t, k.alpha()) * inner(t); }, 0.0,
                      2.0 * w / dist, 1e-12);
}

// ------------------------------------------------------------ kernel route

namespace {

// Piecewise-linear F on nodes x0 + j dx, j = 0..N, zero outside (jumps at
// both ends allowed). Written as sum_j f_j phi_j with half hats at the ends.
struct Slope {
  double x0;
  double dx;
  std::vector<double> f;
  std::size_t N() const { return f.size() - 1; }
};

class SquareIntegral {
 public:
  SquareIntegral(const MollifierKernel& k, const Slope& F) : k_(k), F_(F) {}

  // int G_t(z)^2 dz.
  double operator()(double t) const {
    const double s = k_.halfwidth() / t;
    return s < 16.0 * F_.dx ? exact(t, s) : lattice(t, s);
  }

 private:
  // int_a^b l(xi) h(t(u - xi)) dxi with l linear from fa to fb; the
  // integrand is a degree-9 polynomial on the support, so 5 points are exact.
  double segment(double t, double s, double u, double a, double b, double fa, double fb) const {
    const double lo = std::max(a, u - s), hi = std::min(b, u + s);
    if (!(hi > lo)) return 0.0;
    const double slope = (fb - fa) / (b - a);
    return gauss<5>([&](double x) { return (fa + slope * (x - a)) * k_.h(t * (u - x)); }, lo, hi);
  }
  double psi_full(double t, double s, double u) const {
    return segment(t, s, u, -F_.dx, 0.0, 0.0, 1.0) + segment(t, s, u, 0.0, F_.dx, 1.0, 0.0);
  }
  double psi_left(double t, double s, double u) const {
    return segment(t, s, u, 0.0, F_.dx, 1.0, 0.0);
  }
  double psi_right(double t, double s, double u) const {
    return segment(t, s, u, -F_.dx, 0.0, 0.0, 1.0);
  }

  // G at one point from reversed weight tables: entry K - k of each table
  // holds the weight of a node at distance k = (point index) - m.
  double combine(const double* tf, const double* tl, const double* tr, long j, long K) const {
    const long N = static_cast<long>(F_.N());
    const double* f = F_.f.data();
    const double* row = tf + (K - j);
    const long lo = std::max(1L, j - K), hi = std::min(N - 1, j + K);
    double g = 0.0;
#pragma omp simd reduction(+ : g)
    for (long m = lo; m <= hi; ++m) g += f[m] * row[m];
    if (j - K <= 0 && 0 <= j + K) g += f[0] * tl[K - j];
    if (j - K <= N && N <= j + K) g += f[N] * tr[K - j + N];
    return g;
  }

  // Narrow kernel: G_t is a polynomial of degree <= 10 between consecutive
  // points of {nodes} + {nodes +/- s}, all of which sit at two fixed offsets
  // inside each cell, so 11-point Gauss per piece is exact and the node
  // weights can be tabulated once per offset.
  double exact(double t, double s) const {
    const double dx = F_.dx;
    const long N = static_cast<long>(F_.N());
    const long K = static_cast<long>(std::ceil(s / dx)) + 2;
    const double e = std::fmod(s, dx);
    const double cut1 = std::min(e, dx - e), cut2 = std::max(e, dx - e);
    const double cuts[4] = {0.0, cut1, cut2, dx};
    const Rule& r = gauss_rule<11>();
    std::vector<double> off, wq;
    for (int p = 0; p < 3; ++p) {
      const double a = cuts[p], b = cuts[p + 1];
      if (b - a <= 1e-14 * dx) continue;
      for (std::size_t i = 0; i < r.x.size(); ++i) {
        off.push_back(0.5 * (a + b) + 0.5 * (b - a) * r.x[i]);
        wq.push_back(0.5 * (b - a) * r.w[i]);
      }
    }
    const auto width = static_cast<std::size_t>(2 * K + 1);
    std::vector<double> Tf(off.size() * width), Tl(off.size() * width), Tr(off.size() * width);
    for (std::size_t q = 0; q < off.size(); ++q)
      for (long k = -K; k <= K; ++k) {
        const double u = static_cast<double>(k) * dx + off[q];
        const std::size_t at = q * width + static_cast<std::size_t>(K - k);
        Tl[at] = psi_left(t, s, u);
        Tr[at] = psi_right(t, s, u);
        Tf[at] = Tl[at] + Tr[at];
      }
    // G at (offset q, cell j) = sum_r T(q, r) F(j - K + r) over interior
    // nodes, a product with the (2K+1) x (N+2K) window matrix of F; the two
    // half hats are added separately.
    const long cols = N + 2 * K;
    const auto nq = static_cast<Eigen::Index>(off.size());
    const auto W = static_cast<Eigen::Index>(width);
    Eigen::MatrixXd T(nq, W), window = Eigen::MatrixXd::Zero(W, cols);
    for (Eigen::Index q = 0; q < nq; ++q)
      for (Eigen::Index r = 0; r < W; ++r) T(q, r) = Tf[static_cast<std::size_t>(q) * width + r];
    for (long c = 0; c < cols; ++c)
      for (long r = 0; r < static_cast<long>(width); ++r) {
        const long m = c - 2 * K + r;  // j - K + r with j = c - K
        if (m >= 1 && m <= N - 1) window(r, c) = F_.f[static_cast<std::size_t>(m)];
      }
    Eigen::MatrixXd G = T * window;
    for (long c = 0; c < cols; ++c) {
      const long j = c - K;
      for (long m : {0L, N}) {
        const long r = K - j + m;
        if (r < 0 || r >= static_cast<long>(width)) continue;
        const auto& tab = m == 0 ? Tl : Tr;
        const double fm = F_.f[static_cast<std::size_t>(m)];
        for (Eigen::Index q = 0; q < nq; ++q)
          G(q, c) += fm * tab[static_cast<std::size_t>(q) * width + static_cast<std::size_t>(r)];
      }
    }
    double total = 0.0;
    for (long c = 0; c < cols; ++c)
      for (Eigen::Index q = 0; q < nq; ++q) total += wq[static_cast<std::size_t>(q)] * G(q, c) * G(q, c);
    return total;
  }

  // Wide kernel: G_t varies on the scale s, so sample it on a node-aligned
  // lattice with spacing <= s/16 and use the trapezoid rule (G_t is C^4).
  // Node weights are exact for s < 64 dx. Beyond that either Euler-Maclaurin
  // weights per node, or, when cheaper, a second-order Taylor expansion of
  // h_t about the centres of blocks of nodes no wider than s/64, using the
  // exact moments of F on each block.
  double lattice(double t, double s) const {
    const double dx = F_.dx;
    const long N = static_cast<long>(F_.N());
    const long p = std::max(1L, static_cast<long>(std::floor(s / (16.0 * dx))));
    const double delta = static_cast<double>(p) * dx;
    const long K = static_cast<long>(std::ceil(s / dx)) + 2;
    const long ilo = static_cast<long>(std::floor(-static_cast<double>(K) / p)) - 1;
    const long ihi = static_cast<long>(std::ceil(static_cast<double>(N + K) / p)) + 1;
    const long points = ihi - ilo + 1;
    const bool exact_weights = s < 64.0 * dx;
    const long B = std::max(1L, static_cast<long>(std::floor(s / (64.0 * dx))));
    const long blocks = (N + B - 1) / B;
    double total = 0.0;

    if (!exact_weights && points * blocks < points * (2 * K + 1)) {
      std::vector<double> centre(static_cast<std::size_t>(blocks)), m0(centre.size()),
          m1(centre.size()), m2(centre.size());
      const Rule& g2 = gauss_rule<2>();
      for (long b = 0; b < blocks; ++b) {
        const long first = b * B, last = std::min(N, first + B);
        const double c = F_.x0 + 0.5 * static_cast<double>(first + last) * dx;
        double s0 = 0.0, s1 = 0.0, s2 = 0.0;
        for (long j = first; j < last; ++j) {
          const double fa = F_.f[static_cast<std::size_t>(j)];
          const double fb = F_.f[static_cast<std::size_t>(j + 1)];
          const double xa = F_.x0 + static_cast<double>(j) * dx;
          for (std::size_t q = 0; q < g2.x.size(); ++q) {
            const double u = 0.5 * (1.0 + g2.x[q]);
            const double f = fa + (fb - fa) * u;
            const double y = xa + u * dx - c;
            const double wgt = 0.5 * dx * g2.w[q];
            s0 += wgt * f;
            s1 += wgt * f * y;
            s2 += wgt * f * y * y;
          }
        }
        const auto at = static_cast<std::size_t>(b);
        centre[at] = c;
        m0[at] = s0;
        m1[at] = s1;
        m2[at] = s2;
      }
      for (long i = ilo; i <= ihi; ++i) {
        const double z = F_.x0 + static_cast<double>(i * p) * dx;
        double g = 0.0;
        for (std::size_t b = 0; b < centre.size(); ++b) {
          const double u = t * (z - centre[b]);
          if (std::abs(u) >= k_.halfwidth() + t * B * dx) continue;
          g += k_.h(u) * m0[b] - t * k_.h_d1(u) * m1[b] + 0.5 * t * t * k_.h_d2(u) * m2[b];
        }
        total += g * g;
      }
      return total * delta;
    }

    const double dx2 = dx * dx, dx3 = dx2 * dx;
    const auto width = static_cast<std::size_t>(2 * K + 1);
    std::vector<double> Tf(width), Tl(width), Tr(width);
    for (long k = -K; k <= K; ++k) {
      const auto at = static_cast<std::size_t>(K - k);
      const double u = static_cast<double>(k) * dx;
      if (exact_weights) {
        Tl[at] = psi_left(t, s, u);
        Tr[at] = psi_right(t, s, u);
        Tf[at] = Tl[at] + Tr[at];
      } else {
        const double h0 = k_.h(t * u), h1 = t * k_.h_d1(t * u), h2 = t * t * k_.h_d2(t * u);
        Tf[at] = dx * h0 + dx3 / 12.0 * h2;
        Tl[at] = 0.5 * dx * h0 - dx2 / 6.0 * h1 + dx3 / 24.0 * h2;
        Tr[at] = 0.5 * dx * h0 + dx2 / 6.0 * h1 + dx3 / 24.0 * h2;
      }
    }
    for (long i = ilo; i <= ihi; ++i) {
      const double g = combine(Tf.data(), Tl.data(), Tr.data(), i * p, K);
      total += g * g;
    }
    return total * delta;
  }

  const MollifierKernel& k_;
  const Slope& F_;
};

struct KernelPass {
  double value;       // 1/2 int t^a Q dt, grid part + analytic tails
  double t_error;     // full vs half t-grid
  double tail_unc;    // endpoint model mismatch
  double g_min, g_max, model_min, model_max;
};

KernelPass kernel_pass(const Slope& F, const MollifierKernel& k, const std::vector<double>& t,
                       Execution exec) {
  const double a = k.alpha();
  const SquareIntegral Q(k, F);
  const std::size_t M = t.size();
  std::vector<double> g(M);
  if (exec == Execution::Serial) {
    for (std::size_t i = 0; i < M; ++i) g[i] = std::pow(t[i], a + 1.0) * Q(t[i]);
  } else {
    const long m = static_cast<long>(M);
#pragma omp parallel for schedule(dynamic, 1)
    for (long i = 0; i < m; ++i) {
      const auto u = static_cast<std::size_t>(i);
      g[u] = std::pow(t[u], a + 1.0) * Q(t[u]);
    }
  }
  const double step = std::log(t[1] / t[0]);
  double full = 0.0;
  for (std::size_t i = 0; i < M; ++i) full += g[i];
  full -= 0.5 * (g.front() + g.back());
  full *= step;

  // same range on every other node, for the t-grid error estimate
  const std::size_t last_even = (M - 1) % 2 == 0 ? M - 1 : M - 2;
  double coarse = 0.0, fine_part = 0.0;
  for (std::size_t i = 0; i <= last_even; i += 2) coarse += g[i];
  coarse -= 0.5 * (g[0] + g[last_even]);
  coarse *= 2.0 * step;
  for (std::size_t i = 0; i <= last_even; ++i) fine_part += g[i];
  fine_part -= 0.5 * (g[0] + g[last_even]);
  fine_part *= step;

  double norm2 = 0.0, mean = 0.0;
  for (std::size_t j = 0; j < F.N(); ++j) {
    const double p = F.f[j], q = F.f[j + 1];
    norm2 += (p * p + p * q + q * q) / 3.0;
    mean += 0.5 * (p + q);
  }
  norm2 *= F.dx;
  mean *= F.dx;
  const double tmin = t.front(), tmax = t.back();
  // t -> inf: G_t ~ F * mass / t.  t -> 0: G_t ~ (int F) h(t .).
  const double model_max = k.mass() * k.mass() * norm2 * std::pow(tmax, a - 1.0);
  const double model_min = mean * mean * k.H(0.0) * std::pow(tmin, a);
  const double tail = model_max / (1.0 - a) + model_min / a;
  const double unc =
      std::abs(g.back() - model_max) / (1.0 - a) + std::abs(g.front() - model_min) / a;

  KernelPass out;
  out.value = 0.5 * (full + tail);
  out.t_error = 0.5 * std::abs(fine_part - coarse);
  out.tail_unc = 0.5 * unc;
  out.g_min = g.front();
  out.g_max = g.back();
  out.model_min = model_min;
  out.model_max = model_max;
  return out;
}

}  // namespace

QuadFormResult eval_I_kernel(const HalfLineFunction& v, const MollifierKernel& k,
                             const KernelQuadOptions& opt, Execution exec) {
  require_decaying(v, "eval_I_kernel");
  if (opt.t_nodes < 8) throw InvalidArgument("eval_I_kernel: need at least 8 t nodes");
  const double dx = v.grid().h();
  const double L = -v.grid().xmin();
  auto d = derivative(v.inner().values, dx);

  // Continue an exponential tail on the grid until it is negligible.
  std::size_t ext = 0;
  if (v.tail().kind() == TailModel::Kind::ExponentialApproach) {
    const double r = v.tail().rate();
    const double slope0 = r * v.tail().offset_at(v.grid().xmin());
    const double floor = 1e-13 * std::max(max_abs(d), std::abs(slope0));
    while (std::abs(slope0) * std::exp(-r * dx * static_cast<double>(ext + 1)) > floor &&
           ext < 400000)
      ++ext;
    std::vector<double> full(ext + d.size());
    for (std::size_t j = 0; j < ext; ++j)
      full[j] = slope0 * std::exp(-r * dx * static_cast<double>(ext - j));
    std::copy(d.begin(), d.end(), full.begin() + static_cast<long>(ext));
    d.swap(full);
  }
  // Richardson needs the extended node count to stay even; drop one
  // negligible tail node if it does not.
  bool richardson = opt.richardson;
  if ((d.size() - 1) % 2 != 0) {
    if (ext > 0)
      d.erase(d.begin()), --ext;
    else
      richardson = false;
  }
  const double x0 = v.grid().xmin() - dx * static_cast<double>(ext);

  std::vector<double> t(opt.t_nodes);
  const double tmin = opt.t_min_factor / L, tmax = opt.t_max_factor / dx;
  for (std::size_t i = 0; i < t.size(); ++i)
    t[i] = tmin * std::pow(tmax / tmin, static_cast<double>(i) / static_cast<double>(t.size() - 1));

  const Slope fine{x0, dx, d};
  const KernelPass pf = kernel_pass(fine, k, t, exec);

  QuadFormResult res;
  res.method = QuadMethod::KernelRepresentation;
  double disc = 0.0;
  res.value = pf.value;
  if (richardson) {
    Slope coarse{x0, 2.0 * dx, {}};
    for (std::size_t j = 0; j < d.size(); j += 2) coarse.f.push_back(d[j]);
    const KernelPass pc = kernel_pass(coarse, k, t, exec);
    res.value = pf.value + (pf.value - pc.value) / 3.0;
    disc = std::abs(pf.value - pc.value) / 3.0;
  }
  res.estimated_error = disc + pf.t_error + pf.tail_unc;

  if (pf.tail_unc > opt.endpoint_tolerance * std::abs(pf.value) && pf.tail_unc > 1e-14) {
    std::ostringstream diag;
    diag.precision(17);
    diag << "{\"t_min\": " << tmin << ", \"t_max\": " << tmax
         << ", \"integrand_t_min\": " << pf.g_min << ", \"model_t_min\": " << pf.model_min
         << ", \"integrand_t_max\": " << pf.g_max << ", \"model_t_max\": " << pf.model_max
         << ", \"value\": " << pf.value << "}";
    throw NumericalError("eval_I_kernel: t-integrand not in its asymptotic regime at the ends",
                         diag.str());
  }
  return res;
}

double energy_identity_residual(const HalfLineFunction& v, const WaveParams& w) {
  const double v0 = v.boundary_value();
  const double dv0 = derivative(v.inner().values, v.grid().h()).back();
  const double I = eval_I_direct(v, w.frac()).value;
  return std::abs(0.5 * w.hprime() * v0 * v0 - w.frac().d_alpha() * I -
                  0.5 * w.tau() * dv0 * dv0);
}

// ------------------------------------------------------------ random family

double RandomH20::operator()(double xi) const {
  double s = 0.0;
  for (int k = 0; k < 3; ++k) s += amp[k] * std::cos(freq[k] * xi + phase[k]);
  return xi * std::exp(rate * xi) * s;
}

double RandomH20::derivative(double xi) const {
  double s = 0.0, ds = 0.0;
  for (int k = 0; k < 3; ++k) {
    s += amp[k] * std::cos(freq[k] * xi + phase[k]);
    ds -= amp[k] * freq[k] * std::sin(freq[k] * xi + phase[k]);
  }
  return std::exp(rate * xi) * ((1.0 + rate * xi) * s + xi * ds);
}

std::vector<RandomH20> random_h2_0_family(std::uint64_t seed, std::size_t count) {
  // Explicit 53-bit conversion: std::uniform_real_distribution is not
  // reproducible across standard libraries.
  std::mt19937_64 rng(seed);
  auto uniform = [&](double lo, double hi) {
    return lo + (hi - lo) * static_cast<double>(rng() >> 11) * 0x1.0p-53;
  };
  std::vector<RandomH20> out(count);
  for (auto& f : out) {
    f.rate = uniform(0.6, 1.5);
    for (int k = 0; k < 3; ++k) {
      f.amp[k] = uniform(-1.0, 1.0);
      f.freq[k] = uniform(0.0, 2.0);
      f.phase[k] = uniform(0.0, 2.0 * std::numbers::pi);
    }
  }
  return out;
}

Grid random_family_grid() { return Grid(-30.0, 0.0, 1501); }

HalfLineFunction sample_half_line(const RandomH20& f, const Grid& g) {
  auto gf = GridFunction::sample(g, [&](double x) { return f(x); });
  gf.values.back() = 0.0;
  return HalfLineFunction(std::move(gf), true);
}

}  // namespace fkdvb
