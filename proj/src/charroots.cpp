#include "fkdvb/charroots.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

#include "fkdvb/errors.hpp"

namespace fkdvb {

WaveParams::WaveParams(double phi_minus, double phi_plus, double tau, FracParams frac)
    : phi_minus_(phi_minus), phi_plus_(phi_plus), tau_(tau), frac_(frac) {
  if (!std::isfinite(phi_minus) || !std::isfinite(phi_plus))
    throw InvalidArgument("WaveParams: non-finite far-field state");
  if (!(phi_minus > phi_plus))
    throw InvalidArgument("WaveParams: Lax condition phi_minus > phi_plus violated (phi_minus = " +
                          std::to_string(phi_minus) + ", phi_plus = " + std::to_string(phi_plus) +
                          ")");
  if (!(tau >= 0.0) || !std::isfinite(tau))
    throw InvalidArgument("WaveParams: tau must be >= 0");
  c_ = phi_plus + phi_minus;
  hprime_ = phi_minus - phi_plus;
}

WaveParams WaveParams::from_hprime(double tau, double alpha, double hprime) {
  if (!(hprime > 0.0)) throw InvalidArgument("WaveParams: hprime must be > 0 (Lax condition)");
  return WaveParams(hprime, 0.0, tau, FracParams(alpha));
}

cplx principal_power(cplx z, double a) {
  if (z.imag() == 0.0) {
    if (z.real() == 0.0) return {0.0, 0.0};
    if (z.real() > 0.0) return {std::pow(z.real(), a), 0.0};
    throw BranchCutError("principal_power: z on the branch cut (negative real axis)");
  }
  return std::polar(std::pow(std::abs(z), a), a * std::arg(z));
}

cplx eval_char(cplx z, const WaveParams& w) {
  return w.tau() * z * z + principal_power(z, w.alpha()) - w.hprime();
}

cplx eval_char_derivative(cplx z, const WaveParams& w) {
  const double a = w.alpha();
  return 2.0 * w.tau() * z + a * principal_power(z, a) / z;
}

namespace {

double eval_real(double z, const WaveParams& w) {
  return w.tau() * z * z + std::pow(z, w.alpha()) - w.hprime();
}

}  // namespace

double find_lambda(const WaveParams& w) {
  if (!(w.hprime() > 0.0)) throw InvalidArgument("find_lambda: hprime must be > 0");
  // bracket within a factor of two so the bisection tolerance can be relative;
  // tau = 0 with small alpha puts lambda = h'^{1/alpha} far below 1
  double lo = 0.5;
  double hi = 1.0;
  while (eval_real(hi, w) <= 0.0) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e300) throw NumericalError("find_lambda: no sign change found");
  }
  while (eval_real(lo, w) > 0.0) {
    hi = lo;
    lo *= 0.5;
    if (lo < 1e-300) throw NumericalError("find_lambda: root below 1e-300");
  }
  for (int it = 0; it < 200 && hi - lo > 1e-16 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (eval_real(mid, w) > 0.0 ? hi : lo) = mid;
  }
  double z = 0.5 * (lo + hi);
  const double dp = 2.0 * w.tau() * z + w.alpha() * std::pow(z, w.alpha() - 1.0);
  const double polished = z - eval_real(z, w) / dp;
  if (polished > 0.0 && std::abs(eval_real(polished, w)) <= std::abs(eval_real(z, w)))
    z = polished;
  return z;
}

std::pair<cplx, cplx> find_complex_pair(const WaveParams& w) {
  if (!(w.tau() > 0.0))
    throw InvalidArgument("find_complex_pair: tau = 0 has no complex pair in this model");
  const double radius = std::sqrt(w.hprime() / w.tau());
  std::vector<cplx> found;
  double best_residual = 0.0;
  int attempts = 0;
  for (double rscale : {1.0, 0.5, 2.0, 0.25, 4.0}) {
    for (double frac : {0.6, 0.7, 0.8, 0.9, 0.97, 0.55, 0.995}) {
      ++attempts;
      cplx z = std::polar(rscale * radius, frac * std::numbers::pi);
      bool converged = false;
      for (int it = 0; it < 200; ++it) {
        const cplx p = eval_char(z, w);
        cplx step = p / eval_char_derivative(z, w);
        if (std::abs(step) > 0.5 * std::abs(z)) step *= 0.5 * std::abs(z) / std::abs(step);
        z -= step;
        // Roots come in conjugate pairs; keep the iterate in the upper half plane.
        if (z.imag() < 0.0) z = std::conj(z);
        if (z.imag() == 0.0) z.imag(1e-12 * std::max(1.0, std::abs(z)));
        if (std::abs(step) <= 1e-15 * std::max(1.0, std::abs(z))) {
          converged = true;
          break;
        }
      }
      if (!converged) continue;
      const double res = std::abs(eval_char(z, w));
      if (res > 1e-10 || z.real() >= 0.0 || z.imag() <= 0.0) continue;
      const bool dup = std::any_of(found.begin(), found.end(), [&](cplx q) {
        return std::abs(q - z) <= 1e-8 * std::max(1.0, std::abs(z));
      });
      if (!dup) {
        found.push_back(z);
        best_residual = res;
      }
    }
    if (!found.empty()) break;
  }
  if (found.size() != 1) {
    std::ostringstream diag;
    diag << "{\"attempts\": " << attempts << ", \"distinct_roots\": " << found.size()
         << ", \"best_residual\": " << best_residual << "}";
    throw NumericalError(found.empty() ? "find_complex_pair: Newton failed from every guess"
                                       : "find_complex_pair: more than one upper root found",
                         diag.str());
  }
  return {found.front(), std::conj(found.front())};
}

CharRoots find_roots(const WaveParams& w) {
  CharRoots r;
  r.lambda = find_lambda(w);
  r.lambda_residual = std::abs(eval_char(r.lambda, w));
  if (w.tau() > 0.0) {
    r.upper = find_complex_pair(w).first;
    r.pair_residual = std::abs(eval_char(*r.upper, w));
  }
  return r;
}

namespace {

using Path = std::vector<cplx>;

std::vector<Path> contour_paths(const Rectangle& r, double eps) {
  if (!(r.re_min < r.re_max) || !(r.im_min < r.im_max))
    throw InvalidArgument("count_roots: degenerate rectangle");
  const bool crosses_cut = r.re_min < 0.0 && r.im_min < 0.0 && r.im_max > 0.0;
  if (!crosses_cut) {
    if (r.re_min < 0.0 && (r.im_min == 0.0 || r.im_max == 0.0))
      throw InvalidArgument("count_roots: rectangle edge lies on the branch cut");
    return {{{r.re_min, r.im_min}, {r.re_max, r.im_min}, {r.re_max, r.im_max},
             {r.re_min, r.im_max}, {r.re_min, r.im_min}}};
  }
  if (!(eps > 0.0) || eps >= r.im_max || -eps <= r.im_min)
    throw InvalidArgument("count_roots: indentation eps does not fit in the rectangle");
  if (r.re_max > 2.0 * eps) {
    return {{{r.re_min, r.im_min}, {r.re_max, r.im_min}, {r.re_max, r.im_max}, {r.re_min, r.im_max},
             {r.re_min, eps}, {eps, eps}, {eps, -eps}, {r.re_min, -eps}, {r.re_min, r.im_min}}};
  }
  return {{{r.re_min, eps}, {r.re_max, eps}, {r.re_max, r.im_max}, {r.re_min, r.im_max},
           {r.re_min, eps}},
          {{r.re_min, r.im_min}, {r.re_max, r.im_min}, {r.re_max, -eps}, {r.re_min, -eps},
           {r.re_min, r.im_min}}};
}

// Total change of arg P along the polyline with `per_edge` steps per edge.
// Returns false if some step changed the argument by pi/2 or more.
bool winding(const WaveParams& w, const Path& path, int per_edge, double& total,
             double& min_abs) {
  total = 0.0;
  bool fine = true;
  cplx prev = eval_char(path.front(), w);
  min_abs = std::abs(prev);
  for (std::size_t e = 0; e + 1 < path.size(); ++e) {
    const cplx a = path[e];
    const cplx b = path[e + 1];
    for (int k = 1; k <= per_edge; ++k) {
      const cplx z = a + (b - a) * (static_cast<double>(k) / per_edge);
      const cplx p = eval_char(z, w);
      min_abs = std::min(min_abs, std::abs(p));
      const double d = std::arg(p / prev);
      if (std::abs(d) >= std::numbers::pi / 2.0) fine = false;
      total += d;
      prev = p;
    }
  }
  return fine;
}

}  // namespace

int count_roots_argument_principle(const WaveParams& w, const Rectangle& r, double eps) {
  int count = 0;
  for (const Path& path : contour_paths(r, eps)) {
    double total = 0.0;
    double min_abs = 0.0;
    int per_edge = 64;
    bool ok = false;
    for (; per_edge <= (1 << 20); per_edge *= 2) {
      if (winding(w, path, per_edge, total, min_abs)) {
        ok = true;
        break;
      }
    }
    if (!ok) {
      std::ostringstream diag;
      diag << "{\"samples_per_edge\": " << per_edge / 2 << "}";
      throw NumericalError("count_roots: argument changes too fast along the contour", diag.str());
    }
    if (min_abs < 1e-12 * std::max(1.0, w.hprime()))
      throw InvalidArgument("count_roots: contour passes through a root of P");
    const double turns = total / (2.0 * std::numbers::pi);
    count += static_cast<int>(std::lround(turns));
  }
  return count;
}

}  // namespace fkdvb
