#include "fkdvb/twsolve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "fkdvb/errors.hpp"
#include "fkdvb/fracops.hpp"
#include "fkdvb/hessenberg.hpp"

namespace fkdvb {

namespace {

// Exponential approach to phi_- continued from the first node value.
TailModel left_tail(double phi_minus, double lambda, double x0, double phi0) {
  const double amp = (phi0 - phi_minus) * std::exp(-lambda * x0);
  if (!std::isfinite(amp))
    throw InvalidArgument("left tail: lambda * L too large for the exponential tail model");
  return TailModel::exponential_approach(phi_minus, amp, lambda);
}

GridFunction with_wave_tails(const Grid& g, std::vector<double> v, const WaveParams& w,
                             double lambda) {
  const TailModel left = left_tail(w.phi_minus(), lambda, g.xmin(), v.front());
  return GridFunction(g, std::move(v), left, TailModel::constant(w.phi_plus()));
}

std::size_t phase_index(const Grid& g, double position) {
  const std::size_t k = g.nearest_index(position);
  if (std::abs(g.x(k) - position) > 1e-9 * g.h() || k == 0 || k + 1 == g.n())
    throw InvalidArgument("solve_wave: phase position " + std::to_string(position) +
                          " is not an interior grid node");
  return k;
}

std::string json_array(const std::vector<double>& v) {
  std::ostringstream o;
  o.precision(6);
  o << '[';
  for (std::size_t i = 0; i < v.size(); ++i) o << (i ? ", " : "") << v[i];
  o << ']';
  return o.str();
}

double norm2(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

}  // namespace

std::vector<double> nonlinear_residual(const GridFunction& phi, const WaveParams& w) {
  GridFunction d = apply_dalpha(phi, w.frac());
  std::vector<double> r = std::move(d.values);
  if (w.tau() != 0.0) {
    const auto d2 = second_difference(phi);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] += w.tau() * d2[i];
  }
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= w.flux(phi.values[i]);
  return r;
}

GridFunction initial_guess(const WaveParams& w, const Grid& grid) {
  const double pm = w.phi_minus(), pp = w.phi_plus();
  std::vector<double> v(grid.n());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = pp + (pm - pp) / (1.0 + std::exp(grid.x(i)));
  return with_wave_tails(grid, std::move(v), w, find_lambda(w));
}

WaveProfile solve_wave(const WaveParams& w, const Grid& grid, const NewtonOptions& opt) {
  return solve_wave(w, initial_guess(w, grid), opt);
}

WaveProfile solve_wave(const WaveParams& w, const GridFunction& start, const NewtonOptions& opt) {
  const Grid& grid = start.grid;
  const std::size_t n = grid.n();
  const std::size_t k = phase_index(grid, opt.phase_position);
  const double m = 0.5 * (w.phi_minus() + w.phi_plus());
  const double lam = find_lambda(w);
  const double h = grid.h();
  const double tau = w.tau();
  // One collocation row is left out so that the phase row fits. Without
  // dispersion R_0 is (phi_0 - phi_-)^2 up to rounding and says nothing.
  // With dispersion R_{n-1} is the only row that sees the value beyond the
  // right end; imposing it pins phi to phi_+ there although the tail decays
  // algebraically, and trading R_k for the phase row instead leaves a kink
  // mode at xi_k that only the distant right end suppresses (the Jacobian is
  // then nearly singular). Without that row the equations are solved left to
  // right, like the tau = 0 system.
  const std::size_t first = tau == 0.0 ? 1 : 0;  // rows first..first+n-2 are imposed
  const std::size_t dropped = tau == 0.0 ? 0 : n - 1;
  const L1Stencil st(n, h, w.frac());
  std::vector<double> resp(n);
  for (std::size_t i = 0; i < n; ++i)
    resp[i] = exponential_tail_response(lam, grid.x(i) - grid.xmin(), w.frac());
  const double ghost = std::exp(-lam * h);

  const GridFunction guess = with_wave_tails(grid, start.values, w, lam);
  if (!(guess.values.front() > m && guess.values.back() < m))
    throw InvalidArgument("solve_wave: phase value outside the range of the initial guess");
  std::vector<double> phi = guess.values;

  // Equation r < n-1 is R_{first+r}, the last one is phi_k = m; R_i involves
  // phi_0..phi_{i+1}, so the Jacobian is lower Hessenberg.
  auto equations = [&](const std::vector<double>& v, std::vector<double>* full) {
    auto R = nonlinear_residual(with_wave_tails(grid, v, w, lam), w);
    std::vector<double> e(n);
    for (std::size_t r = 0; r + 1 < n; ++r) e[r] = R[first + r];
    e[n - 1] = v[k] - m;
    if (full) *full = std::move(R);
    return e;
  };

  auto jacobian = [&](const std::vector<double>& v) {
    RowMatrix J = RowMatrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    const long rows = static_cast<long>(n);
#pragma omp parallel for schedule(dynamic, 64)
    for (long rl = 0; rl < rows; ++rl) {
      const auto r = static_cast<std::size_t>(rl);
      double* row = J.data() + rl * rows;
      if (r + 1 == n) {
        row[k] = 1.0;
        continue;
      }
      const std::size_t i = first + r;
      for (std::size_t j = 0; j <= i; ++j) row[j] = st.weight(i, j);
      row[0] += resp[i];
      if (tau != 0.0) {
        const double c = tau / (h * h);
        if (i > 0) row[i - 1] += c;
        row[i] -= 2.0 * c;
        row[i + 1] += c;  // i < n-1 here
        if (i == 0) row[0] += c * ghost;
      }
      row[i] -= w.flux_slope(v[i]);
    }
    return J;
  };

  WaveProfile out{guess, w, 0.0, 0.0, 0.0, 0.0, 0.0, 0, {}, {}};
  std::vector<double> E = equations(phi, nullptr);
  auto eq_norm = [&](const std::vector<double>& e) { return max_abs(e); };
  double res = eq_norm(E);
  out.history.push_back(res);
  int it = 0;
  while (res > opt.tol) {
    if (it == opt.max_iter) {
      std::ostringstream diag;
      diag << "{\"iterations\": " << it << ", \"residual_history\": " << json_array(out.history)
           << "}";
      throw NumericalError("solve_wave: Newton did not converge", diag.str());
    }
    ++it;
    std::vector<double> neg(n);
    for (std::size_t i = 0; i < n; ++i) neg[i] = -E[i];
    const BandedAboveLU lu(jacobian(phi), 1);
    const auto delta = lu.solve(neg);

    const double base = norm2(E);
    double theta = 1.0;
    std::vector<double> trial(n), Et;
    for (;;) {
      for (std::size_t i = 0; i < n; ++i) trial[i] = phi[i] + theta * delta[i];
      bool finite = std::all_of(trial.begin(), trial.end(), [](double x) { return std::isfinite(x); });
      if (finite) {
        Et = equations(trial, nullptr);
        if (norm2(Et) <= (1.0 - opt.armijo * theta) * base) break;
      }
      if (theta / 2.0 < opt.min_step) {
        if (!finite) {
          std::ostringstream diag;
          diag << "{\"iterations\": " << it
               << ", \"residual_history\": " << json_array(out.history) << "}";
          throw NumericalError("solve_wave: Newton step produced non-finite values", diag.str());
        }
        out.warnings.push_back("Armijo backtracking hit the minimum step at iteration " +
                               std::to_string(it));
        break;
      }
      theta /= 2.0;
    }
    phi.swap(trial);
    E.swap(Et);
    res = eq_norm(E);
    out.history.push_back(res);
  }

  std::vector<double> R;
  E = equations(phi, &R);
  out.phi = with_wave_tails(grid, phi, w, lam);
  out.iterations = it;
  out.dropped_row_residual = std::abs(R[dropped]);
  if (tau != 0.0) {
    // Continue flat at the level that satisfies the right-end row; R_{n-1}
    // is linear in the value beyond the end with slope tau / h^2.
    const double level = w.phi_plus() - R[n - 1] * h * h / tau;
    out.phi.right_tail = TailModel::constant(level);
    R = nonlinear_residual(out.phi, w);
  }
  std::vector<double> solved;
  for (std::size_t i = first; i < n; ++i) solved.push_back(R[i]);
  out.residual_norm = max_abs(solved);

  const double gap = w.phi_minus() - w.phi_plus();
  out.left_deviation = std::abs(phi.front() - w.phi_minus()) / gap;
  out.right_deviation = std::abs(phi.back() - w.phi_plus()) / gap;
  for (auto [dev, side] : {std::pair{out.left_deviation, "left"}, {out.right_deviation, "right"}})
    if (dev > 1e-3) {
      std::ostringstream msg;
      msg << "far-field state not attained at the " << side << " truncation point: deviation "
          << dev << " of phi_- - phi_+";
      out.warnings.push_back(msg.str());
    }
  try {
    out.decay_rate_left = measure_decay_rate(out);
  } catch (const NumericalError& e) {
    out.decay_rate_left = std::numeric_limits<double>::quiet_NaN();
    out.warnings.push_back(e.what());
  }
  return out;
}

double measure_decay_rate(const GridFunction& phi, double phi_minus, double phi_plus, double lo,
                          double hi, std::size_t min_points) {
  const double gap = phi_minus - phi_plus;
  if (!(gap > 0.0)) throw InvalidArgument("measure_decay_rate: need phi_- > phi_+");
  std::size_t best_start = 0, best_len = 0, start = 0, len = 0;
  for (std::size_t i = 0; i < phi.size() && phi.grid.x(i) <= 0.0; ++i) {
    const double dev = std::abs(phi.values[i] - phi_minus) / gap;
    if (dev >= lo && dev <= hi) {
      if (len == 0) start = i;
      ++len;
      if (len > best_len) best_start = start, best_len = len;
    } else {
      len = 0;
    }
  }
  if (best_len < min_points) {
    std::ostringstream diag;
    diag << "{\"window_points\": " << best_len << ", \"required\": " << min_points;
    if (best_len > 0)
      diag << ", \"window\": [" << phi.grid.x(best_start) << ", "
           << phi.grid.x(best_start + best_len - 1) << "]";
    diag << "}";
    throw NumericalError("measure_decay_rate: exponential regime window too short", diag.str());
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = best_start; i < best_start + best_len; ++i) {
    const double x = phi.grid.x(i);
    const double y = std::log(std::abs(phi.values[i] - phi_minus));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double N = static_cast<double>(best_len);
  return (N * sxy - sx * sy) / (N * sxx - sx * sx);
}

double measure_decay_rate(const WaveProfile& p) {
  return measure_decay_rate(p.phi, p.params.phi_minus(), p.params.phi_plus());
}

// ------------------------------------------------------------------ evolution

std::vector<double> moving_frame_rhs(const GridFunction& w, const WaveParams& p) {
  const auto R = nonlinear_residual(w, p);
  const std::size_t n = R.size();
  const double s = 1.0 / (2.0 * w.grid.h());
  std::vector<double> out(n, 0.0);
  for (std::size_t i = 1; i + 1 < n; ++i) out[i] = (R[i + 1] - R[i - 1]) * s;
  return out;
}

double stability_bound(const WaveParams& p, const Grid& grid, double max_speed) {
  if (!(max_speed > 0.0)) return std::numeric_limits<double>::infinity();
  const double h = grid.h();
  const double a = p.alpha();
  const double damp = std::sin(a * std::numbers::pi / 2.0);
  const int samples = 8192;
  double best = std::numeric_limits<double>::infinity();
  for (int m = 1; m < samples; ++m) {
    const double k = std::numbers::pi / h * m / samples;
    const double s = std::sin(k * h) / h;
    best = std::min(best, 2.0 * std::pow(k, a) * damp / (max_speed * max_speed * s));
  }
  return best;
}

EvolveSummary evolve_moving_frame(const GridFunction& phi0, const WaveParams& p,
                                  const EvolveConfig& cfg) {
  if (!(cfg.dt > 0.0) || !(cfg.t_end > 0.0))
    throw InvalidArgument("evolve_moving_frame: dt and t_end must be positive");
  const Grid& grid = phi0.grid;
  const std::size_t n = grid.n();
  const double h = grid.h();
  const double tau = p.tau();
  const auto steps = static_cast<std::size_t>(std::ceil(cfg.t_end / cfg.dt - 1e-9));
  const double dt = cfg.t_end / static_cast<double>(steps);

  EvolveSummary out;
  const auto [lo_it, hi_it] = std::minmax_element(phi0.values.begin(), phi0.values.end());
  const double speed = std::max(std::abs(p.flux_slope(*lo_it)), std::abs(p.flux_slope(*hi_it)));
  out.dt_bound = stability_bound(p, grid, speed);
  if (dt > out.dt_bound) {
    std::ostringstream msg;
    msg << "evolve_moving_frame: dt = " << dt << " exceeds the stability bound " << out.dt_bound;
    throw InvalidArgument(msg.str());
  }

  // R(w) = M w + (terms from the tails) - h(w); only M enters the implicit part.
  const TailModel& lt = phi0.tail;
  std::vector<double> resp(n, 0.0);
  double ghost_lin = 0.0;
  if (lt.kind() == TailModel::Kind::ExponentialApproach) {
    for (std::size_t i = 0; i < n; ++i)
      resp[i] = exponential_tail_response(lt.rate(), grid.x(i) - grid.xmin(), p.frac());
    ghost_lin = std::exp(-lt.rate() * h);
  }
  const double c2 = tau / (h * h);
  const L1Stencil st(n, h, p.frac());
  auto M = [&](std::size_t i, std::size_t j) {
    double v = st.weight(i, j);
    if (j == 0) v += resp[i];
    if (tau != 0.0) {
      if (j == i) v -= 2.0 * c2;
      if (j + 1 == i || j == i + 1) v += c2;
      if (i == 0 && j == 0) v += c2 * ghost_lin;
    }
    return v;
  };

  RowMatrix S = RowMatrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  S(0, 0) = 1.0;
  S(static_cast<Eigen::Index>(n - 1), static_cast<Eigen::Index>(n - 1)) = 1.0;
  const double coef = dt / (2.0 * h);
  const long rows = static_cast<long>(n);
#pragma omp parallel for schedule(dynamic, 64)
  for (long rl = 1; rl < rows - 1; ++rl) {
    const auto i = static_cast<std::size_t>(rl);
    double* row = S.data() + rl * rows;
    const std::size_t last = std::min(n - 1, i + 2);
    for (std::size_t j = 0; j <= last; ++j) row[j] = -coef * (M(i + 1, j) - M(i - 1, j));
    row[i] += 1.0;
  }
  const BandedAboveLU lu(std::move(S), 2);

  const double blow = 10.0 * std::max({std::abs(p.phi_minus()), std::abs(p.phi_plus()), 1e-300});
  // Increment form (I - dt D M) (w' - w) = dt D R(w): an equilibrium gives
  // a zero right-hand side and stays put to the last bit.
  GridFunction cur(grid, phi0.values, phi0.tail, phi0.right_tail);
  std::vector<double>& w = cur.values;
  out.drift.reserve(steps);
  for (std::size_t step = 0; step < steps; ++step) {
    auto rhs = moving_frame_rhs(cur, p);
    for (double& r : rhs) r *= dt;
    const auto dw = lu.solve(rhs);
    for (std::size_t i = 0; i < n; ++i) w[i] += dw[i];
    double drift = 0.0, big = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      drift = std::max(drift, std::abs(w[i] - phi0.values[i]));
      big = std::max(big, std::abs(w[i]));
    }
    if (!(big <= blow)) {
      std::ostringstream diag;
      diag << "{\"step\": " << step + 1 << ", \"time\": " << dt * static_cast<double>(step + 1)
           << ", \"max_abs\": " << big << "}";
      throw NumericalError("evolve_moving_frame: blow-up detected", diag.str());
    }
    out.drift.push_back(drift);
    out.max_drift = std::max(out.max_drift, drift);
  }
  out.steps = steps;
  out.final_rhs_norm = max_abs(moving_frame_rhs(cur, p));
  out.final_state = std::move(w);
  return out;
}

}  // namespace fkdvb
