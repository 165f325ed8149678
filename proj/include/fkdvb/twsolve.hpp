#pragma once

// Travelling waves  D^a phi + tau phi'' = h(phi),  phi(-inf) = phi_-,
// phi(+inf) = phi_+, and their validation by time evolution in the frame
// moving with speed c.

#include <string>
#include <vector>

#include "fkdvb/charroots.hpp"
#include "fkdvb/grid.hpp"

namespace fkdvb {

/// D^a phi + tau phi'' - h(phi) at every node. D^a uses phi.tail, the second
/// difference takes its ghost values from phi.tail and phi.right_tail.
std::vector<double> nonlinear_residual(const GridFunction& phi, const WaveParams& w);

/// phi_+ + (phi_- - phi_+) / (1 + e^xi) with tails ExponentialApproach(phi_-, ., lambda)
/// and Constant(phi_+).
GridFunction initial_guess(const WaveParams& w, const Grid& grid);

struct NewtonOptions {
  double tol = 1e-8;
  int max_iter = 30;
  double min_step = 0x1.0p-10;
  double armijo = 1e-4;
  /// Node where phi = (phi_- + phi_+)/2 is imposed; must be a grid node.
  double phase_position = 0.0;
};

struct WaveProfile {
  GridFunction phi;
  WaveParams params;
  /// max |nonlinear_residual(phi)|, over all nodes for tau > 0 and all but
  /// the left end for tau = 0.
  double residual_norm = 0.0;
  /// |collocation residual| of the row given up for the phase condition,
  /// evaluated with the Constant(phi_+) closure on the right. For tau > 0 it
  /// measures how far the truncated profile is from phi_+ at the right end.
  double dropped_row_residual = 0.0;
  double decay_rate_left = 0.0;  // NaN when the fit window is too short
  /// |phi - phi_-| at the left end and |phi - phi_+| at the right end, in
  /// units of phi_- - phi_+. A warning is added above 1e-3.
  double left_deviation = 0.0;
  double right_deviation = 0.0;
  int iterations = 0;
  std::vector<double> history;  // residual_norm per iterate
  std::vector<std::string> warnings;
};

/// Damped Newton (Armijo backtracking on the 2-norm) with the exact Jacobian,
/// which is lower Hessenberg and is factorised in O(n^2). phi(phase_position)
/// = (phi_- + phi_+)/2 takes the place of the right-end collocation row
/// (tau > 0) or of the degenerate left-end row (tau = 0). For tau > 0 the
/// returned phi continues flat beyond the right end at the level that makes
/// the right-end row hold, so that nonlinear_residual(phi) vanishes there.
WaveProfile solve_wave(const WaveParams& w, const Grid& grid, const NewtonOptions& opt = {});
/// Same, starting from the values of `start` (its tails are replaced).
WaveProfile solve_wave(const WaveParams& w, const GridFunction& start, const NewtonOptions& opt = {});

/// Least-squares slope of log|phi - phi_-| over the longest run of nodes left
/// of 0 where |phi - phi_-| / (phi_- - phi_+) lies in [lo, hi]. Throws
/// NumericalError when fewer than min_points nodes qualify.
double measure_decay_rate(const GridFunction& phi, double phi_minus, double phi_plus,
                          double lo = 1e-8, double hi = 1e-2, std::size_t min_points = 20);
double measure_decay_rate(const WaveProfile& p);

enum class TimeScheme { ImplicitLinear_ExplicitNonlinear };

struct EvolveConfig {
  double dt = 0.1;
  double t_end = 20.0;
  TimeScheme scheme = TimeScheme::ImplicitLinear_ExplicitNonlinear;
};

struct EvolveSummary {
  double max_drift = 0.0;       // max over steps of ||w(t) - phi0||_inf
  double final_rhs_norm = 0.0;  // ||d_xi R(w)||_inf at t_end
  double dt_bound = 0.0;
  std::size_t steps = 0;
  std::vector<double> drift;  // after each step
  std::vector<double> final_state;
};

/// d_xi R(w) at interior nodes (central differences), 0 at the two ends.
std::vector<double> moving_frame_rhs(const GridFunction& w, const WaveParams& p);

/// Largest dt for which the implicit/explicit Euler step is linearly stable
/// for every grid mode, with the advection speed |h'(w)| <= max_speed.
double stability_bound(const WaveParams& p, const Grid& grid, double max_speed);

/// Integrates w_t = d_xi(D^a w + tau w'' - h(w)) with the end values held
/// fixed: the linear part is implicit (factorised once), h explicit.
EvolveSummary evolve_moving_frame(const GridFunction& phi0, const WaveParams& p,
                                  const EvolveConfig& cfg);

}  // namespace fkdvb
