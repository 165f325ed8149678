#pragma once

// The linearised operator tau d^2 + D^a - h'(phi_-) on a truncated half-line
// [-L, 0], closed on the left by the exponential tail e^{lambda xi} or by a
// homogeneous Dirichlet condition, with a Dirichlet value at 0.

#include <array>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "fkdvb/charroots.hpp"
#include "fkdvb/grid.hpp"

namespace fkdvb {

enum class LeftBC { AsymptoticExponential, Dirichlet0 };

struct AssembleOptions {
  /// Coefficient of h' on the diagonal; -1 is the operator itself, +1 the
  /// sign-flipped probe used to show the singular-value check is not vacuous.
  double shift_sign = -1.0;
  /// Assembly warns when the exponential's interior residual exceeds
  /// consistency_constant * h^(2 - alpha).
  double consistency_constant = 1.0;
};

/// Row 0 holds the left condition: for AsymptoticExponential the Robin
/// relation v' = lambda v (second-order one-sided difference), otherwise
/// v = 0. For tau = 0 the exponential closure alone fixes the left end and
/// row 0 is the collocation row at xi = 0. Rows 1..n-2 are collocation rows, row n-1 is v(0) = C. The part of
/// D^a coming from xi < -L is the exponential tail continued from v_0 (or
/// nothing for Dirichlet0).
class LinearizedOperator {
 public:
  const WaveParams& params() const noexcept { return params_; }
  const Grid& grid() const noexcept { return grid_; }
  const Eigen::MatrixXd& matrix() const noexcept { return matrix_; }
  LeftBC bc_left() const noexcept { return bc_left_; }
  double lambda() const noexcept { return lambda_; }
  double right_value() const noexcept { return right_value_; }
  /// max over interior rows of |row . e^{lambda xi}|, measured at assembly.
  double consistency_residual() const noexcept { return consistency_; }
  const std::vector<std::string>& warnings() const noexcept { return warnings_; }

  /// Interior rows (1..n-2) applied to v; entry k is row k+1.
  std::vector<double> apply_interior(const std::vector<double>& v) const;
  Eigen::VectorXd rhs() const;

 private:
  friend LinearizedOperator assemble(const WaveParams&, const Grid&, LeftBC, double,
                                     const AssembleOptions&);
  LinearizedOperator(WaveParams w, Grid g) : params_(w), grid_(g) {}
  WaveParams params_;
  Grid grid_;
  Eigen::MatrixXd matrix_;
  LeftBC bc_left_ = LeftBC::AsymptoticExponential;
  double lambda_ = 0.0;
  double right_value_ = 0.0;
  double consistency_ = 0.0;
  std::vector<std::string> warnings_;
};

LinearizedOperator assemble(const WaveParams& w, const Grid& grid, LeftBC bc_left,
                            double right_value, const AssembleOptions& opt = {});

/// Dense LU solve. Throws NumericalError when the reciprocal condition
/// estimate is below 1e-12.
GridFunction solve_bvp(const LinearizedOperator& op);

struct NullSpaceReport {
  std::array<double, 3> smallest{};  // ascending
  double sigma_max = 0.0;
  /// Number of singular values with sigma / sigma_max < 1e-10.
  std::size_t kernel_dimension = 0;
};

/// Singular values of the matrix (divide-and-conquer SVD, values only).
NullSpaceReport null_space_check(const LinearizedOperator& op);

}  // namespace fkdvb
