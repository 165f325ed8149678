#include "fkdvb/linops.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fkdvb/errors.hpp"
#include "fkdvb/fracops.hpp"

namespace fkdvb {

LinearizedOperator assemble(const WaveParams& w, const Grid& grid, LeftBC bc_left,
                            double right_value, const AssembleOptions& opt) {
  if (std::abs(grid.xmax()) > 1e-12 * std::max(1.0, std::abs(grid.xmin())))
    throw InvalidArgument("assemble: grid must end at xi = 0");
  if (grid.n() < 5) throw InvalidArgument("assemble: need at least 5 grid points");
  if (!std::isfinite(right_value)) throw InvalidArgument("assemble: non-finite boundary value");

  LinearizedOperator op(w, grid);
  op.bc_left_ = bc_left;
  op.right_value_ = right_value;
  op.lambda_ = find_lambda(w);
  const std::size_t n = grid.n();
  const double h = grid.h();
  const double tau = w.tau();
  const double lam = op.lambda_;
  const FracParams& p = w.frac();
  const L1Stencil st(n, h, p);
  Eigen::MatrixXd& A = op.matrix_;
  A.setZero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));

  auto collocation = [&](Eigen::Index row, std::size_t node) {
    for (std::size_t j = 0; j <= node; ++j) A(row, static_cast<Eigen::Index>(j)) = st.weight(node, j);
    if (bc_left == LeftBC::AsymptoticExponential)
      A(row, 0) += exponential_tail_response(lam, grid.x(node) - grid.xmin(), p);
    const auto i = static_cast<Eigen::Index>(node);
    if (tau != 0.0) {
      const double c = tau / (h * h);
      A(row, i - 1) += c;
      A(row, i) -= 2.0 * c;
      A(row, i + 1) += c;
    }
    A(row, i) += opt.shift_sign * w.hprime();
  };

  const auto ni = static_cast<Eigen::Index>(n);
  // With tau = 0 the operator is causal: each collocation row fixes v_k from
  // v_0..v_{k-1}, and the exponential continued from v_0 already is the left
  // condition. A Robin row would overdetermine the left end and leave v(0)
  // decoupled, so row 0 carries the equation at xi = 0 instead.
  if (bc_left == LeftBC::AsymptoticExponential && tau == 0.0) {
    collocation(0, n - 1);
  } else if (bc_left == LeftBC::AsymptoticExponential) {
    A(0, 0) = -3.0 / (2.0 * h) - lam;
    A(0, 1) = 4.0 / (2.0 * h);
    A(0, 2) = -1.0 / (2.0 * h);
  } else {
    A(0, 0) = 1.0;
  }
#pragma omp parallel for schedule(dynamic, 64)
  for (Eigen::Index i = 1; i < ni - 1; ++i) collocation(i, static_cast<std::size_t>(i));
  A(ni - 1, ni - 1) = 1.0;

  std::vector<double> e(n);
  for (std::size_t i = 0; i < n; ++i) e[i] = std::exp(lam * grid.x(i));
  op.consistency_ = max_abs(op.apply_interior(e));
  const double bound = opt.consistency_constant * std::pow(h, 2.0 - p.alpha());
  if (opt.shift_sign < 0.0 && op.consistency_ > bound) {
    std::ostringstream msg;
    msg << "assemble: interior residual of e^{lambda xi} is " << op.consistency_
        << " > " << bound << " (grid too coarse or domain too short)";
    op.warnings_.push_back(msg.str());
  }
  return op;
}

std::vector<double> LinearizedOperator::apply_interior(const std::vector<double>& v) const {
  const auto n = matrix_.rows();
  if (static_cast<Eigen::Index>(v.size()) != n)
    throw InvalidArgument("apply_interior: size mismatch");
  const Eigen::Map<const Eigen::VectorXd> x(v.data(), n);
  const Eigen::VectorXd y = matrix_.middleRows(1, n - 2) * x;
  return {y.data(), y.data() + y.size()};
}

Eigen::VectorXd LinearizedOperator::rhs() const {
  Eigen::VectorXd b = Eigen::VectorXd::Zero(matrix_.rows());
  b(b.size() - 1) = right_value_;
  return b;
}

GridFunction solve_bvp(const LinearizedOperator& op) {
  const Eigen::PartialPivLU<Eigen::MatrixXd> lu(op.matrix());
  const double rc = lu.rcond();
  if (!(rc >= 1e-12)) {
    std::ostringstream diag;
    diag << "{\"rcond\": " << rc << ", \"n\": " << op.matrix().rows() << "}";
    throw NumericalError("solve_bvp: matrix singular or ill-conditioned", diag.str());
  }
  const Eigen::VectorXd v = lu.solve(op.rhs());
  std::vector<double> vals(v.data(), v.data() + v.size());
  TailModel tail = TailModel::zero();
  if (op.bc_left() == LeftBC::AsymptoticExponential) {
    const double amp = vals.front() * std::exp(-op.lambda() * op.grid().xmin());
    if (std::isfinite(amp) && amp != 0.0)
      tail = TailModel::exponential_approach(0.0, amp, op.lambda());
  }
  return GridFunction(op.grid(), std::move(vals), tail);
}

NullSpaceReport null_space_check(const LinearizedOperator& op) {
  Eigen::BDCSVD<Eigen::MatrixXd> svd(op.matrix());
  const Eigen::VectorXd& s = svd.singularValues();  // descending
  if (s.size() < 3 || !s.allFinite()) throw NumericalError("null_space_check: SVD failed");
  NullSpaceReport r;
  r.sigma_max = s(0);
  for (int k = 0; k < 3; ++k) r.smallest[static_cast<std::size_t>(k)] = s(s.size() - 1 - k);
  for (Eigen::Index k = 0; k < s.size(); ++k)
    if (s(k) < 1e-10 * r.sigma_max) ++r.kernel_dimension;
  return r;
}

}  // namespace fkdvb
