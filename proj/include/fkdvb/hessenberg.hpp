#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace fkdvb {

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// LU factorisation with partial pivoting for square matrices that are dense
/// on and below the diagonal but have at most `p` nonzero superdiagonals
/// (p = 1 is lower Hessenberg). Discretised one-sided nonlocal operators plus
/// a short local stencil have this shape. Cost O(p n^2) instead of O(n^3).
///
/// The matrix is consumed: its storage holds the factors.
class BandedAboveLU {
 public:
  BandedAboveLU(RowMatrix&& a, std::size_t superdiagonals);

  std::size_t size() const noexcept { return n_; }
  std::vector<double> solve(std::span<const double> rhs) const;
  /// Smallest |pivot| / largest |pivot|; a cheap singularity indicator.
  double pivot_ratio() const noexcept { return pivot_ratio_; }

 private:
  RowMatrix lu_;  // factors of the index-reversed matrix
  std::vector<std::size_t> piv_;
  std::size_t n_;
  std::size_t p_;
  double pivot_ratio_ = 0.0;
};

}  // namespace fkdvb
