#include "fkdvb/hessenberg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "fkdvb/errors.hpp"

namespace fkdvb {

// Reversing both row and column order turns "p superdiagonals" into
// "p subdiagonals", for which Gaussian elimination with partial pivoting only
// ever touches the p rows below the pivot. For a row-major matrix the
// reversal is a reversal of the flat storage.
BandedAboveLU::BandedAboveLU(RowMatrix&& a, std::size_t superdiagonals)
    : lu_(std::move(a)), n_(static_cast<std::size_t>(lu_.rows())), p_(superdiagonals) {
  if (lu_.rows() != lu_.cols()) throw InvalidArgument("BandedAboveLU: matrix must be square");
  std::reverse(lu_.data(), lu_.data() + lu_.size());
  piv_.resize(n_);
  double pmin = std::numeric_limits<double>::infinity();
  double pmax = 0.0;
  for (std::size_t k = 0; k < n_; ++k) {
    const std::size_t last = std::min(n_ - 1, k + p_);
    std::size_t r = k;
    for (std::size_t i = k + 1; i <= last; ++i)
      if (std::abs(lu_(i, k)) > std::abs(lu_(r, k))) r = i;
    piv_[k] = r;
    if (r != k)
      for (std::size_t j = k; j < n_; ++j) std::swap(lu_(k, j), lu_(r, j));
    const double pivot = lu_(k, k);
    if (pivot == 0.0 || !std::isfinite(pivot)) {
      std::ostringstream diag;
      diag << "{\"step\": " << k << ", \"n\": " << n_ << "}";
      throw NumericalError("BandedAboveLU: singular matrix", diag.str());
    }
    pmin = std::min(pmin, std::abs(pivot));
    pmax = std::max(pmax, std::abs(pivot));
    const double* prow = &lu_(k, 0);
    for (std::size_t i = k + 1; i <= last; ++i) {
      double* row = &lu_(i, 0);
      const double l = row[k] / pivot;
      row[k] = l;
      if (l == 0.0) continue;
      for (std::size_t j = k + 1; j < n_; ++j) row[j] -= l * prow[j];
    }
  }
  pivot_ratio_ = pmin / pmax;
}

std::vector<double> BandedAboveLU::solve(std::span<const double> rhs) const {
  if (rhs.size() != n_) throw InvalidArgument("BandedAboveLU::solve: size mismatch");
  std::vector<double> y(rhs.rbegin(), rhs.rend());
  for (std::size_t k = 0; k < n_; ++k) {
    std::swap(y[k], y[piv_[k]]);
    const std::size_t last = std::min(n_ - 1, k + p_);
    for (std::size_t i = k + 1; i <= last; ++i) y[i] -= lu_(i, k) * y[k];
  }
  for (std::size_t k = n_; k-- > 0;) {
    const double* row = &lu_(k, 0);
    double acc = y[k];
    for (std::size_t j = k + 1; j < n_; ++j) acc -= row[j] * y[j];
    y[k] = acc / row[k];
  }
  std::reverse(y.begin(), y.end());
  return y;
}

}  // namespace fkdvb
