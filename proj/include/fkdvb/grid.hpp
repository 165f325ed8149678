#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace fkdvb {

/// Uniform 1-D grid with n points on [xmin, xmax].
class Grid {
 public:
  Grid(double xmin, double xmax, std::size_t n);

  /// Grid with the given spacing; (xmax - xmin) / h must be an integer to 1e-9.
  static Grid with_spacing(double xmin, double xmax, double h);

  double xmin() const noexcept { return xmin_; }
  double xmax() const noexcept { return xmax_; }
  std::size_t n() const noexcept { return n_; }
  double h() const noexcept { return h_; }
  double x(std::size_t i) const noexcept {
    return i + 1 == n_ ? xmax_ : xmin_ + static_cast<double>(i) * h_;
  }
  std::vector<double> nodes() const;

  /// Index of the node closest to x (clamped to the grid).
  std::size_t nearest_index(double x) const noexcept;

 private:
  double xmin_;
  double xmax_;
  std::size_t n_;
  double h_;
};

/// Behaviour of a grid function beyond the left end of its grid, needed
/// because the fractional derivative integrates from minus infinity.
/// On the tail f(y) = level + amplitude * exp(rate * y).
class TailModel {
 public:
  enum class Kind { Zero, Constant, ExponentialApproach };

  static TailModel zero() { return TailModel(Kind::Zero, 0.0, 0.0, 0.0); }
  static TailModel constant(double level) { return TailModel(Kind::Constant, level, 0.0, 0.0); }
  static TailModel exponential_approach(double level, double amplitude, double rate);

  Kind kind() const noexcept { return kind_; }
  double level() const noexcept { return level_; }
  double amplitude() const noexcept { return amplitude_; }
  double rate() const noexcept { return rate_; }

  double value(double y) const;
  double slope(double y) const;
  /// amplitude * exp(rate * x), the deviation from the level at x (0 unless exponential).
  double offset_at(double x) const;
  /// True when the modelled function tends to 0 at minus infinity.
  bool decays_to_zero() const noexcept { return level_ == 0.0; }

 private:
  TailModel(Kind k, double level, double amplitude, double rate)
      : kind_(k), level_(level), amplitude_(amplitude), rate_(rate) {}
  Kind kind_;
  double level_;
  double amplitude_;
  double rate_;
};

/// Samples of a function on a uniform grid plus its far-field models.
/// `tail` describes x < xmin (used by the fractional derivative and by
/// second differences); `right_tail` describes x > xmax and is only used
/// for ghost values in second differences.
struct GridFunction {
  Grid grid;
  std::vector<double> values;
  TailModel tail = TailModel::zero();
  TailModel right_tail = TailModel::zero();

  GridFunction(Grid g, std::vector<double> v, TailModel left = TailModel::zero(),
               TailModel right = TailModel::zero());

  static GridFunction sample(const Grid& g, const std::function<double(double)>& f,
                             TailModel left = TailModel::zero(),
                             TailModel right = TailModel::zero());

  std::size_t size() const noexcept { return values.size(); }
  double operator[](std::size_t i) const noexcept { return values[i]; }
};

/// Fourth-order finite-difference derivative (central in the interior,
/// one-sided in the two outermost points at each end). Requires n >= 5.
std::vector<double> derivative(std::span<const double> values, double h);

/// Second differences with ghost values taken from the tail models.
std::vector<double> second_difference(const GridFunction& f);

/// Composite trapezoid rule for the integral of f^2 over the grid.
double l2_norm_squared(const GridFunction& f);

double max_abs(std::span<const double> v);

}  // namespace fkdvb
