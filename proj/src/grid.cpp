#include "fkdvb/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fkdvb/errors.hpp"

namespace fkdvb {

Grid::Grid(double xmin, double xmax, std::size_t n) : xmin_(xmin), xmax_(xmax), n_(n) {
  if (!std::isfinite(xmin) || !std::isfinite(xmax) || !(xmin < xmax))
    throw InvalidArgument("Grid: require finite xmin < xmax");
  if (n < 3) throw InvalidArgument("Grid: require n >= 3 points");
  h_ = (xmax - xmin) / static_cast<double>(n - 1);
}

Grid Grid::with_spacing(double xmin, double xmax, double h) {
  if (!(h > 0.0)) throw InvalidArgument("Grid: spacing must be positive");
  const double cells = (xmax - xmin) / h;
  const double rounded = std::round(cells);
  if (std::abs(cells - rounded) > 1e-9 * std::max(1.0, cells))
    throw InvalidArgument("Grid: (xmax - xmin) / h = " + std::to_string(cells) +
                          " is not an integer");
  return Grid(xmin, xmax, static_cast<std::size_t>(rounded) + 1);
}

std::vector<double> Grid::nodes() const {
  std::vector<double> x(n_);
  for (std::size_t i = 0; i < n_; ++i) x[i] = this->x(i);
  return x;
}

std::size_t Grid::nearest_index(double x) const noexcept {
  const double r = std::round((x - xmin_) / h_);
  if (r <= 0.0) return 0;
  return std::min(n_ - 1, static_cast<std::size_t>(r));
}

TailModel TailModel::exponential_approach(double level, double amplitude, double rate) {
  if (!(rate > 0.0)) throw InvalidArgument("TailModel: exponential rate must be > 0");
  if (!std::isfinite(level) || !std::isfinite(amplitude))
    throw InvalidArgument("TailModel: non-finite level or amplitude");
  return TailModel(Kind::ExponentialApproach, level, amplitude, rate);
}

double TailModel::value(double y) const { return level_ + offset_at(y); }

double TailModel::slope(double y) const {
  return kind_ == Kind::ExponentialApproach ? rate_ * offset_at(y) : 0.0;
}

double TailModel::offset_at(double x) const {
  return kind_ == Kind::ExponentialApproach ? amplitude_ * std::exp(rate_ * x) : 0.0;
}

GridFunction::GridFunction(Grid g, std::vector<double> v, TailModel left, TailModel right)
    : grid(g), values(std::move(v)), tail(left), right_tail(right) {
  if (values.size() != grid.n())
    throw InvalidArgument("GridFunction: " + std::to_string(values.size()) +
                          " values for a grid of " + std::to_string(grid.n()) + " points");
  for (double x : values)
    if (!std::isfinite(x)) throw InvalidArgument("GridFunction: non-finite value");
}

GridFunction GridFunction::sample(const Grid& g, const std::function<double(double)>& f,
                                  TailModel left, TailModel right) {
  std::vector<double> v(g.n());
  for (std::size_t i = 0; i < g.n(); ++i) v[i] = f(g.x(i));
  return GridFunction(g, std::move(v), left, right);
}

std::vector<double> derivative(std::span<const double> f, double h) {
  const std::size_t n = f.size();
  if (n < 5) throw InvalidArgument("derivative: need at least 5 points");
  std::vector<double> d(n);
  const double s = 1.0 / (12.0 * h);
  d[0] = (-25 * f[0] + 48 * f[1] - 36 * f[2] + 16 * f[3] - 3 * f[4]) * s;
  d[1] = (-3 * f[0] - 10 * f[1] + 18 * f[2] - 6 * f[3] + f[4]) * s;
  for (std::size_t i = 2; i + 2 < n; ++i)
    d[i] = (f[i - 2] - 8 * f[i - 1] + 8 * f[i + 1] - f[i + 2]) * s;
  const std::size_t m = n - 1;
  d[m] = (25 * f[m] - 48 * f[m - 1] + 36 * f[m - 2] - 16 * f[m - 3] + 3 * f[m - 4]) * s;
  d[m - 1] = (3 * f[m] + 10 * f[m - 1] - 18 * f[m - 2] + 6 * f[m - 3] - f[m - 4]) * s;
  return d;
}

std::vector<double> second_difference(const GridFunction& f) {
  const std::size_t n = f.size();
  const double h = f.grid.h();
  const double left_ghost = f.tail.value(f.grid.xmin() - h);
  const double right_ghost = f.right_tail.value(f.grid.xmax() + h);
  std::vector<double> d2(n);
  const double s = 1.0 / (h * h);
  for (std::size_t i = 0; i < n; ++i) {
    const double lo = i == 0 ? left_ghost : f.values[i - 1];
    const double hi = i + 1 == n ? right_ghost : f.values[i + 1];
    d2[i] = (lo - 2.0 * f.values[i] + hi) * s;
  }
  return d2;
}

double l2_norm_squared(const GridFunction& f) {
  double sum = 0.0;
  for (double v : f.values) sum += v * v;
  sum -= 0.5 * (f.values.front() * f.values.front() + f.values.back() * f.values.back());
  return sum * f.grid.h();
}

double max_abs(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace fkdvb
