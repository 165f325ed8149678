#include "fkdvb/kernels.hpp"

#include <cstddef>

#include "fkdvb/errors.hpp"

namespace fkdvb::kernels {

namespace {

void check_l1(std::span<const double> f, std::span<const double> b, std::span<double> out) {
  if (out.size() != f.size() || (f.size() > 1 && b.size() + 1 < f.size()))
    throw InvalidArgument("l1_history: inconsistent sizes");
}

void check_linear(std::span<const double> d, std::span<const double> a,
                  std::span<const double> c, std::span<double> out) {
  if (out.size() != d.size() || a.size() < d.size() || c.size() < d.size())
    throw InvalidArgument("linear_history: inconsistent sizes");
}

inline double l1_row(std::span<const double> f, std::span<const double> b, std::size_t i) {
  double acc = 0.0;
  for (std::size_t k = 0; k < i; ++k) acc += b[k] * (f[i - k] - f[i - k - 1]);
  return acc;
}

inline double linear_row(std::span<const double> d, std::span<const double> a,
                         std::span<const double> c, std::size_t i) {
  double acc = 0.0;
  for (std::size_t k = 1; k <= i; ++k) acc += a[k] * d[i - k] + c[k] * d[i - k + 1];
  return acc;
}

}  // namespace

void l1_history_serial(std::span<const double> f, std::span<const double> b,
                       std::span<double> out) {
  check_l1(f, b, out);
  for (std::size_t i = 0; i < f.size(); ++i) out[i] = l1_row(f, b, i);
}

void l1_history_omp(std::span<const double> f, std::span<const double> b, std::span<double> out) {
  check_l1(f, b, out);
  const auto n = static_cast<long>(f.size());
#pragma omp parallel for schedule(dynamic, 64)
  for (long i = 0; i < n; ++i) out[i] = l1_row(f, b, static_cast<std::size_t>(i));
}

void linear_history_serial(std::span<const double> d, std::span<const double> a,
                           std::span<const double> c, std::span<double> out) {
  check_linear(d, a, c, out);
  for (std::size_t i = 0; i < d.size(); ++i) out[i] = linear_row(d, a, c, i);
}

void linear_history_omp(std::span<const double> d, std::span<const double> a,
                        std::span<const double> c, std::span<double> out) {
  check_linear(d, a, c, out);
  const auto n = static_cast<long>(d.size());
#pragma omp parallel for schedule(dynamic, 64)
  for (long i = 0; i < n; ++i) out[i] = linear_row(d, a, c, static_cast<std::size_t>(i));
}

}  // namespace fkdvb::kernels
