#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>

namespace mollify::quad {

/// Smallest even panel count n >= min_panels with (b - a) / n <= max_spacing.
inline std::size_t even_panels(double length, double max_spacing, std::size_t min_panels = 2) {
  auto n = static_cast<std::size_t>(std::ceil(length / max_spacing - 1e-9));
  if (n < min_panels) n = min_panels;
  if (n % 2 != 0) ++n;
  return n;
}

/// Composite Simpson rule with n (even) panels on [a, b].
template <typename F>
double simpson(F&& f, double a, double b, std::size_t n) {
  if (n < 2 || n % 2 != 0) throw std::invalid_argument("simpson: panel count must be even and >= 2");
  const double h = (b - a) / static_cast<double>(n);
  double odd = 0.0;
  double even = 0.0;
  for (std::size_t j = 1; j < n; ++j) {
    const double v = f(a + static_cast<double>(j) * h);
    if (j % 2 == 1) odd += v; else even += v;
  }
  return h / 3.0 * (f(a) + f(b) + 4.0 * odd + 2.0 * even);
}

/// Composite trapezoidal rule with n panels on [a, b].
template <typename F>
double trapezoid(F&& f, double a, double b, std::size_t n) {
  if (n < 1) throw std::invalid_argument("trapezoid: panel count must be >= 1");
  const double h = (b - a) / static_cast<double>(n);
  double sum = 0.5 * (f(a) + f(b));
  for (std::size_t j = 1; j < n; ++j) sum += f(a + static_cast<double>(j) * h);
  return h * sum;
}

}  // namespace mollify::quad
