#pragma once

#include <cstddef>
#include <span>

namespace ballroll::fd {

// Fourth-order finite differences on uniformly spaced samples. Interior
// indices use five-point central stencils; the first and last two indices
// use one-sided stencils of the same order.

template <typename T>
T first_derivative(std::span<const T> f, std::size_t i, double h) {
  const std::size_t n = f.size();
  if (i >= 2 && i + 2 < n) {
    return T((f[i - 2] - 8.0 * f[i - 1] + 8.0 * f[i + 1] - f[i + 2]) / (12.0 * h));
  }
  if (i < 2) {
    const std::size_t k = i;
    const T d0 = T((-25.0 * f[0] + 48.0 * f[1] - 36.0 * f[2] + 16.0 * f[3] - 3.0 * f[4]) / (12.0 * h));
    if (k == 0) return d0;
    return T((-3.0 * f[0] - 10.0 * f[1] + 18.0 * f[2] - 6.0 * f[3] + f[4]) / (12.0 * h));
  }
  const std::size_t e = n - 1;
  if (i == e) {
    return T((25.0 * f[e] - 48.0 * f[e - 1] + 36.0 * f[e - 2] - 16.0 * f[e - 3] + 3.0 * f[e - 4]) /
             (12.0 * h));
  }
  return T((3.0 * f[e] + 10.0 * f[e - 1] - 18.0 * f[e - 2] + 6.0 * f[e - 3] - f[e - 4]) / (12.0 * h));
}

template <typename T>
T second_derivative(std::span<const T> f, std::size_t i, double h) {
  const std::size_t n = f.size();
  const double h2 = h * h;
  if (i >= 2 && i + 2 < n) {
    return T((-f[i - 2] + 16.0 * f[i - 1] - 30.0 * f[i] + 16.0 * f[i + 1] - f[i + 2]) / (12.0 * h2));
  }
  if (i < 2) {
    if (i == 0) {
      return T((45.0 * f[0] - 154.0 * f[1] + 214.0 * f[2] - 156.0 * f[3] + 61.0 * f[4] - 10.0 * f[5]) /
               (12.0 * h2));
    }
    return T((10.0 * f[0] - 15.0 * f[1] - 4.0 * f[2] + 14.0 * f[3] - 6.0 * f[4] + f[5]) / (12.0 * h2));
  }
  const std::size_t e = n - 1;
  if (i == e) {
    return T((45.0 * f[e] - 154.0 * f[e - 1] + 214.0 * f[e - 2] - 156.0 * f[e - 3] +
              61.0 * f[e - 4] - 10.0 * f[e - 5]) /
             (12.0 * h2));
  }
  return T((10.0 * f[e] - 15.0 * f[e - 1] - 4.0 * f[e - 2] + 14.0 * f[e - 3] - 6.0 * f[e - 4] +
            f[e - 5]) /
           (12.0 * h2));
}

}  // namespace ballroll::fd
