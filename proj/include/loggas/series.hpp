#pragma once

#include <cstddef>
#include <vector>

namespace loggas {
namespace series {

// truncated product of power series, order+1 coefficients kept
inline std::vector<double> mul(const std::vector<double>& a,
                               const std::vector<double>& b,
                               std::size_t order) {
  std::vector<double> c(order + 1, 0.0);
  for (std::size_t i = 0; i <= order && i < a.size(); ++i)
    for (std::size_t j = 0; i + j <= order && j < b.size(); ++j)
      c[i + j] += a[i] * b[j];
  return c;
}

// square root of a series with a[0] = 1: s*s = a
inline std::vector<double> sqrt1(const std::vector<double>& a,
                                 std::size_t order) {
  std::vector<double> s(order + 1, 0.0);
  s[0] = 1.0;
  for (std::size_t k = 1; k <= order; ++k) {
    double conv = 0.0;
    for (std::size_t j = 1; j < k; ++j) conv += s[j] * s[k - j];
    const double ak = k < a.size() ? a[k] : 0.0;
    s[k] = 0.5 * (ak - conv);
  }
  return s;
}

// reciprocal of a series with a[0] = 1: a*b = 1
inline std::vector<double> inv1(const std::vector<double>& a,
                                std::size_t order) {
  std::vector<double> b(order + 1, 0.0);
  b[0] = 1.0;
  for (std::size_t k = 1; k <= order; ++k) {
    double acc = 0.0;
    for (std::size_t j = 1; j <= k; ++j)
      acc += (j < a.size() ? a[j] : 0.0) * b[k - j];
    b[k] = -acc;
  }
  return b;
}

}  // namespace series
}  // namespace loggas
