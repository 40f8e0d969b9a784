#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "loggas/errors.hpp"
#include "loggas/potential.hpp"

namespace loggas {

namespace detail {

// full product of two coefficient vectors (ascending powers)
inline std::vector<double> poly_mul_full(const std::vector<double>& a,
                                         const std::vector<double>& b) {
  std::vector<double> out(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

}  // namespace detail

// polynomial in t = (x - center)/halfwidth on [-1, 1], identically zero
// outside; the builders multiply by (1-t^2)^3 so the result is C^2 on the
// whole line
struct CompactPoly {
  std::vector<double> tcoeffs;  // ascending powers of t
  double center = 0.0;
  double halfwidth = 1.0;

  double t_of(double x) const { return (x - center) / halfwidth; }

  double eval(double x) const {
    const double t = t_of(x);
    if (std::abs(t) >= 1.0) return 0.0;
    return detail::poly_eval(tcoeffs, t);
  }

  double deriv1(double x) const {
    const double t = t_of(x);
    if (std::abs(t) >= 1.0) return 0.0;
    return detail::poly_eval(detail::poly_derivative(tcoeffs), t) / halfwidth;
  }

  double deriv2(double x) const {
    const double t = t_of(x);
    if (std::abs(t) >= 1.0) return 0.0;
    return detail::poly_eval(
               detail::poly_derivative(detail::poly_derivative(tcoeffs)), t) /
           (halfwidth * halfwidth);
  }

  double support_lo() const { return center - halfwidth; }
  double support_hi() const { return center + halfwidth; }
};

// (1 - t^2)^3 bump
inline CompactPoly bump_poly(double center, double halfwidth) {
  if (!(halfwidth > 0.0)) throw ConfigError("bump_poly: halfwidth <= 0");
  CompactPoly f;
  f.center = center;
  f.halfwidth = halfwidth;
  f.tcoeffs = {1.0, 0.0, -3.0, 0.0, 3.0, 0.0, -1.0};
  return f;
}

// q(t) * (1 - t^2)^3, q given in ascending powers of t
inline CompactPoly poly_bump_poly(const std::vector<double>& q, double center,
                                  double halfwidth) {
  if (q.empty()) throw ConfigError("poly_bump_poly: empty polynomial");
  CompactPoly f = bump_poly(center, halfwidth);
  f.tcoeffs = detail::poly_mul_full(q, f.tcoeffs);
  return f;
}

// C^2 test function with explicit first and second derivatives and sup norms
struct LinearStatistic {
  std::string label;
  std::function<double(double)> h, dh, ddh;
  double norm_h = 0.0, norm_dh = 0.0, norm_ddh = 0.0;

  static LinearStatistic from(const CompactPoly& f, std::string label) {
    LinearStatistic s;
    s.label = std::move(label);
    s.h = [f](double x) { return f.eval(x); };
    s.dh = [f](double x) { return f.deriv1(x); };
    s.ddh = [f](double x) { return f.deriv2(x); };
    const int m = 4001;
    for (int i = 0; i < m; ++i) {
      const double x =
          f.support_lo() + (f.support_hi() - f.support_lo()) * i / (m - 1.0);
      s.norm_h = std::max(s.norm_h, std::abs(f.eval(x)));
      s.norm_dh = std::max(s.norm_dh, std::abs(f.deriv1(x)));
      s.norm_ddh = std::max(s.norm_ddh, std::abs(f.deriv2(x)));
    }
    return s;
  }
};

inline LinearStatistic bump_statistic(double center, double halfwidth) {
  return LinearStatistic::from(bump_poly(center, halfwidth), "bump");
}

inline LinearStatistic poly_bump_statistic(const std::vector<double>& q,
                                           double center, double halfwidth) {
  return LinearStatistic::from(poly_bump_poly(q, center, halfwidth),
                               "poly_bump");
}

}  // namespace loggas
