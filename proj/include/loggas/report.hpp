#pragma once

#include <cmath>
#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "loggas/errors.hpp"
#include "loggas/serialize.hpp"

namespace loggas {

// One scalar outcome of one diagnostic on one (model, N, seed) cell.
struct ReportRecord {
  std::string model;  // model label, not the hash; hash lives in the header
  std::size_t n_particles = 0;
  double beta = 2.0;
  std::uint64_t seed = 0;
  std::string statistic;
  double value = 0.0;
  double stderr_value = 0.0;  // 0 when the statistic has no sampling error
};

struct ScalingFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  double slope_se = 0.0;
  std::size_t n_points = 0;

  double slope_ci_lo(double width = 2.0) const { return slope - width * slope_se; }
  double slope_ci_hi(double width = 2.0) const { return slope + width * slope_se; }
};

// Ordinary least squares of ln(y) on ln(x). Demands positive data.
inline ScalingFit least_squares_loglog(const std::vector<double>& xs,
                                       const std::vector<double>& ys) {
  if (xs.size() != ys.size() || xs.size() < 2)
    throw ConfigError("loglog fit: need >= 2 matched points");
  const std::size_t n = xs.size();
  std::vector<double> lx(n), ly(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(xs[i] > 0.0) || !(ys[i] > 0.0))
      throw NumericError("loglog fit: data must be positive");
    lx[i] = std::log(xs[i]);
    ly[i] = std::log(ys[i]);
  }
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= double(n);
  my /= double(n);
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
    syy += (ly[i] - my) * (ly[i] - my);
  }
  if (!(sxx > 0.0)) throw NumericError("loglog fit: x values all equal");
  ScalingFit f;
  f.n_points = n;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  double ss_res = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = ly[i] - (f.intercept + f.slope * lx[i]);
    ss_res += r * r;
  }
  f.r_squared = (syy > 0.0) ? 1.0 - ss_res / syy : 1.0;
  f.slope_se = (n > 2) ? std::sqrt(ss_res / (double(n) - 2.0) / sxx) : 0.0;
  return f;
}

struct ExperimentReport {
  std::string config_hash;
  std::string equilibrium_summary;  // human-readable block for the report head
  std::vector<ReportRecord> records;
  std::vector<std::pair<std::string, ScalingFit>> fits;
};

// Flat machine-readable table, one row per record, fixed column order.
inline std::string flat_table(const std::vector<ReportRecord>& records) {
  std::ostringstream out;
  out << "model,N,beta,seed,statistic,value,stderr\n";
  for (const ReportRecord& r : records) {
    out << r.model << ',' << r.n_particles << ',' << fmt_double(r.beta) << ','
        << r.seed << ',' << r.statistic << ',' << fmt_double(r.value) << ','
        << fmt_double(r.stderr_value) << "\n";
  }
  return out.str();
}

inline std::string report_text(const ExperimentReport& rep) {
  std::ostringstream out;
  out << "config " << rep.config_hash << "\n";
  if (!rep.equilibrium_summary.empty()) out << rep.equilibrium_summary;
  out << "records " << rep.records.size() << "\n";
  for (const auto& [label, fit] : rep.fits) {
    out << "fit " << label << ": slope " << fmt_double(fit.slope) << " (se "
        << fmt_double(fit.slope_se) << ", ci ["
        << fmt_double(fit.slope_ci_lo()) << ", "
        << fmt_double(fit.slope_ci_hi()) << "]), intercept "
        << fmt_double(fit.intercept) << ", R2 " << fmt_double(fit.r_squared)
        << ", points " << fit.n_points << "\n";
  }
  return out.str();
}

}  // namespace loggas
