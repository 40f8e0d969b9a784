// Experiment runner: solve equilibrium measures, draw samples over
// (N, seed) grids, compute diagnostics, and emit reports and plot series.
#include <CLI11.hpp>

#include <atomic>
#include <complex>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <iostream>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "loggas/archive.hpp"
#include "loggas/config.hpp"
#include "loggas/diagnostics.hpp"
#include "loggas/equilibrium.hpp"
#include "loggas/fourier_energy.hpp"
#include "loggas/gibbs.hpp"
#include "loggas/mcmc.hpp"
#include "loggas/report.hpp"
#include "loggas/tridiagonal.hpp"
#include "loggas/wasserstein.hpp"

namespace {

using namespace loggas;
namespace fs = std::filesystem;

struct CliOptions {
  std::string config_path;
  std::string out_flag;
  long long seed_offset = 0;
  bool exact = false;
  unsigned threads = 1;
};

std::string resolve_out_dir(const ExperimentConfig& cfg,
                            const CliOptions& opt) {
  if (!opt.out_flag.empty()) return opt.out_flag;
  if (!cfg.output_dir.empty()) return cfg.output_dir;
  if (const char* env = std::getenv("LOGGAS_OUT"))
    if (*env) return env;
  return ".";
}

std::string eqm_path(const std::string& dir, const ExperimentConfig& cfg) {
  return dir + "/" + cfg.label + "_eqm.txt";
}

std::string archive_path(const std::string& dir, const ExperimentConfig& cfg,
                         std::size_t N, std::uint64_t seed) {
  return dir + "/" + cfg.label + "_N" + std::to_string(N) + "_seed" +
         std::to_string(seed) + ".samples";
}

EquilibriumOptions eqm_options(const ExperimentConfig& cfg) {
  EquilibriumOptions opt;
  opt.domain_lo = cfg.domain_lo;
  opt.domain_hi = cfg.domain_hi;
  opt.grid_m = cfg.grid_m;
  return opt;
}

bool model_needs_equilibrium(const ExperimentConfig& cfg) {
  return cfg.model != ModelKind::full;
}

// sample/diagnose reuse the eqm file when present; models that are defined
// relative to the equilibrium measure refuse to run without it
EquilibriumMeasure load_or_solve_eqm(const ExperimentConfig& cfg,
                                     const std::string& dir) {
  const std::string path = eqm_path(dir, cfg);
  if (fs::exists(path)) {
    EquilibriumMeasure eqm = deserialize_equilibrium(read_text_file(path));
    eqm.validate();
    return eqm;
  }
  if (model_needs_equilibrium(cfg))
    throw ConfigError("missing equilibrium file " + path +
                      " (run the eqm subcommand first)");
  return solve_equilibrium(make_potential(cfg.potential), eqm_options(cfg));
}

GibbsModel build_model(const ExperimentConfig& cfg,
                       const EquilibriumMeasure& eqm, std::size_t N) {
  const Potential p = make_potential(cfg.potential);
  switch (cfg.model) {
    case ModelKind::full: {
      GibbsModel m;
      m.potential = p;
      m.beta = cfg.beta;
      m.n_particles = N;
      m.label = p.label + "_full";
      m.validate();
      return m;
    }
    case ModelKind::restricted:
      return build_restricted_model(eqm, p, cfg.beta, N, cfg.delta);
    case ModelKind::decomposed: {
      const double kappa = cfg.kappa > 0.0 ? cfg.kappa : default_kappa(eqm);
      return build_decomposed_model(eqm, p, cfg.beta, N, kappa);
    }
    case ModelKind::cut:
      return build_cut_model(eqm, p, cfg.beta, cfg.cut_index, N, cfg.c,
                             cfg.kappa);
  }
  throw ConfigError("unreachable model kind");
}

// fixed-size pool over independent cells; results must be written to
// pre-assigned slots so the outcome is identical for any thread count
template <class Fn>
void run_cells(std::size_t n_cells, unsigned threads, Fn&& fn) {
  if (threads <= 1 || n_cells <= 1) {
    for (std::size_t i = 0; i < n_cells; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::mutex err_mutex;
  std::exception_ptr first_error;
  auto worker = [&] {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n_cells) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(err_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < std::min<std::size_t>(threads, n_cells); ++t)
    pool.emplace_back(worker);
  for (std::thread& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

// ---- eqm ----

std::string equilibrium_summary(const ExperimentConfig& cfg,
                                const EquilibriumMeasure& eqm) {
  const Potential p = make_potential(cfg.potential);
  std::ostringstream out;
  out << "potential " << p.label << "\n";
  const HypothesisReport hyp = check_hypothesis(p, cfg.beta);
  out << "hypothesis " << (hyp.pass() ? "pass" : ("FAIL: " + hyp.witness))
      << " w0 " << fmt_double(hyp.w0) << "\n";
  out << "q " << eqm.n_cuts() << "\n";
  for (std::size_t i = 0; i < eqm.n_cuts(); ++i)
    out << "cut " << i << " [" << fmt_double(eqm.edges[i].A) << ", "
        << fmt_double(eqm.edges[i].B) << "] filling "
        << fmt_double(eqm.filling_fractions[i]) << "\n";

  // identity residual at 20 points on an ellipse inside the contour
  std::vector<cplx> pts;
  const double pi = 3.14159265358979323846;
  for (int j = 0; j < 20; ++j) {
    const double th = 2.0 * pi * (double(j) + 0.5) / 20.0;
    pts.push_back(cplx(eqm.contour.center +
                           0.8 * eqm.contour.half_width * std::cos(th),
                       0.8 * eqm.contour.half_height * std::sin(th)));
  }
  out << "rh_residual " << fmt_double(check_rh_identity(eqm, p, pts)) << "\n";

  // independent grid oracle agreement in sup-CDF
  const DiscreteMeasure& dm = eqm.grid_fallback;
  double sup_cdf = 0.0;
  for (std::size_t i = 0; i < dm.grid.size(); ++i)
    sup_cdf =
        std::max(sup_cdf, std::abs(dm.cdf_at_node(i) - eqm.cdf(dm.grid[i])));
  out << "oracle_sup_cdf " << fmt_double(sup_cdf) << "\n";

  // effective potential should be one constant across the whole support
  std::vector<double> h_values;
  for (const Cut& c : eqm.edges)
    for (int k = 0; k < 41; ++k)
      h_values.push_back(effective_potential(
          eqm, p, c.A + c.length() * (double(k) + 0.5) / 41.0));
  std::vector<double> sorted = h_values;
  std::sort(sorted.begin(), sorted.end());
  const double ell = sorted[sorted.size() / 2];
  double dev = 0.0;
  for (double h : h_values) dev = std::max(dev, std::abs(h - ell));
  out << "effective_potential_level " << fmt_double(ell) << "\n";
  out << "constancy_residual_rel " << fmt_double(dev / std::max(1.0, std::abs(ell)))
      << "\n";
  for (std::size_t i = 0; i + 1 < eqm.n_cuts(); ++i) {
    const double mid = 0.5 * (eqm.edges[i].B + eqm.edges[i + 1].A);
    out << "gap_excess " << i << " "
        << fmt_double(effective_potential(eqm, p, mid) - ell) << "\n";
  }
  return out.str();
}

int cmd_eqm(const ExperimentConfig& cfg, const CliOptions& opt) {
  const std::string dir = resolve_out_dir(cfg, opt);
  fs::create_directories(dir);
  const Potential p = make_potential(cfg.potential);
  const EquilibriumMeasure eqm = solve_equilibrium(p, eqm_options(cfg));
  write_text_file(eqm_path(dir, cfg), serialize(eqm));
  const std::string summary = equilibrium_summary(cfg, eqm);
  write_text_file(dir + "/" + cfg.label + "_eqm_summary.txt", summary);
  std::cout << "wrote " << eqm_path(dir, cfg) << "\n" << summary;
  return 0;
}

// ---- sample ----

int cmd_sample(const ExperimentConfig& cfg, const CliOptions& opt) {
  const std::string dir = resolve_out_dir(cfg, opt);
  fs::create_directories(dir);
  const EquilibriumMeasure eqm = load_or_solve_eqm(cfg, dir);

  if (opt.exact &&
      (cfg.model != ModelKind::full || cfg.potential.kind != "quadratic"))
    throw ConfigError(
        "--exact requires the full-line model with the quadratic potential");

  struct Cell {
    std::size_t N;
    std::uint64_t seed;
  };
  std::vector<Cell> cells;
  for (std::size_t N : cfg.n_list)
    for (std::uint64_t s : cfg.seeds)
      cells.push_back({N, s + std::uint64_t(opt.seed_offset)});

  std::vector<std::string> log_lines(cells.size());
  run_cells(cells.size(), opt.threads, [&](std::size_t i) {
    const Cell& cell = cells[i];
    const GibbsModel model = build_model(cfg, eqm, cell.N);
    SampleArchive a;
    a.model_hash = hash_hex(model.hash());
    a.beta = cfg.beta;
    a.n_particles = cell.N;
    a.seed = cell.seed;
    std::ostringstream line;
    if (opt.exact) {
      a.burn_in = 0;
      a.thinning = 1;
      CounterRng rng(cell.seed);
      a.samples.reserve(cfg.samples);
      for (std::size_t s = 0; s < cfg.samples; ++s)
        a.samples.push_back(ParticleConfiguration{
            tridiagonal_eigenvalues(cell.N, cfg.beta, rng)});
      line << "sample " << model.label << " N " << cell.N << " seed "
           << cell.seed << " exact count " << a.samples.size();
    } else {
      a.burn_in = cfg.burn_in;
      a.thinning = cfg.thinning;
      SampleRun run = sample(model, cfg.samples, cfg.thinning, cfg.burn_in,
                             cell.seed, &eqm);
      a.samples = std::move(run.samples);
      line << "sample " << model.label << " N " << cell.N << " seed "
           << cell.seed << " count " << a.samples.size() << " acceptance "
           << fmt_double(run.acceptance_rate);
    }
    const std::string path = archive_path(dir, cfg, cell.N, cell.seed);
    write_archive(path, a);
    line << " -> " << path;
    log_lines[i] = line.str();
  });
  for (const std::string& l : log_lines) std::cout << l << "\n";
  return 0;
}

// ---- diagnose ----

struct CellData {
  std::size_t N;
  std::uint64_t seed;
  SampleArchive archive;
};

std::vector<CellData> load_archives(const ExperimentConfig& cfg,
                                    const CliOptions& opt,
                                    const std::string& dir,
                                    const EquilibriumMeasure& eqm) {
  std::vector<CellData> cells;
  for (std::size_t N : cfg.n_list) {
    const GibbsModel model = build_model(cfg, eqm, N);
    const std::string expect_hash = hash_hex(model.hash());
    for (std::uint64_t s : cfg.seeds) {
      const std::uint64_t seed = s + std::uint64_t(opt.seed_offset);
      const std::string path = archive_path(dir, cfg, N, seed);
      if (!fs::exists(path))
        throw ConfigError("missing archive " + path +
                          " (run the sample subcommand first)");
      SampleArchive a = read_archive(path);
      if (a.model_hash != expect_hash)
        throw ConfigError("archive " + path + " was sampled from model " +
                          a.model_hash + " but the config describes " +
                          expect_hash + "; refusing to mix models");
      if (a.n_particles != N || a.beta != cfg.beta)
        throw ConfigError("archive " + path + " header disagrees with config");
      cells.push_back({N, seed, std::move(a)});
    }
  }
  return cells;
}

// cut-law archives are compared against the rescaled one-cut measure; all
// other models are compared against the full equilibrium measure
EquilibriumMeasure diagnostics_measure(const ExperimentConfig& cfg,
                                       const EquilibriumMeasure& eqm) {
  if (cfg.model == ModelKind::cut)
    return cut_equilibrium_view(eqm, cfg.cut_index);
  return eqm;
}

ReportRecord diagnostic_record(const ExperimentConfig& cfg,
                               const DiagnosticSpec& spec,
                               const CellData& cell, const GibbsModel& model,
                               const EquilibriumMeasure& diag_eqm) {
  ReportRecord rec;
  rec.model = model.label;
  rec.n_particles = cell.N;
  rec.beta = cfg.beta;
  rec.seed = cell.seed;
  const std::vector<ParticleConfiguration>& samples = cell.archive.samples;

  auto mean_se = [](const std::vector<double>& v, double& mean, double& se) {
    mean = 0.0;
    for (double x : v) mean += x;
    mean /= double(v.size());
    double var = 0.0;
    for (double x : v) var += (x - mean) * (x - mean);
    var /= std::max<std::size_t>(1, v.size() - 1);
    se = std::sqrt(var * integrated_autocorrelation(v) / double(v.size()));
  };

  if (spec.name == "rigidity") {
    const RigidityResult r = rigidity_stat(samples, diag_eqm, spec.alpha);
    rec.statistic = "rigidity_median";
    rec.value = detail::median_of(r.per_sample);
  } else if (spec.name == "fluctuation") {
    const LinearStatistic h =
        poly_bump_statistic(spec.test_fn.poly, spec.test_fn.center,
                            spec.test_fn.halfwidth);
    const std::vector<double> v = fluctuation_stat(samples, diag_eqm, h);
    double mean = 0.0;
    for (double x : v) mean += x;
    mean /= double(v.size());
    double var = 0.0;
    for (double x : v) var += (x - mean) * (x - mean);
    var /= std::max<std::size_t>(1, v.size() - 1);
    rec.statistic = "fluctuation_var";
    rec.value = var;
    rec.stderr_value = var * std::sqrt(2.0 * integrated_autocorrelation(v) /
                                       double(v.size()));
  } else if (spec.name == "stieltjes") {
    std::vector<std::complex<double>> zgrid;
    const double lo = diag_eqm.support_lo(), hi = diag_eqm.support_hi();
    const std::size_t P = std::max<std::size_t>(1, spec.points);
    for (std::size_t k = 0; k < P; ++k) {
      const double x =
          P == 1 ? 0.5 * (lo + hi)
                 : lo + (hi - lo) * double(k) / double(P - 1);
      zgrid.push_back({x, spec.height});
    }
    rec.statistic = "stieltjes_gap";
    rec.value = stieltjes_gap(samples, diag_eqm, zgrid);
  } else if (spec.name == "loop") {
    const LinearStatistic phi =
        poly_bump_statistic(spec.test_fn.poly, spec.test_fn.center,
                            spec.test_fn.halfwidth);
    const LoopResidual r = loop_residual(samples, model, phi);
    rec.statistic = "loop_residual";
    rec.value = r.mean;
    rec.stderr_value = r.se;
  } else if (spec.name == "wasserstein") {
    std::vector<double> v;
    v.reserve(samples.size());
    for (const ParticleConfiguration& s : samples)
      v.push_back(wasserstein1(s, diag_eqm));
    rec.statistic = "wasserstein_mean";
    mean_se(v, rec.value, rec.stderr_value);
  } else if (spec.name == "escape") {
    rec.statistic = "escape_fraction";
    rec.value = escape_fraction(samples, diag_eqm, spec.delta);
  } else {
    throw ConfigError("unknown diagnostic '" + spec.name + "'");
  }
  return rec;
}

int cmd_diagnose(const ExperimentConfig& cfg, const CliOptions& opt) {
  const std::string dir = resolve_out_dir(cfg, opt);
  fs::create_directories(dir);
  const EquilibriumMeasure eqm = load_or_solve_eqm(cfg, dir);
  const EquilibriumMeasure diag_eqm = diagnostics_measure(cfg, eqm);
  const std::vector<CellData> cells = load_archives(cfg, opt, dir, eqm);

  std::vector<GibbsModel> models;
  for (std::size_t N : cfg.n_list) models.push_back(build_model(cfg, eqm, N));

  const std::size_t n_diag = cfg.diagnostics.size();
  std::vector<ReportRecord> records(cells.size() * n_diag);
  run_cells(cells.size(), opt.threads, [&](std::size_t i) {
    const GibbsModel& model = models[i / cfg.seeds.size()];
    for (std::size_t d = 0; d < n_diag; ++d)
      records[i * n_diag + d] = diagnostic_record(cfg, cfg.diagnostics[d],
                                                  cells[i], model, diag_eqm);
  });

  ExperimentReport rep;
  rep.config_hash = config_hash(cfg);
  rep.equilibrium_summary = equilibrium_summary(cfg, eqm);
  rep.records = records;

  // per-N aggregate (median across seeds) per diagnostic: plot series + fits
  for (std::size_t d = 0; d < n_diag; ++d) {
    const DiagnosticSpec& spec = cfg.diagnostics[d];
    std::vector<double> xs, ys;
    std::ostringstream series;
    for (std::size_t ni = 0; ni < cfg.n_list.size(); ++ni) {
      std::vector<double> per_seed;
      for (std::size_t si = 0; si < cfg.seeds.size(); ++si)
        per_seed.push_back(
            records[(ni * cfg.seeds.size() + si) * n_diag + d].value);
      const double agg = detail::median_of(per_seed);
      series << cfg.n_list[ni] << " " << fmt_double(agg) << "\n";
      xs.push_back(double(cfg.n_list[ni]));
      ys.push_back(agg);
    }
    write_text_file(dir + "/" + cfg.label + "_plot_" + spec.name + ".txt",
                    series.str());
    bool positive = xs.size() >= 2;
    for (double y : ys) positive = positive && y > 0.0;
    if (positive)
      rep.fits.emplace_back(spec.name + "_vs_N", least_squares_loglog(xs, ys));
  }

  write_text_file(dir + "/" + cfg.label + "_table.csv", flat_table(rep.records));
  const std::string text = report_text(rep);
  write_text_file(dir + "/" + cfg.label + "_report.txt", text);
  std::cout << text << "table " << dir << "/" << cfg.label << "_table.csv\n";
  return 0;
}

// ---- scaling ----

int cmd_scaling(const ExperimentConfig& cfg, const CliOptions& opt) {
  const std::string dir = resolve_out_dir(cfg, opt);
  fs::create_directories(dir);
  const EquilibriumMeasure eqm = load_or_solve_eqm(cfg, dir);
  const EquilibriumMeasure diag_eqm = diagnostics_measure(cfg, eqm);
  const std::vector<CellData> cells = load_archives(cfg, opt, dir, eqm);
  if (cfg.n_list.size() < 2)
    throw ConfigError("scaling needs at least two N values");

  double alpha = -1.0;
  for (const DiagnosticSpec& d : cfg.diagnostics)
    if (d.name == "rigidity") alpha = d.alpha;

  std::vector<double> medians(cells.size());
  run_cells(cells.size(), opt.threads, [&](std::size_t i) {
    const RigidityResult r =
        rigidity_stat(cells[i].archive.samples, diag_eqm, alpha);
    medians[i] = detail::median_of(r.per_sample);
  });

  std::vector<double> xs, ys;
  std::ostringstream out;
  for (std::size_t ni = 0; ni < cfg.n_list.size(); ++ni) {
    std::vector<double> per_seed(
        medians.begin() + ni * cfg.seeds.size(),
        medians.begin() + (ni + 1) * cfg.seeds.size());
    const double agg = detail::median_of(per_seed);
    out << cfg.n_list[ni] << " " << fmt_double(agg) << "\n";
    xs.push_back(double(cfg.n_list[ni]));
    ys.push_back(agg);
  }
  const ScalingFit fit = least_squares_loglog(xs, ys);
  out << "slope " << fmt_double(fit.slope) << " se " << fmt_double(fit.slope_se)
      << " ci [" << fmt_double(fit.slope_ci_lo()) << ", "
      << fmt_double(fit.slope_ci_hi()) << "] R2 " << fmt_double(fit.r_squared)
      << "\n";
  write_text_file(dir + "/" + cfg.label + "_scaling.txt", out.str());
  std::cout << out.str();
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"log-gas ensemble laboratory"};
  app.require_subcommand(1);
  app.fallthrough();

  CliOptions opt;
  app.add_option("--config", opt.config_path, "experiment config file (JSON)")
      ->required();
  app.add_option("--out", opt.out_flag,
                 "output directory (default: config output_dir, then "
                 "$LOGGAS_OUT, then .)");
  app.add_option("--seed-offset", opt.seed_offset,
                 "added to every seed in the config");
  app.add_flag("--exact", opt.exact,
               "sample: use the exact tridiagonal sampler (quadratic "
               "potential, full model)");
  app.add_option("--threads", opt.threads, "worker threads over (N, seed) cells");

  CLI::App* c_eqm = app.add_subcommand("eqm", "solve the equilibrium measure");
  CLI::App* c_sample = app.add_subcommand("sample", "draw sample archives");
  CLI::App* c_diag =
      app.add_subcommand("diagnose", "run diagnostics on archives");
  CLI::App* c_scaling =
      app.add_subcommand("scaling", "rigidity medians vs N with a log-log fit");

  CLI11_PARSE(app, argc, argv);

  try {
    const ExperimentConfig cfg =
        parse_experiment_config(read_text_file(opt.config_path));
    if (c_eqm->parsed()) return cmd_eqm(cfg, opt);
    if (c_sample->parsed()) return cmd_sample(cfg, opt);
    if (c_diag->parsed()) return cmd_diagnose(cfg, opt);
    if (c_scaling->parsed()) return cmd_scaling(cfg, opt);
    std::cerr << "no subcommand\n";
    return 2;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const NumericError& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
