#pragma once

#include <nlohmann/json.hpp>
#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "loggas/errors.hpp"
#include "loggas/potential.hpp"
#include "loggas/serialize.hpp"
#include "loggas/statistics.hpp"

namespace loggas {

using json = nlohmann::json;

enum class ModelKind { full, restricted, decomposed, cut };

struct TestFunctionSpec {
  double center = 0.0;
  double halfwidth = 1.0;
  std::vector<double> poly{1.0};  // factor in front of the C^2 bump

  CompactPoly make() const { return poly_bump_poly(poly, center, halfwidth); }
};

struct DiagnosticSpec {
  std::string name;  // rigidity|fluctuation|stieltjes|loop|wasserstein|escape
  double alpha = -1.0;       // rigidity margin; <= 0 means the default
  double delta = 0.2;        // escape margin
  double height = 1.0;       // stieltjes grid height
  std::size_t points = 11;   // stieltjes grid size
  TestFunctionSpec test_fn;  // fluctuation h / loop phi
};

struct PotentialSpec {
  std::string kind;  // quadratic|symmetric_quartic|asymmetric_quartic|polynomial
  double c = 2.0;
  double t = 0.0;
  std::vector<double> coefficients;
  double offset = 0.0;
  bool auto_offset = false;
};

struct ExperimentConfig {
  int schema_version = 1;
  std::string label = "experiment";
  PotentialSpec potential;
  double beta = 2.0;
  ModelKind model = ModelKind::full;
  std::size_t cut_index = 0;
  double kappa = 0.0;  // 0 = default rule
  double delta = 0.2;
  double c = 1.0;  // cut-model potential multiplier
  std::vector<std::size_t> n_list{64};
  std::vector<std::uint64_t> seeds{1};
  std::size_t samples = 200;
  std::size_t burn_in = 200;
  std::size_t thinning = 4;
  double domain_lo = -3.5, domain_hi = 3.5;
  std::size_t grid_m = 400;
  std::size_t fourier_k = 4096;
  std::vector<DiagnosticSpec> diagnostics;
  std::string output_dir;
};

namespace detail {

inline void reject_unknown_keys(const json& obj, const char* where,
                                std::initializer_list<const char*> allowed) {
  for (const auto& item : obj.items()) {
    bool ok = false;
    for (const char* k : allowed)
      if (item.key() == k) {
        ok = true;
        break;
      }
    if (!ok)
      throw ConfigError(std::string("config: unknown key '") + item.key() +
                        "' in " + where);
  }
}

inline TestFunctionSpec parse_test_fn(const json& j, const char* where) {
  reject_unknown_keys(j, where, {"center", "halfwidth", "poly"});
  TestFunctionSpec t;
  t.center = j.value("center", 0.0);
  t.halfwidth = j.value("halfwidth", 1.0);
  if (j.contains("poly")) t.poly = j["poly"].get<std::vector<double>>();
  if (!(t.halfwidth > 0.0))
    throw ConfigError(std::string("config: halfwidth <= 0 in ") + where);
  return t;
}

inline json test_fn_json(const TestFunctionSpec& t) {
  return json{{"center", t.center}, {"halfwidth", t.halfwidth}, {"poly", t.poly}};
}

}  // namespace detail

inline Potential make_potential(const PotentialSpec& s) {
  Potential p;
  if (s.kind == "quadratic") {
    p = quadratic_potential(s.offset);
  } else if (s.kind == "symmetric_quartic") {
    p = symmetric_quartic(s.c);
    p.offset = s.offset;
  } else if (s.kind == "asymmetric_quartic") {
    p = asymmetric_quartic(s.c, s.t);
    p.offset = s.offset;
  } else if (s.kind == "polynomial") {
    p.coefficients = s.coefficients;
    p.offset = s.offset;
    p.label = "polynomial";
  } else {
    throw ConfigError("config: unknown potential kind '" + s.kind + "'");
  }
  if (s.auto_offset) p.offset = auto_offset(p);
  return p;
}

inline ExperimentConfig parse_experiment_config(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config: top level must be an object");
  detail::reject_unknown_keys(
      j, "top level",
      {"schema_version", "label", "potential", "beta", "model", "cut_index",
       "kappa", "delta", "c", "N", "seeds", "samples", "burn_in", "thinning",
       "domain", "grid_m", "fourier_k", "diagnostics", "output_dir"});
  ExperimentConfig cfg;
  if (!j.contains("schema_version"))
    throw ConfigError("config: missing schema_version");
  cfg.schema_version = j["schema_version"].get<int>();
  if (cfg.schema_version != 1)
    throw ConfigError("config: unsupported schema_version " +
                      std::to_string(cfg.schema_version));
  cfg.label = j.value("label", std::string("experiment"));

  if (!j.contains("potential")) throw ConfigError("config: missing potential");
  {
    const json& p = j["potential"];
    detail::reject_unknown_keys(p, "potential",
                                {"kind", "c", "t", "coefficients", "offset"});
    cfg.potential.kind = p.value("kind", std::string());
    cfg.potential.c = p.value("c", 2.0);
    cfg.potential.t = p.value("t", 0.0);
    if (p.contains("coefficients"))
      cfg.potential.coefficients = p["coefficients"].get<std::vector<double>>();
    if (p.contains("offset")) {
      if (p["offset"].is_string()) {
        if (p["offset"].get<std::string>() != "auto")
          throw ConfigError("config: potential offset must be a number or \"auto\"");
        cfg.potential.auto_offset = true;
      } else {
        cfg.potential.offset = p["offset"].get<double>();
      }
    }
    (void)make_potential(cfg.potential);  // validates the kind eagerly
  }

  cfg.beta = j.value("beta", 2.0);
  if (!(cfg.beta > 0.0)) throw ConfigError("config: beta must be positive");

  const std::string model = j.value("model", std::string("full"));
  if (model == "full") cfg.model = ModelKind::full;
  else if (model == "restricted") cfg.model = ModelKind::restricted;
  else if (model == "decomposed") cfg.model = ModelKind::decomposed;
  else if (model.rfind("cut:", 0) == 0) {
    cfg.model = ModelKind::cut;
    try {
      cfg.cut_index = std::stoul(model.substr(4));
    } catch (...) {
      throw ConfigError("config: bad cut index in model '" + model + "'");
    }
  } else {
    throw ConfigError("config: unknown model '" + model + "'");
  }
  if (j.contains("cut_index")) cfg.cut_index = j["cut_index"].get<std::size_t>();
  cfg.kappa = j.value("kappa", 0.0);
  cfg.delta = j.value("delta", 0.2);
  cfg.c = j.value("c", 1.0);

  if (j.contains("N")) cfg.n_list = j["N"].get<std::vector<std::size_t>>();
  if (cfg.n_list.empty()) throw ConfigError("config: N list empty");
  if (!std::is_sorted(cfg.n_list.begin(), cfg.n_list.end()))
    throw ConfigError("config: N list must be sorted ascending");
  if (j.contains("seeds"))
    cfg.seeds = j["seeds"].get<std::vector<std::uint64_t>>();
  if (cfg.seeds.empty()) throw ConfigError("config: seeds list empty");
  cfg.samples = j.value("samples", std::size_t(200));
  cfg.burn_in = j.value("burn_in", std::size_t(200));
  cfg.thinning = j.value("thinning", std::size_t(4));
  if (cfg.samples < 1) throw ConfigError("config: samples must be >= 1");
  if (cfg.thinning < 1) throw ConfigError("config: thinning must be >= 1");

  if (j.contains("domain")) {
    const json& d = j["domain"];
    if (!d.is_array() || d.size() != 2)
      throw ConfigError("config: domain must be [lo, hi]");
    cfg.domain_lo = d[0].get<double>();
    cfg.domain_hi = d[1].get<double>();
    if (!(cfg.domain_lo < cfg.domain_hi))
      throw ConfigError("config: domain lo must be below hi");
  }
  cfg.grid_m = j.value("grid_m", std::size_t(400));
  cfg.fourier_k = j.value("fourier_k", std::size_t(4096));

  if (j.contains("diagnostics")) {
    for (const json& d : j["diagnostics"]) {
      detail::reject_unknown_keys(
          d, "diagnostics entry",
          {"name", "alpha", "delta", "height", "points", "h", "phi"});
      DiagnosticSpec spec;
      spec.name = d.value("name", std::string());
      const bool known =
          spec.name == "rigidity" || spec.name == "fluctuation" ||
          spec.name == "stieltjes" || spec.name == "loop" ||
          spec.name == "wasserstein" || spec.name == "escape";
      if (!known)
        throw ConfigError("config: unknown diagnostic '" + spec.name + "'");
      spec.alpha = d.value("alpha", -1.0);
      spec.delta = d.value("delta", 0.2);
      spec.height = d.value("height", 1.0);
      spec.points = d.value("points", std::size_t(11));
      if (d.contains("h")) spec.test_fn = detail::parse_test_fn(d["h"], "h");
      if (d.contains("phi"))
        spec.test_fn = detail::parse_test_fn(d["phi"], "phi");
      if (spec.name == "fluctuation" && !d.contains("h"))
        throw ConfigError("config: fluctuation diagnostic needs h");
      if (spec.name == "loop" && !d.contains("phi"))
        throw ConfigError("config: loop diagnostic needs phi");
      cfg.diagnostics.push_back(std::move(spec));
    }
  }
  cfg.output_dir = j.value("output_dir", std::string());
  return cfg;
}

// canonical text form: nlohmann objects iterate in key order, so the dump is
// unique for given contents; the config hash is the FNV hash of this string
inline std::string serialize_experiment_config(const ExperimentConfig& cfg) {
  json j;
  j["schema_version"] = cfg.schema_version;
  j["label"] = cfg.label;
  json p;
  p["kind"] = cfg.potential.kind;
  if (cfg.potential.kind == "symmetric_quartic" ||
      cfg.potential.kind == "asymmetric_quartic")
    p["c"] = cfg.potential.c;
  if (cfg.potential.kind == "asymmetric_quartic") p["t"] = cfg.potential.t;
  if (cfg.potential.kind == "polynomial")
    p["coefficients"] = cfg.potential.coefficients;
  if (cfg.potential.auto_offset)
    p["offset"] = "auto";
  else
    p["offset"] = cfg.potential.offset;
  j["potential"] = p;
  j["beta"] = cfg.beta;
  switch (cfg.model) {
    case ModelKind::full: j["model"] = "full"; break;
    case ModelKind::restricted: j["model"] = "restricted"; break;
    case ModelKind::decomposed: j["model"] = "decomposed"; break;
    case ModelKind::cut:
      j["model"] = "cut:" + std::to_string(cfg.cut_index);
      break;
  }
  j["kappa"] = cfg.kappa;
  j["delta"] = cfg.delta;
  j["c"] = cfg.c;
  j["N"] = cfg.n_list;
  j["seeds"] = cfg.seeds;
  j["samples"] = cfg.samples;
  j["burn_in"] = cfg.burn_in;
  j["thinning"] = cfg.thinning;
  j["domain"] = {cfg.domain_lo, cfg.domain_hi};
  j["grid_m"] = cfg.grid_m;
  j["fourier_k"] = cfg.fourier_k;
  json diags = json::array();
  for (const DiagnosticSpec& d : cfg.diagnostics) {
    json e;
    e["name"] = d.name;
    if (d.name == "rigidity") e["alpha"] = d.alpha;
    if (d.name == "escape") e["delta"] = d.delta;
    if (d.name == "stieltjes") {
      e["height"] = d.height;
      e["points"] = d.points;
    }
    if (d.name == "fluctuation") e["h"] = detail::test_fn_json(d.test_fn);
    if (d.name == "loop") e["phi"] = detail::test_fn_json(d.test_fn);
    diags.push_back(e);
  }
  j["diagnostics"] = diags;
  if (!cfg.output_dir.empty()) j["output_dir"] = cfg.output_dir;
  return j.dump(2) + "\n";
}

inline std::string config_hash(const ExperimentConfig& cfg) {
  return hash_hex(fnv1a(serialize_experiment_config(cfg)));
}

}  // namespace loggas
