#pragma once

#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "loggas/errors.hpp"
#include "loggas/gibbs.hpp"
#include "loggas/serialize.hpp"

namespace loggas {

// On-disk sample batch: a short header binding the samples to the model they
// were drawn from, then one configuration per line (sorted positions).
struct SampleArchive {
  std::string model_hash;  // hex of GibbsModel::hash()
  double beta = 2.0;
  std::size_t n_particles = 0;
  std::uint64_t seed = 0;
  std::size_t burn_in = 0;
  std::size_t thinning = 1;
  std::vector<ParticleConfiguration> samples;
};

inline std::string write_archive_text(const SampleArchive& a) {
  std::ostringstream out;
  out << "loggas-samples 1\n";
  out << "model " << a.model_hash << "\n";
  out << "beta " << fmt_double(a.beta) << "\n";
  out << "N " << a.n_particles << "\n";
  out << "seed " << a.seed << "\n";
  out << "burn_in " << a.burn_in << "\n";
  out << "thinning " << a.thinning << "\n";
  out << "count " << a.samples.size() << "\n";
  for (const ParticleConfiguration& s : a.samples) {
    if (s.positions.size() != a.n_particles)
      throw ConfigError("archive: sample size does not match N");
    out << fmt_doubles(s.positions) << "\n";
  }
  return out.str();
}

inline void write_archive(const std::string& path, const SampleArchive& a) {
  write_text_file(path, write_archive_text(a));
}

inline SampleArchive read_archive_text(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  auto next_line = [&](const char* what) {
    if (!std::getline(in, line))
      throw ConfigError(std::string("archive: truncated before ") + what);
    return split_ws(line);
  };
  auto keyed = [&](const char* key) {
    std::vector<std::string> toks = next_line(key);
    if (toks.size() != 2 || toks[0] != key)
      throw ConfigError(std::string("archive: expected '") + key + " <value>'");
    return toks[1];
  };

  std::vector<std::string> magic = next_line("header");
  if (magic.size() != 2 || magic[0] != "loggas-samples")
    throw ConfigError("archive: not a loggas-samples file");
  if (magic[1] != "1")
    throw ConfigError("archive: unsupported format version " + magic[1]);

  SampleArchive a;
  a.model_hash = keyed("model");
  a.beta = parse_double(keyed("beta"));
  a.n_particles = std::stoul(keyed("N"));
  a.seed = std::stoull(keyed("seed"));
  a.burn_in = std::stoul(keyed("burn_in"));
  a.thinning = std::stoul(keyed("thinning"));
  const std::size_t count = std::stoul(keyed("count"));

  a.samples.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    if (!std::getline(in, line))
      throw ConfigError("archive: fewer sample lines than count");
    ParticleConfiguration c;
    c.positions = parse_doubles(line);
    if (c.positions.size() != a.n_particles)
      throw ConfigError("archive: sample line has wrong particle count");
    a.samples.push_back(std::move(c));
  }
  while (std::getline(in, line))
    if (!split_ws(line).empty())
      throw ConfigError("archive: trailing content after last sample");
  return a;
}

inline SampleArchive read_archive(const std::string& path) {
  return read_archive_text(read_text_file(path));
}

}  // namespace loggas
