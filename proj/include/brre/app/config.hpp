#pragma once

// Run configuration for the command-line driver. The file is a flat INI
// document; unknown sections or keys are rejected.

#include <array>
#include <filesystem>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "brre/classify.hpp"

namespace brre::app {

using Seed = std::array<double, 2>;

struct RunConfig {
  // [map]
  std::string map_name = "standard";
  double k = 0.7;
  std::string observable = "embedding";
  double escape_bound = 1e6;

  // [algorithm]
  ClassifyParams classify;
  double gamma_max = 0.5;
  std::size_t validation_points = 128;

  // [seeds]
  std::vector<Seed> seeds;

  // [converge]
  std::size_t converge_K_start = 25;
  std::size_t converge_K_stop = 700;
  std::size_t converge_K_step = 25;
  double converge_gamma = 2.0;

  // [average]
  std::size_t average_length = 10000;

  // [output]
  std::string table_path;    ///< empty: standard output
  std::string circles_dir;   ///< empty: no circle export
  int workers = 0;           ///< 0: OpenMP default
};

/// Throws ConfigError with the offending section/key in the message.
RunConfig parse_config(std::istream& in);
RunConfig load_config(const std::filesystem::path& path);

/// Worker count after applying the BRRE_WORKERS override.
int effective_workers(const RunConfig& config);

std::shared_ptr<const DynamicalMap> make_map(const RunConfig& config);
std::shared_ptr<const Observable> make_observable(const RunConfig& config);

}  // namespace brre::app
