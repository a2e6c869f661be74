#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mpcr/model.hpp"
#include "mpcr/table.hpp"

namespace mpcr::cli {

// Flat key/value config:
//
//   # comment
//   v = [0.9, 0.2]
//   z0 = 1, 1
//   kappa = 25
//
// Keys are lower-case with underscores; arrays may be bracketed or bare
// comma-separated lists. Duplicate keys are rejected.
using ConfigMap = std::map<std::string, std::string>;

ConfigMap parse_config_text(const std::string& text);
ConfigMap read_config_file(const std::filesystem::path& path);

struct RunConfig {
  // model
  std::vector<double> v;
  std::vector<std::int64_t> z0;
  int kappa = 0;
  std::uint64_t seed = 0;
  // experiment
  std::string command;
  std::size_t replicates = 200;
  int n_offset = 0;
  std::vector<int> kappa_list;
  double tolerance = 1e-8;
  std::string figure_id;
  std::string mode = "mpcr";
  std::optional<int> steps;
  double grid_max = 10.0;
  std::size_t grid_points = 101;
  // output
  std::filesystem::path out_dir = "mpcr_out";
  TableFormat format = TableFormat::Csv;
  int threads = 0;

  RawParams raw_params() const;
};

inline const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys{
      "v",         "z0",         "kappa",    "seed",     "replicates", "n_offset",
      "kappa_list", "tol",       "id",       "mode",     "steps",      "grid_max",
      "grid_points", "out",      "format",   "threads"};
  return keys;
}

// Applies every key in `values` on top of `config`; throws ConfigError on
// unknown keys or malformed values.
void apply_config(RunConfig& config, const ConfigMap& values);

std::vector<double> parse_real_list(const std::string& text, const std::string& key);
std::vector<std::int64_t> parse_int_list(const std::string& text, const std::string& key);

}  // namespace mpcr::cli
