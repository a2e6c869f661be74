#include "mpcr/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include "mpcr/error.hpp"

namespace mpcr::cli {
namespace {

std::string trim(std::string_view s) {
  auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string_view::npos) return {};
  auto end = s.find_last_not_of(" \t\r");
  return std::string(s.substr(begin, end - begin + 1));
}

[[noreturn]] void bad_value(const std::string& key, const std::string& text) {
  throw Error(ErrorKind::ConfigError, "bad value for '" + key + "': '" + text + "'");
}

std::vector<std::string> split_list(const std::string& text) {
  std::string body = trim(text);
  if (!body.empty() && body.front() == '[') {
    if (body.back() != ']') throw Error(ErrorKind::ConfigError, "unterminated array: " + text);
    body = body.substr(1, body.size() - 2);
  }
  std::vector<std::string> items;
  std::stringstream ss(body);
  std::string item;
  while (std::getline(ss, item, ',')) items.push_back(trim(item));
  if (items.size() == 1 && items[0].empty()) items.clear();
  return items;
}

template <typename T>
T parse_number(const std::string& text, const std::string& key) {
  const std::string s = trim(text);
  T value{};
  const auto* first = s.data();
  const auto* last = s.data() + s.size();
  const auto result = std::from_chars(first, last, value);
  if (s.empty() || result.ec != std::errc{} || result.ptr != last) bad_value(key, text);
  return value;
}

double parse_real(const std::string& text, const std::string& key) {
  // from_chars for double is available, but accept a leading '+' too.
  std::string s = trim(text);
  if (!s.empty() && s.front() == '+') s.erase(0, 1);
  return parse_number<double>(s, key);
}

}  // namespace

ConfigMap parse_config_text(const std::string& text) {
  ConfigMap values;
  std::stringstream ss(text);
  std::string line;
  int line_no = 0;
  while (std::getline(ss, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const std::string body = trim(line);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorKind::ConfigError, "line " + std::to_string(line_no) + ": expected key = value");
    }
    std::string key = trim(body.substr(0, eq));
    std::replace(key.begin(), key.end(), '-', '_');
    const std::string value = trim(body.substr(eq + 1));
    if (key.empty()) throw Error(ErrorKind::ConfigError, "line " + std::to_string(line_no) + ": empty key");
    if (!values.emplace(key, value).second) {
      throw Error(ErrorKind::ConfigError, "duplicate key '" + key + "'");
    }
  }
  return values;
}

ConfigMap read_config_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::ConfigError, "cannot read config file " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config_text(buffer.str());
}

std::vector<double> parse_real_list(const std::string& text, const std::string& key) {
  std::vector<double> out;
  for (const auto& item : split_list(text)) out.push_back(parse_real(item, key));
  return out;
}

std::vector<std::int64_t> parse_int_list(const std::string& text, const std::string& key) {
  std::vector<std::int64_t> out;
  for (const auto& item : split_list(text)) out.push_back(parse_number<std::int64_t>(item, key));
  return out;
}

void apply_config(RunConfig& c, const ConfigMap& values) {
  const auto& known = config_keys();
  for (const auto& [key, value] : values) {
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      throw Error(ErrorKind::ConfigError, "unknown config key '" + key + "'");
    }
    if (key == "v") {
      c.v = parse_real_list(value, key);
    } else if (key == "z0") {
      c.z0 = parse_int_list(value, key);
    } else if (key == "kappa") {
      c.kappa = parse_number<int>(value, key);
    } else if (key == "seed") {
      c.seed = parse_number<std::uint64_t>(value, key);
    } else if (key == "replicates") {
      c.replicates = parse_number<std::size_t>(value, key);
    } else if (key == "n_offset") {
      c.n_offset = parse_number<int>(value, key);
    } else if (key == "kappa_list") {
      c.kappa_list.clear();
      for (auto k : parse_int_list(value, key)) c.kappa_list.push_back(static_cast<int>(k));
    } else if (key == "tol") {
      c.tolerance = parse_real(value, key);
    } else if (key == "id") {
      c.figure_id = value;
    } else if (key == "mode") {
      c.mode = value;
    } else if (key == "steps") {
      c.steps = parse_number<int>(value, key);
    } else if (key == "grid_max") {
      c.grid_max = parse_real(value, key);
    } else if (key == "grid_points") {
      c.grid_points = parse_number<std::size_t>(value, key);
    } else if (key == "out") {
      c.out_dir = value;
    } else if (key == "format") {
      c.format = parse_format(value);
    } else if (key == "threads") {
      c.threads = parse_number<int>(value, key);
    }
  }
}

RawParams RunConfig::raw_params() const {
  RawParams raw;
  raw.v = v;
  raw.z0 = z0;
  raw.kappa = kappa;
  raw.seed = seed;
  return raw;
}

}  // namespace mpcr::cli
