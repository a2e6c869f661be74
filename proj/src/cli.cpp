#include "mpcr/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "mpcr/config.hpp"
#include "mpcr/error.hpp"
#include "mpcr/harness.hpp"
#include "mpcr/maps.hpp"
#include "mpcr/sim.hpp"
#include "mpcr/table.hpp"

namespace mpcr::cli {
namespace {

namespace fs = std::filesystem;

constexpr const char* kFooter = R"(Precedence: built-in defaults < --config file < command-line flags;
the MPCR_OUT environment variable overrides --out.

CSV columns per command:
  simulate   replicate,n,z_1..z_d[,y_1..y_d]         (y only with --mode coupled)
  theorem1   replicate, then per type i: scaled_Z_i,W_hat_i,limit_i
  theorem2   replicate,X_total,limit_total, then per type i: X_i,limit_i,W_hat_i
  sweep      kappa,type,replicates,mean_abs_error,median_abs_error,median_rel_error,rel_count
  figure A   x,G_1..G_d
  figure 1   replicate, then per type i: scaled_Z_i,limit_i
  figure 2   replicate,H_W0, then limit_i for each non-dominant type
  figure 3   replicate,type,simulated,limit
  maps       (stdout) quantity,input,n,value,certificate,terms
)";

// Flag values as typed on the command line, converted into config entries
// so file and flag values go through the same parser.
struct FlagValues {
  std::string config_path;
  ConfigMap entries;
};

struct MapsRequest {
  std::vector<double> f_points;
  std::vector<double> finv_points;
  std::vector<double> h_points;
  std::vector<double> g_points;
  std::string F_point;
  std::string Finv_point;
  std::string iterate_point;
  int n = 1;
  std::string v1;
};

void add_flag(CLI::App& app, FlagValues& flags, const std::string& name, const std::string& key,
              const std::string& help) {
  app.add_option_function<std::string>(
      name, [&flags, key](const std::string& value) { flags.entries[key] = value; }, help);
}

void write_manifest(const RunConfig& c, const fs::path& dir,
                    const std::vector<std::string>& files) {
  nlohmann::ordered_json m;
  m["version"] = kVersion;
  m["command"] = c.command;
  m["model"] = {{"v", c.v}, {"z0", c.z0}, {"kappa", c.kappa}, {"seed", c.seed}};
  nlohmann::ordered_json exp;
  exp["replicates"] = c.replicates;
  exp["n_offset"] = c.n_offset;
  exp["kappa_list"] = c.kappa_list;
  exp["tol"] = c.tolerance;
  exp["id"] = c.figure_id;
  exp["mode"] = c.mode;
  exp["steps"] = c.steps ? nlohmann::ordered_json(*c.steps) : nlohmann::ordered_json(nullptr);
  exp["grid_max"] = c.grid_max;
  exp["grid_points"] = c.grid_points;
  m["experiment"] = exp;
  m["output"] = {{"directory", c.out_dir.generic_string()},
                 {"format", c.format == TableFormat::Csv ? "csv" : "json"},
                 {"files", files}};
  const std::string body = m.dump(2) + "\n";
  std::ofstream out(dir / "run_manifest.json", std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::IoError, "cannot write run manifest in " + dir.string());
  out << body;
  if (!out) throw Error(ErrorKind::IoError, "write failed for run manifest");
}

std::string file_name(const std::string& stem, TableFormat format) {
  return stem + (format == TableFormat::Csv ? ".csv" : ".json");
}

void emit(const RunConfig& c, const std::vector<std::pair<std::string, Table>>& tables,
          std::ostream& out) {
  std::error_code ec;
  fs::create_directories(c.out_dir, ec);
  if (ec) throw Error(ErrorKind::IoError, "cannot create " + c.out_dir.string() + ": " + ec.message());
  std::vector<std::string> names;
  for (const auto& [stem, table] : tables) {
    const std::string name = file_name(stem, c.format);
    write_table(table, c.out_dir / name, c.format);
    names.push_back(name);
    out << "wrote " << (c.out_dir / name).generic_string() << " (" << table.rows.size()
        << " rows)\n";
  }
  write_manifest(c, c.out_dir, names);
}

Execution execution(const RunConfig& c) { return Execution{true, c.threads}; }

ModelParams model(const RunConfig& c) { return ModelParams::validate(c.raw_params()); }

Table simulate_table(const RunConfig& c) {
  const ModelParams params = model(c);
  const sim::Mode mode = sim::parse_mode(c.mode);
  const int steps = c.steps.value_or(params.kappa());
  if (c.replicates < 1) throw Error(ErrorKind::BadParameter, "replicates must be >= 1");
  check_horizon(params, steps);
  std::vector<sim::Trajectory> runs(c.replicates);
  for_each_replicate(c.replicates, execution(c), [&](std::size_t r) {
    runs[r] = sim::simulate(params, steps, mode, r);
  });

  Table t;
  t.header = {"replicate", "n"};
  for (std::size_t i = 0; i < params.dim(); ++i) t.header.push_back("z_" + std::to_string(i + 1));
  if (mode == sim::Mode::Coupled) {
    for (std::size_t i = 0; i < params.dim(); ++i) t.header.push_back("y_" + std::to_string(i + 1));
  }
  for (const auto& run : runs) {
    for (const auto& s : run.states) {
      std::vector<Cell> row{static_cast<std::int64_t>(run.stream_id), static_cast<std::int64_t>(s.n)};
      for (auto zi : s.z) row.emplace_back(static_cast<std::int64_t>(zi));
      if (s.y) {
        for (auto yi : *s.y) row.emplace_back(static_cast<std::int64_t>(yi));
      }
      t.rows.push_back(std::move(row));
    }
  }
  return t;
}

void print_summary(const harness::ErrorSummary& s, std::ostream& out) {
  for (std::size_t i = 0; i < s.types.size(); ++i) {
    const auto& t = s.types[i];
    out << "kappa=" << s.kappa << " type=" << i + 1 << " median_abs_error="
        << format_real(t.median_abs_error) << " median_rel_error=" << format_real(t.median_rel_error)
        << "\n";
  }
}

int run_maps(const RunConfig& c, const MapsRequest& req, std::ostream& out) {
  double v1 = 0.0;
  if (!req.v1.empty()) {
    v1 = parse_real_list(req.v1, "v1").at(0);
  } else if (!c.v.empty()) {
    v1 = c.v.front();
  } else {
    throw Error(ErrorKind::ConfigError, "maps needs --v1 or --v");
  }
  const double tol = c.tolerance;

  auto params_for_vectors = [&]() {
    if (c.v.empty()) throw Error(ErrorKind::ConfigError, "vector maps need --v");
    RawParams raw = c.raw_params();
    if (raw.z0.empty()) raw.z0.assign(raw.v.size(), 1);
    if (raw.kappa < 1) raw.kappa = 1;
    return ModelParams::validate(raw);
  };
  auto join = [](const std::vector<double>& xs) {
    std::string s;
    for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? ";" : "") + format_real(xs[i]);
    return s;
  };

  Table t;
  t.header = {"quantity", "input", "n", "value", "certificate", "terms"};
  for (double r : req.f_points) {
    t.rows.push_back({std::string("f_iterate"), format_real(r), std::int64_t{req.n},
                      maps::f_apply(r, req.n, v1), 0.0, std::int64_t{0}});
  }
  for (double y : req.finv_points) {
    t.rows.push_back({std::string("f_inverse"), format_real(y), std::int64_t{-1},
                      maps::f_inverse(y, v1), 0.0, std::int64_t{0}});
  }
  for (double r : req.h_points) {
    const auto h = maps::H_eval(r, v1, tol);
    t.rows.push_back({std::string("H"), format_real(r), std::int64_t{0}, h.value,
                      h.truncation_bound, std::int64_t{h.terms_used}});
  }
  if (!req.g_points.empty()) {
    const ModelParams params = params_for_vectors();
    for (double r : req.g_points) {
      const auto g = maps::G_eval(r, params, tol);
      for (std::size_t i = 0; i < g.size(); ++i) {
        t.rows.push_back({"G_" + std::to_string(i + 1), format_real(r), std::int64_t{0}, g[i].value,
                          g[i].truncation_bound, std::int64_t{g[i].terms_used}});
      }
    }
  }
  auto vector_rows = [&](const std::string& name, const std::string& text, auto&& fn, int n) {
    if (text.empty()) return;
    const ModelParams params = params_for_vectors();
    const auto x = parse_real_list(text, name);
    const auto y = fn(x, params);
    for (std::size_t i = 0; i < y.size(); ++i) {
      t.rows.push_back({name + "_" + std::to_string(i + 1), join(x), std::int64_t{n}, y[i], 0.0,
                        std::int64_t{0}});
    }
  };
  vector_rows("F", req.F_point, [](const auto& x, const auto& p) { return maps::F_apply(x, p); }, 1);
  vector_rows("F_inverse", req.Finv_point,
              [](const auto& x, const auto& p) { return maps::F_inverse(x, p); }, -1);
  vector_rows("F_iterate", req.iterate_point,
              [&](const auto& x, const auto& p) { return maps::F_iterate(x, req.n, p); }, req.n);

  if (t.rows.empty()) {
    throw Error(ErrorKind::ConfigError, "maps: nothing to evaluate (use --f, --finv, --H, --G, --F, --Finv or --iterate)");
  }
  out << to_csv(t);
  return kExitOk;
}

int run_command(const RunConfig& c, const MapsRequest& maps_req, std::ostream& out) {
  if (!(c.tolerance > 0.0)) throw Error(ErrorKind::BadTolerance, "tol must be > 0");
  if (c.command == "maps") return run_maps(c, maps_req, out);

  if (c.command == "simulate") {
    emit(c, {{"simulate", simulate_table(c)}}, out);
  } else if (c.command == "theorem1") {
    const ModelParams params = model(c);
    const auto records = harness::run_theorem1(params, c.replicates, execution(c));
    emit(c, {{"theorem1", harness::theorem1_table(records)}}, out);
    print_summary(harness::summarize(records, params.kappa()), out);
  } else if (c.command == "theorem2") {
    const ModelParams params = model(c);
    const auto records = harness::run_theorem2(params, c.n_offset, c.replicates, execution(c));
    emit(c, {{"theorem2", harness::theorem2_table(records)}}, out);
  } else if (c.command == "sweep") {
    const ModelParams params = model(c);
    const auto summaries =
        harness::convergence_sweep(params, c.kappa_list, c.replicates, execution(c));
    emit(c, {{"sweep", harness::sweep_table(summaries)}}, out);
    for (const auto& s : summaries) print_summary(s, out);
  } else if (c.command == "figure") {
    if (c.figure_id.empty()) throw Error(ErrorKind::ConfigError, "figure needs --id A|1|2|3");
    const auto id = harness::parse_figure(c.figure_id);
    const ModelParams params = model(c);
    harness::FigureOptions options;
    options.replicates = c.replicates;
    options.n_offset = c.n_offset;
    options.grid_max = c.grid_max;
    options.grid_points = c.grid_points;
    options.tol = c.tolerance;
    options.exec = execution(c);
    emit(c, {{"figure" + harness::to_string(id), harness::figure_data(id, params, options)}}, out);
  }
  return kExitOk;
}

int exit_code_for(ErrorKind kind) {
  switch (category(kind)) {
    case ErrorCategory::Config: return kExitConfig;
    case ErrorCategory::Numerical: return kExitNumerical;
    case ErrorCategory::Io: return kExitIo;
  }
  return kExitNumerical;
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Multitype PCR branching process toolkit", "mpcr"};
  app.footer(kFooter);
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  FlagValues flags;
  MapsRequest maps_req;

  auto add_common = [&](CLI::App& sub) {
    sub.add_option("--config", flags.config_path, "key = value config file");
    add_flag(sub, flags, "--out", "out", "output directory");
    add_flag(sub, flags, "--format", "format", "csv | json");
    add_flag(sub, flags, "--replicates", "replicates", "number of replicates");
    add_flag(sub, flags, "--seed", "seed", "root RNG seed");
    add_flag(sub, flags, "--kappa", "kappa", "pivot exponent, K = (1+v1)^kappa");
    add_flag(sub, flags, "--v", "v", "comma-separated replication probabilities");
    add_flag(sub, flags, "--z0", "z0", "comma-separated initial copy numbers");
    add_flag(sub, flags, "--n-offset", "n_offset", "time offset n relative to kappa");
    add_flag(sub, flags, "--tol", "tol", "certificate tolerance for limit functions");
    add_flag(sub, flags, "--threads", "threads", "worker threads (0 = auto)");
  };

  auto* maps_cmd = app.add_subcommand("maps", "evaluate f, f^-1, H, G, F, F^-1 with certificates");
  auto* simulate_cmd = app.add_subcommand("simulate", "simulate trajectories");
  auto* thm1_cmd = app.add_subcommand("theorem1", "paired scaled populations vs W_i G_i(W_0)");
  auto* thm2_cmd = app.add_subcommand("theorem2", "densities at kappa+n vs f^(n)(H(W_0))");
  auto* sweep_cmd = app.add_subcommand("sweep", "theorem-1 error summaries over a kappa list");
  auto* figure_cmd = app.add_subcommand("figure", "data behind figures A, 1, 2, 3");
  for (auto* sub : {maps_cmd, simulate_cmd, thm1_cmd, thm2_cmd, sweep_cmd, figure_cmd}) {
    add_common(*sub);
  }

  maps_cmd->add_option("--f", maps_req.f_points, "points r for f^(n)(r)")->delimiter(',');
  maps_cmd->add_option("--n", maps_req.n, "iterate count for --f and --iterate");
  maps_cmd->add_option("--finv", maps_req.finv_points, "points y for f^-1(y)")->delimiter(',');
  maps_cmd->add_option("--H", maps_req.h_points, "points r for H(r)")->delimiter(',');
  maps_cmd->add_option("--G", maps_req.g_points, "points r for G_i(r)")->delimiter(',');
  maps_cmd->add_option("--F", maps_req.F_point, "vector x for F(x)");
  maps_cmd->add_option("--Finv", maps_req.Finv_point, "vector y for F^-1(y)");
  maps_cmd->add_option("--iterate", maps_req.iterate_point, "vector x for F^(n)(x)");
  maps_cmd->add_option("--v1", maps_req.v1, "leading replication probability");

  add_flag(*simulate_cmd, flags, "--mode", "mode", "mpcr | coupled | gw");
  add_flag(*simulate_cmd, flags, "--steps", "steps", "number of steps (default kappa)");
  add_flag(*sweep_cmd, flags, "--kappa-list", "kappa_list", "comma-separated increasing kappas");
  add_flag(*figure_cmd, flags, "--id", "id", "A | 1 | 2 | 3");
  add_flag(*figure_cmd, flags, "--grid-max", "grid_max", "figure A: largest x");
  add_flag(*figure_cmd, flags, "--grid-points", "grid_points", "figure A: grid size");

  std::vector<char*> argv;
  std::vector<std::string> storage(args);
  if (storage.empty()) storage.push_back("mpcr");
  for (auto& a : storage) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return kExitOk;
    }
    err << "mpcr: error: " << e.what() << "\n";
    return kExitConfig;
  }

  try {
    RunConfig config;
    config.command = app.get_subcommands().front()->get_name();
    if (!flags.config_path.empty()) apply_config(config, read_config_file(flags.config_path));
    apply_config(config, flags.entries);
    if (const char* env = std::getenv("MPCR_OUT"); env != nullptr && *env != '\0') {
      config.out_dir = env;
    }
    return run_command(config, maps_req, out);
  } catch (const Error& e) {
    err << "mpcr: error: " << e.what() << "\n";
    return exit_code_for(e.kind());
  } catch (const std::filesystem::filesystem_error& e) {
    err << "mpcr: error: IoError: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    err << "mpcr: error: " << e.what() << "\n";
    return kExitNumerical;
  }
}

}  // namespace mpcr::cli
