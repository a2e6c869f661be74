#include "mpcr/harness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "mpcr/error.hpp"
#include "mpcr/maps.hpp"
#include "mpcr/sim.hpp"

namespace mpcr::harness {
namespace {

struct PairedRun {
  PopulationState at_kappa;
  PopulationState at_offset;
};

// One coupled trajectory, long enough to observe Y at kappa and Z at kappa + n.
PairedRun run_paired(const ModelParams& params, int n_offset, std::uint64_t replicate) {
  const int kappa = params.kappa();
  const int target = kappa + n_offset;
  const int horizon = std::max(kappa, target);
  RngStream rng(params.seed(), replicate);
  const sim::ChainRates rates = sim::ChainRates::from(params);
  PopulationState state{0, params.z0(), params.z0()};
  PairedRun run;
  if (target == 0) run.at_offset = state;
  for (int n = 1; n <= horizon; ++n) {
    state = sim::coupled_step(state, rates, rng);
    if (n == kappa) run.at_kappa = state;
    if (n == target) run.at_offset = state;
  }
  return run;
}

ExperimentRecord theorem1_record(const ModelParams& params, const PopulationState& at_kappa,
                                 std::uint64_t replicate) {
  const std::size_t d = params.dim();
  ExperimentRecord rec;
  rec.replicate = replicate;
  rec.scaled_z.resize(d);
  rec.w_hat.resize(d);
  for (std::size_t i = 0; i < d; ++i) {
    const double scale = integer_power(params.b()[i], params.kappa());
    rec.scaled_z[i] = static_cast<double>(at_kappa.z[i]) / scale;
    rec.w_hat[i] = static_cast<double>((*at_kappa.y)[i]) / scale;
  }
  const auto limits = maps::theorem_limits(rec.w_hat, 0, params, kLimitTolerance);
  rec.thm1_limit = limits.thm1;
  rec.h_w0 = limits.thm2_total;
  return rec;
}

}  // namespace

double lower_median(std::vector<double> values) {
  if (values.empty()) throw Error(ErrorKind::EmptyInput, "median of an empty set");
  const auto mid = values.begin() + static_cast<std::ptrdiff_t>((values.size() - 1) / 2);
  std::nth_element(values.begin(), mid, values.end());
  return *mid;
}

std::vector<ExperimentRecord> run_theorem1(const ModelParams& params, std::size_t replicates,
                                           const Execution& exec) {
  if (replicates < 1) throw Error(ErrorKind::BadParameter, "replicates must be >= 1");
  check_horizon(params, params.kappa());
  std::vector<ExperimentRecord> records(replicates);
  for_each_replicate(replicates, exec, [&](std::size_t r) {
    const PairedRun run = run_paired(params, 0, r);
    records[r] = theorem1_record(params, run.at_kappa, r);
  });
  return records;
}

std::vector<ExperimentRecord> run_theorem2(const ModelParams& params, int n_offset,
                                           std::size_t replicates, const Execution& exec) {
  if (replicates < 1) throw Error(ErrorKind::BadParameter, "replicates must be >= 1");
  if (params.kappa() + n_offset < 1) {
    throw Error(ErrorKind::BadParameter, "kappa + n_offset must be >= 1");
  }
  check_horizon(params, std::max(params.kappa(), params.kappa() + n_offset));
  std::vector<ExperimentRecord> records(replicates);
  for_each_replicate(replicates, exec, [&](std::size_t r) {
    const PairedRun run = run_paired(params, n_offset, r);
    ExperimentRecord rec = theorem1_record(params, run.at_kappa, r);
    const auto limits = maps::theorem_limits(rec.w_hat, n_offset, params, kLimitTolerance);
    Theorem2Columns cols;
    cols.n_offset = n_offset;
    cols.limit_total = limits.thm2_total;
    cols.limit = limits.thm2_vector;
    cols.x.resize(params.dim());
    for (std::size_t i = 0; i < params.dim(); ++i) {
      cols.x[i] = static_cast<double>(run.at_offset.z[i]) / params.K();
    }
    cols.x_total = static_cast<double>(run.at_offset.total()) / params.K();
    rec.thm2 = std::move(cols);
    records[r] = std::move(rec);
  });
  return records;
}

ErrorSummary summarize(const std::vector<ExperimentRecord>& records, int kappa) {
  if (records.empty()) throw Error(ErrorKind::EmptyInput, "no records to summarize");
  const std::size_t d = records.front().scaled_z.size();
  ErrorSummary summary;
  summary.kappa = kappa;
  summary.replicates = records.size();
  summary.types.resize(d);
  for (std::size_t i = 0; i < d; ++i) {
    std::vector<double> abs_errors;
    std::vector<double> rel_errors;
    abs_errors.reserve(records.size());
    for (const auto& rec : records) {
      const double err = std::abs(rec.scaled_z[i] - rec.thm1_limit[i]);
      abs_errors.push_back(err);
      if (rec.thm1_limit[i] > kRelativeErrorFloor) rel_errors.push_back(err / rec.thm1_limit[i]);
    }
    TypeSummary& t = summary.types[i];
    // Summation in replicate order keeps the mean bit-reproducible.
    t.mean_abs_error = std::accumulate(abs_errors.begin(), abs_errors.end(), 0.0) /
                       static_cast<double>(abs_errors.size());
    t.min_abs_error = *std::min_element(abs_errors.begin(), abs_errors.end());
    t.max_abs_error = *std::max_element(abs_errors.begin(), abs_errors.end());
    t.median_abs_error = lower_median(abs_errors);
    t.rel_count = rel_errors.size();
    t.median_rel_error = rel_errors.empty() ? std::numeric_limits<double>::quiet_NaN()
                                            : lower_median(rel_errors);
  }
  return summary;
}

std::vector<ErrorSummary> convergence_sweep(const ModelParams& params_template,
                                            const std::vector<int>& kappa_list,
                                            std::size_t replicates, const Execution& exec) {
  if (kappa_list.empty()) throw Error(ErrorKind::EmptyInput, "kappa list is empty");
  for (std::size_t k = 0; k < kappa_list.size(); ++k) {
    if (kappa_list[k] < 4) throw Error(ErrorKind::BadParameter, "sweep kappa values must be >= 4");
    if (k > 0 && kappa_list[k] <= kappa_list[k - 1]) {
      throw Error(ErrorKind::BadParameter, "kappa list must be strictly increasing");
    }
  }
  std::vector<ErrorSummary> out;
  out.reserve(kappa_list.size());
  for (int kappa : kappa_list) {
    const ModelParams params = params_template.with_kappa(kappa);
    out.push_back(summarize(run_theorem1(params, replicates, exec), kappa));
  }
  return out;
}

FigureId parse_figure(const std::string& name) {
  if (name == "A" || name == "a") return FigureId::A;
  if (name == "1") return FigureId::One;
  if (name == "2") return FigureId::Two;
  if (name == "3") return FigureId::Three;
  throw Error(ErrorKind::UnknownFigure, "figure id must be one of A, 1, 2, 3; got '" + name + "'");
}

std::string to_string(FigureId id) {
  switch (id) {
    case FigureId::A: return "A";
    case FigureId::One: return "1";
    case FigureId::Two: return "2";
    case FigureId::Three: return "3";
  }
  return "?";
}

namespace {

std::string indexed(const char* stem, std::size_t i) { return stem + std::to_string(i + 1); }

Table figure_a(const ModelParams& params, const FigureOptions& options) {
  if (options.grid_points < 1) throw Error(ErrorKind::BadParameter, "grid needs >= 1 point");
  if (!(options.grid_max >= 0.0)) throw Error(ErrorKind::BadParameter, "grid_max must be >= 0");
  Table t;
  t.header.push_back("x");
  for (std::size_t i = 0; i < params.dim(); ++i) t.header.push_back(indexed("G_", i));
  const std::size_t n = options.grid_points;
  for (std::size_t k = 0; k < n; ++k) {
    const double x = n == 1 ? 0.0 : options.grid_max * static_cast<double>(k) /
                                         static_cast<double>(n - 1);
    const auto g = maps::G_eval(x, params, options.tol);
    std::vector<Cell> row{x};
    for (const auto& gi : g) row.emplace_back(gi.value);
    t.rows.push_back(std::move(row));
  }
  return t;
}

Table figure_one(const std::vector<ExperimentRecord>& records, std::size_t d) {
  Table t;
  t.header.push_back("replicate");
  for (std::size_t i = 0; i < d; ++i) {
    t.header.push_back(indexed("scaled_Z_", i));
    t.header.push_back(indexed("limit_", i));
  }
  for (const auto& rec : records) {
    std::vector<Cell> row{static_cast<std::int64_t>(rec.replicate)};
    for (std::size_t i = 0; i < d; ++i) {
      row.emplace_back(rec.scaled_z[i]);
      row.emplace_back(rec.thm1_limit[i]);
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

Table figure_two(const std::vector<ExperimentRecord>& records, const ModelParams& params) {
  const std::size_t d0 = params.dominant_count();
  if (d0 == params.dim()) {
    throw Error(ErrorKind::BadParameter, "figure 2 needs at least one non-dominant type");
  }
  Table t;
  t.header = {"replicate", "H_W0"};
  for (std::size_t i = d0; i < params.dim(); ++i) t.header.push_back(indexed("limit_", i));
  for (const auto& rec : records) {
    std::vector<Cell> row{static_cast<std::int64_t>(rec.replicate), rec.h_w0};
    for (std::size_t i = d0; i < params.dim(); ++i) row.emplace_back(rec.thm1_limit[i]);
    t.rows.push_back(std::move(row));
  }
  return t;
}

Table figure_three(const std::vector<ExperimentRecord>& records, std::size_t d) {
  Table t;
  t.header = {"replicate", "type", "simulated", "limit"};
  for (const auto& rec : records) {
    for (std::size_t i = 0; i < d; ++i) {
      t.rows.push_back({static_cast<std::int64_t>(rec.replicate),
                        static_cast<std::int64_t>(i + 1), rec.thm2->x[i], rec.thm2->limit[i]});
    }
  }
  return t;
}

}  // namespace

Table figure_data(FigureId id, const ModelParams& params, const FigureOptions& options) {
  switch (id) {
    case FigureId::A:
      return figure_a(params, options);
    case FigureId::One:
      return figure_one(run_theorem1(params, options.replicates, options.exec), params.dim());
    case FigureId::Two:
      return figure_two(run_theorem1(params, options.replicates, options.exec), params);
    case FigureId::Three:
      return figure_three(
          run_theorem2(params, options.n_offset, options.replicates, options.exec),
          params.dim());
  }
  throw Error(ErrorKind::UnknownFigure, "unhandled figure id");
}

Table theorem1_table(const std::vector<ExperimentRecord>& records) {
  if (records.empty()) return {};
  const std::size_t d = records.front().scaled_z.size();
  Table t;
  t.header.push_back("replicate");
  for (std::size_t i = 0; i < d; ++i) {
    t.header.push_back(indexed("scaled_Z_", i));
    t.header.push_back(indexed("W_hat_", i));
    t.header.push_back(indexed("limit_", i));
  }
  for (const auto& rec : records) {
    std::vector<Cell> row{static_cast<std::int64_t>(rec.replicate)};
    for (std::size_t i = 0; i < d; ++i) {
      row.emplace_back(rec.scaled_z[i]);
      row.emplace_back(rec.w_hat[i]);
      row.emplace_back(rec.thm1_limit[i]);
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

Table theorem2_table(const std::vector<ExperimentRecord>& records) {
  if (records.empty()) return {};
  const std::size_t d = records.front().scaled_z.size();
  Table t;
  t.header = {"replicate", "X_total", "limit_total"};
  for (std::size_t i = 0; i < d; ++i) {
    t.header.push_back(indexed("X_", i));
    t.header.push_back(indexed("limit_", i));
    t.header.push_back(indexed("W_hat_", i));
  }
  for (const auto& rec : records) {
    const auto& c = *rec.thm2;
    std::vector<Cell> row{static_cast<std::int64_t>(rec.replicate), c.x_total, c.limit_total};
    for (std::size_t i = 0; i < d; ++i) {
      row.emplace_back(c.x[i]);
      row.emplace_back(c.limit[i]);
      row.emplace_back(rec.w_hat[i]);
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

Table sweep_table(const std::vector<ErrorSummary>& summaries) {
  Table t;
  t.header = {"kappa",           "type",           "replicates", "mean_abs_error",
              "median_abs_error", "median_rel_error", "rel_count"};
  for (const auto& s : summaries) {
    for (std::size_t i = 0; i < s.types.size(); ++i) {
      const auto& ty = s.types[i];
      t.rows.push_back({static_cast<std::int64_t>(s.kappa), static_cast<std::int64_t>(i + 1),
                        static_cast<std::int64_t>(s.replicates), ty.mean_abs_error,
                        ty.median_abs_error, ty.median_rel_error,
                        static_cast<std::int64_t>(ty.rel_count)});
    }
  }
  return t;
}

}  // namespace mpcr::harness
