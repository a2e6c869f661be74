#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mpcr/model.hpp"
#include "mpcr/parallel.hpp"
#include "mpcr/table.hpp"

// Paired Monte Carlo experiments: each replicate simulates one coupled
// trajectory on its own stream and compares the scaled population with the
// limit predicted from the same trajectory's Galton-Watson majorant.
namespace mpcr::harness {

inline constexpr double kLimitTolerance = 1e-8;
inline constexpr double kRelativeErrorFloor = 1e-3;

struct Theorem2Columns {
  int n_offset = 0;
  double x_total = 0.0;      // Z(kappa + n) / K
  double limit_total = 0.0;  // f^(n)(H(W_0))
  std::vector<double> x;     // Z_i(kappa + n) / K
  std::vector<double> limit; // (W_i / W_0) f^(n)(H(W_0)), zero off the dominant block
};

struct ExperimentRecord {
  std::uint64_t replicate = 0;
  std::vector<double> scaled_z;     // b_i^{-kappa} Z_i(kappa)
  std::vector<double> w_hat;        // b_i^{-kappa} Y_i(kappa)
  std::vector<double> thm1_limit;   // W_i G_i(W_0)
  double h_w0 = 0.0;                // H(W_0)
  std::optional<Theorem2Columns> thm2;
};

struct TypeSummary {
  double mean_abs_error = 0.0;
  double median_abs_error = 0.0;
  double min_abs_error = 0.0;
  double max_abs_error = 0.0;
  double median_rel_error = 0.0;  // NaN when no record clears the floor
  std::size_t rel_count = 0;
};

struct ErrorSummary {
  int kappa = 0;
  std::size_t replicates = 0;
  std::vector<TypeSummary> types;
};

// Lower median: element (n-1)/2 of the sorted values.
double lower_median(std::vector<double> values);

std::vector<ExperimentRecord> run_theorem1(const ModelParams& params, std::size_t replicates,
                                           const Execution& exec = {});

std::vector<ExperimentRecord> run_theorem2(const ModelParams& params, int n_offset,
                                           std::size_t replicates, const Execution& exec = {});

ErrorSummary summarize(const std::vector<ExperimentRecord>& records, int kappa);

std::vector<ErrorSummary> convergence_sweep(const ModelParams& params_template,
                                            const std::vector<int>& kappa_list,
                                            std::size_t replicates, const Execution& exec = {});

enum class FigureId { A, One, Two, Three };

FigureId parse_figure(const std::string& name);
std::string to_string(FigureId id);

struct FigureOptions {
  std::size_t replicates = 200;
  int n_offset = -3;
  double grid_max = 10.0;
  std::size_t grid_points = 101;
  double tol = kLimitTolerance;
  Execution exec;
};

Table figure_data(FigureId id, const ModelParams& params, const FigureOptions& options);

Table theorem1_table(const std::vector<ExperimentRecord>& records);
Table theorem2_table(const std::vector<ExperimentRecord>& records);
Table sweep_table(const std::vector<ErrorSummary>& summaries);

}  // namespace mpcr::harness
