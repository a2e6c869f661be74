#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "mpcr/model.hpp"
#include "mpcr/rng.hpp"

namespace mpcr::sim {

enum class Mode {
  MpcrOnly,  // density-dependent chain Z only
  Coupled,   // Z together with its Galton-Watson majorant Y on shared randomness
  GwOnly,    // Galton-Watson process alone; its counts are stored in PopulationState::z
};

std::string_view to_string(Mode mode) noexcept;
Mode parse_mode(std::string_view name);

struct Trajectory {
  Mode mode = Mode::MpcrOnly;
  std::uint64_t stream_id = 0;
  std::vector<PopulationState> states;  // states[n] for n = 0..n_steps
};

// Per-molecule replication probability v_i K / (K + z).
double replication_probability(double v, double K, std::uint64_t total) noexcept;

// What a single step needs: replication probabilities and the saturation
// constant. Unlike ModelParams, K is free here (any K > 0).
struct ChainRates {
  std::vector<double> v;
  double K = 1.0;

  static ChainRates from(const ModelParams& params);
  static ChainRates make(std::vector<double> v, double K);
};

PopulationState mpcr_step(const PopulationState& state, const ChainRates& rates, RngStream& rng);
PopulationState coupled_step(const PopulationState& state, const ChainRates& rates,
                             RngStream& rng);
PopulationState gw_step(const PopulationState& state, const ChainRates& rates, RngStream& rng);

PopulationState mpcr_step(const PopulationState& state, const ModelParams& params,
                          RngStream& rng);
PopulationState coupled_step(const PopulationState& state, const ModelParams& params,
                             RngStream& rng);
PopulationState gw_step(const PopulationState& state, const ModelParams& params,
                        RngStream& rng);

// Runs from z0 (and y0 = z0 when coupled) on stream (params.seed(), stream_id).
Trajectory simulate(const ModelParams& params, int n_steps, Mode mode, std::uint64_t stream_id);

// Same run, keeping only the final state.
PopulationState simulate_final(const ModelParams& params, int n_steps, Mode mode,
                               std::uint64_t stream_id);

// Galton-Watson martingale b_i^{-horizon} Y_i(horizon) started from z0.
std::vector<double> sample_W(const ModelParams& params, int horizon, RngStream& rng);

}  // namespace mpcr::sim
