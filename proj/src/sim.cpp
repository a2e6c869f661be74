#include "mpcr/sim.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mpcr/binomial.hpp"
#include "mpcr/error.hpp"

namespace mpcr::sim {

std::string_view to_string(Mode mode) noexcept {
  switch (mode) {
    case Mode::MpcrOnly: return "mpcr";
    case Mode::Coupled: return "coupled";
    case Mode::GwOnly: return "gw";
  }
  return "unknown";
}

Mode parse_mode(std::string_view name) {
  if (name == "mpcr") return Mode::MpcrOnly;
  if (name == "coupled") return Mode::Coupled;
  if (name == "gw") return Mode::GwOnly;
  throw Error(ErrorKind::ConfigError, "unknown mode '" + std::string(name) +
                                          "' (expected mpcr, coupled or gw)");
}

double replication_probability(double v, double K, std::uint64_t total) noexcept {
  return v * K / (K + static_cast<double>(total));
}

namespace {

// A population can at most double per step; refuse to step past 2^62.
void guard_counts(const std::vector<std::uint64_t>& counts) {
  constexpr std::uint64_t kCeiling = std::uint64_t{1} << 62;
  for (std::uint64_t c : counts) {
    if (c > kCeiling) throw Error(ErrorKind::OverflowRisk, "population exceeds 2^62");
  }
}

void require_dim(const PopulationState& state, const ChainRates& rates) {
  if (state.z.size() != rates.v.size() || (state.y && state.y->size() != rates.v.size())) {
    throw Error(ErrorKind::DimensionMismatch, "state and rates disagree on the number of types");
  }
}

}  // namespace

ChainRates ChainRates::from(const ModelParams& params) { return {params.v(), params.K()}; }

ChainRates ChainRates::make(std::vector<double> v, double K) {
  if (!(K > 0.0) || !std::isfinite(K)) throw Error(ErrorKind::BadParameter, "K must be > 0");
  for (double vi : v) {
    if (!(vi > 0.0 && vi <= 1.0)) throw Error(ErrorKind::BadProbability, "v outside (0,1]");
  }
  return {std::move(v), K};
}

PopulationState mpcr_step(const PopulationState& state, const ModelParams& params,
                          RngStream& rng) {
  return mpcr_step(state, ChainRates::from(params), rng);
}

PopulationState coupled_step(const PopulationState& state, const ModelParams& params,
                             RngStream& rng) {
  return coupled_step(state, ChainRates::from(params), rng);
}

PopulationState gw_step(const PopulationState& state, const ModelParams& params,
                        RngStream& rng) {
  return gw_step(state, ChainRates::from(params), rng);
}

PopulationState mpcr_step(const PopulationState& state, const ChainRates& params, RngStream& rng) {
  require_dim(state, params);
  guard_counts(state.z);
  const std::uint64_t total = state.total();
  PopulationState next{state.n + 1, state.z, std::nullopt};
  for (std::size_t i = 0; i < state.z.size(); ++i) {
    const double p = replication_probability(params.v[i], params.K, total);
    next.z[i] += sample_binomial(state.z[i], p, rng);
  }
  return next;
}

PopulationState coupled_step(const PopulationState& state, const ChainRates& params,
                             RngStream& rng) {
  require_dim(state, params);
  if (!state.y) throw Error(ErrorKind::CouplingViolation, "coupled step needs a majorant");
  const auto& y = *state.y;
  for (std::size_t i = 0; i < state.z.size(); ++i) {
    if (state.z[i] > y[i]) {
      throw Error(ErrorKind::CouplingViolation,
                  "z exceeds y in type " + std::to_string(i + 1));
    }
  }

  guard_counts(y);
  const std::uint64_t total = state.total();
  PopulationState next{state.n + 1, state.z, y};
  auto& next_y = *next.y;
  for (std::size_t i = 0; i < state.z.size(); ++i) {
    // One shared uniform per molecule: U <= p replicates both copies,
    // p < U <= q only the majorant. Extra majorant molecules use q alone.
    const double q = params.v[i];
    const double p = replication_probability(q, params.K, total);
    const std::uint64_t shared = state.z[i];
    std::uint64_t both = shared;
    std::uint64_t majorant_only = 0;
    if (p < 1.0) {
      both = sample_binomial(shared, p, rng);
      const double conditional = std::min(1.0, (q - p) / (1.0 - p));
      majorant_only = sample_binomial(shared - both, conditional, rng);
    }
    const std::uint64_t extra = sample_binomial(y[i] - shared, q, rng);
    next.z[i] += both;
    next_y[i] += both + majorant_only + extra;
  }
  return next;
}

PopulationState gw_step(const PopulationState& state, const ChainRates& params, RngStream& rng) {
  require_dim(state, params);
  guard_counts(state.z);
  PopulationState next{state.n + 1, state.z, std::nullopt};
  for (std::size_t i = 0; i < state.z.size(); ++i) {
    next.z[i] += sample_binomial(state.z[i], params.v[i], rng);
  }
  return next;
}

namespace {

PopulationState initial_state(const ModelParams& params, Mode mode) {
  PopulationState s{0, params.z0(), std::nullopt};
  if (mode == Mode::Coupled) s.y = params.z0();
  return s;
}

PopulationState advance(const PopulationState& s, const ChainRates& params, Mode mode,
                        RngStream& rng) {
  switch (mode) {
    case Mode::Coupled: return coupled_step(s, params, rng);
    case Mode::GwOnly: return gw_step(s, params, rng);
    case Mode::MpcrOnly: break;
  }
  return mpcr_step(s, params, rng);
}

}  // namespace

Trajectory simulate(const ModelParams& params, int n_steps, Mode mode, std::uint64_t stream_id) {
  check_horizon(params, n_steps);
  RngStream rng(params.seed(), stream_id);
  Trajectory t{mode, stream_id, {}};
  t.states.reserve(static_cast<std::size_t>(n_steps) + 1);
  const ChainRates rates = ChainRates::from(params);
  t.states.push_back(initial_state(params, mode));
  for (int n = 0; n < n_steps; ++n) t.states.push_back(advance(t.states.back(), rates, mode, rng));
  return t;
}

PopulationState simulate_final(const ModelParams& params, int n_steps, Mode mode,
                               std::uint64_t stream_id) {
  check_horizon(params, n_steps);
  RngStream rng(params.seed(), stream_id);
  const ChainRates rates = ChainRates::from(params);
  PopulationState s = initial_state(params, mode);
  for (int n = 0; n < n_steps; ++n) s = advance(s, rates, mode, rng);
  return s;
}

std::vector<double> sample_W(const ModelParams& params, int horizon, RngStream& rng) {
  if (horizon < 1) throw Error(ErrorKind::BadParameter, "horizon must be >= 1");
  check_horizon(params, horizon);
  const ChainRates rates = ChainRates::from(params);
  PopulationState s{0, params.z0(), std::nullopt};
  for (int n = 0; n < horizon; ++n) s = gw_step(s, rates, rng);
  std::vector<double> w(s.z.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    w[i] = static_cast<double>(s.z[i]) / integer_power(params.b()[i], horizon);
  }
  return w;
}

}  // namespace mpcr::sim
