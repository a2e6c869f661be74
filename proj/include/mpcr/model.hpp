#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace mpcr {

// Unvalidated user input, as read from a config file or flags.
struct RawParams {
  int kappa = 0;
  std::vector<double> v;
  std::vector<std::int64_t> z0;
  std::uint64_t seed = 0;
};

/// Validated parameters of a multitype PCR branching process.
///
/// Replication probabilities must satisfy
///   1 >= v[0] = ... = v[d0-1] > v[d0] >= ... >= v[d-1] > 0,
/// where d0 is derived from the leading block of exactly equal values.
/// The saturation constant is K = (1 + v[0])^kappa, so the pivot time
/// log_{b1} K is the integer kappa by construction.
class ModelParams {
 public:
  static ModelParams validate(const RawParams& raw);

  int kappa() const noexcept { return kappa_; }
  std::size_t dim() const noexcept { return v_.size(); }
  std::size_t dominant_count() const noexcept { return d0_; }
  double K() const noexcept { return K_; }
  std::uint64_t seed() const noexcept { return seed_; }

  const std::vector<double>& v() const noexcept { return v_; }
  const std::vector<double>& b() const noexcept { return b_; }
  const std::vector<std::uint64_t>& z0() const noexcept { return z0_; }
  double v1() const noexcept { return v_.front(); }
  double b1() const noexcept { return b_.front(); }
  std::uint64_t total_z0() const noexcept { return total_z0_; }

  // Copy with a different kappa (K re-derived); used by sweeps.
  ModelParams with_kappa(int kappa) const;
  ModelParams with_seed(std::uint64_t seed) const;

  RawParams raw() const;

 private:
  ModelParams() = default;

  int kappa_ = 0;
  std::vector<double> v_;
  std::vector<double> b_;
  std::vector<std::uint64_t> z0_;
  std::uint64_t seed_ = 0;
  std::size_t d0_ = 0;
  double K_ = 0.0;
  std::uint64_t total_z0_ = 0;
};

// base^n by repeated multiplication, so every module sees the same bits.
double integer_power(double base, int n) noexcept;

// Largest population total a run may reach in expectation (2^62).
inline constexpr double kPopulationCeiling = 4611686018427387904.0;

// Throws OverflowRisk unless b1^steps * total z0 stays below the ceiling.
void check_horizon(const ModelParams& params, int steps);

struct PopulationState {
  int n = 0;
  std::vector<std::uint64_t> z;
  std::optional<std::vector<std::uint64_t>> y;

  std::uint64_t total() const noexcept;
};

}  // namespace mpcr
