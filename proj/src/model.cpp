#include "mpcr/model.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "mpcr/error.hpp"

namespace mpcr {

double integer_power(double base, int n) noexcept {
  double result = 1.0;
  for (int i = 0; i < n; ++i) result *= base;
  return result;
}

ModelParams ModelParams::validate(const RawParams& raw) {
  if (raw.v.empty()) throw Error(ErrorKind::BadParameter, "v must have at least one entry");
  if (raw.z0.size() != raw.v.size()) {
    throw Error(ErrorKind::DimensionMismatch,
                "z0 has " + std::to_string(raw.z0.size()) + " entries, v has " +
                    std::to_string(raw.v.size()));
  }
  if (raw.kappa < 1) throw Error(ErrorKind::BadParameter, "kappa must be >= 1");
  for (double vi : raw.v) {
    if (!(vi > 0.0 && vi <= 1.0)) {
      throw Error(ErrorKind::BadProbability, "replication probability outside (0,1]: " +
                                                 std::to_string(vi));
    }
  }
  for (std::size_t i = 1; i < raw.v.size(); ++i) {
    if (raw.v[i] > raw.v[i - 1]) {
      throw Error(ErrorKind::OrderingViolation,
                  "v must be non-increasing (v[" + std::to_string(i) + "] > v[" +
                      std::to_string(i - 1) + "])");
    }
  }
  // Non-increasing already forces any tie with v[0] into the leading block.
  std::size_t d0 = 1;
  while (d0 < raw.v.size() && raw.v[d0] == raw.v[0]) ++d0;

  std::uint64_t total = 0;
  for (std::int64_t zi : raw.z0) {
    if (zi < 0) throw Error(ErrorKind::NegativeInput, "z0 entries must be >= 0");
    total += static_cast<std::uint64_t>(zi);
  }
  if (total == 0) throw Error(ErrorKind::EmptyPopulation, "z0 sums to zero");

  ModelParams p;
  p.kappa_ = raw.kappa;
  p.v_ = raw.v;
  p.b_.reserve(raw.v.size());
  for (double vi : raw.v) p.b_.push_back(1.0 + vi);
  p.z0_.assign(raw.z0.begin(), raw.z0.end());
  p.seed_ = raw.seed;
  p.d0_ = d0;
  p.total_z0_ = total;
  p.K_ = integer_power(p.b_.front(), raw.kappa);
  if (!(p.K_ > 1.0)) throw Error(ErrorKind::BadParameter, "K must exceed 1");
  check_horizon(p, raw.kappa);
  return p;
}

ModelParams ModelParams::with_kappa(int kappa) const {
  RawParams r = raw();
  r.kappa = kappa;
  return validate(r);
}

ModelParams ModelParams::with_seed(std::uint64_t seed) const {
  ModelParams copy = *this;
  copy.seed_ = seed;
  return copy;
}

RawParams ModelParams::raw() const {
  RawParams r;
  r.kappa = kappa_;
  r.v = v_;
  r.z0.assign(z0_.begin(), z0_.end());
  r.seed = seed_;
  return r;
}

void check_horizon(const ModelParams& params, int steps) {
  if (steps < 0) throw Error(ErrorKind::BadParameter, "step count must be >= 0");
  const double projected =
      integer_power(params.b1(), steps) * static_cast<double>(params.total_z0());
  if (!(projected < kPopulationCeiling)) {
    throw Error(ErrorKind::OverflowRisk, "b1^" + std::to_string(steps) +
                                             " * total z0 exceeds 2^62 population ceiling");
  }
}

std::uint64_t PopulationState::total() const noexcept {
  return std::accumulate(z.begin(), z.end(), std::uint64_t{0});
}

}  // namespace mpcr
