#pragma once

#include <cstdint>
#include <vector>

#include "mpcr/model.hpp"

namespace mpcr::test {

inline ModelParams make_params(std::vector<double> v, std::vector<std::int64_t> z0, int kappa,
                               std::uint64_t seed = 12345) {
  RawParams raw;
  raw.v = std::move(v);
  raw.z0 = std::move(z0);
  raw.kappa = kappa;
  raw.seed = seed;
  return ModelParams::validate(raw);
}

}  // namespace mpcr::test
