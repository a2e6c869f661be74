#pragma once

#include <cstdint>

#include "mpcr/rng.hpp"

namespace mpcr {

/// Exact Binomial(n, p) variate.
///
/// Sequential inversion when min(p, 1-p) * (n+1) < 11, otherwise Hormann's
/// BTRD transformed-rejection sampler (expected O(1) uniforms for any n).
/// Never falls back to a normal approximation.
std::uint64_t sample_binomial(std::uint64_t n, double p, RngStream& rng);

}  // namespace mpcr
