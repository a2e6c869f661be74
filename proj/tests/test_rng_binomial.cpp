#include <doctest.h>

#include <boost/math/distributions/binomial.hpp>
#include <boost/math/distributions/chi_squared.hpp>
#include <cmath>
#include <vector>

#include "mpcr/binomial.hpp"
#include "mpcr/error.hpp"
#include "mpcr/rng.hpp"

using namespace mpcr;

namespace {

// Pearson statistic against the exact pmf, pooling cells with expected count < 5.
bool passes_chi_square(std::uint64_t n, double p, std::size_t draws, std::uint64_t seed) {
  RngStream rng(seed, 0);
  std::vector<double> observed(n + 1, 0.0);
  for (std::size_t k = 0; k < draws; ++k) observed[sample_binomial(n, p, rng)] += 1.0;

  boost::math::binomial_distribution<double> exact(static_cast<double>(n), p);
  double stat = 0.0;
  int cells = 0;
  double pooled_obs = 0.0;
  double pooled_exp = 0.0;
  for (std::uint64_t k = 0; k <= n; ++k) {
    pooled_obs += observed[k];
    pooled_exp += draws * boost::math::pdf(exact, static_cast<double>(k));
    if (pooled_exp >= 5.0) {
      stat += (pooled_obs - pooled_exp) * (pooled_obs - pooled_exp) / pooled_exp;
      ++cells;
      pooled_obs = pooled_exp = 0.0;
    }
  }
  if (pooled_exp > 0.0) stat += (pooled_obs - pooled_exp) * (pooled_obs - pooled_exp) / pooled_exp;
  boost::math::chi_squared_distribution<double> chi(cells - 1);
  return stat < boost::math::quantile(chi, 1.0 - 1e-4);
}

}  // namespace

TEST_CASE("philox4x32-10 known-answer vectors") {
  using A4 = std::array<std::uint32_t, 4>;
  using A2 = std::array<std::uint32_t, 2>;
  CHECK(philox4x32_10(A4{0, 0, 0, 0}, A2{0, 0}) ==
        A4{0x6627e8d5u, 0xe169c58du, 0xbc57ac4cu, 0x9b00dbd8u});
  CHECK(philox4x32_10(A4{0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu},
                      A2{0xffffffffu, 0xffffffffu}) ==
        A4{0x408f276du, 0x41c83b0eu, 0xa20bc7c6u, 0x6d5451fdu});
  CHECK(philox4x32_10(A4{0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u},
                      A2{0xa4093822u, 0x299f31d0u}) ==
        A4{0xd16cfe09u, 0x94fdccebu, 0x5001e420u, 0x24126ea1u});
}

TEST_CASE("streams are reproducible and distinct") {
  RngStream a(42, 7), b(42, 7), c(42, 8), d(43, 7);
  bool differs_stream = false;
  bool differs_seed = false;
  for (int i = 0; i < 100; ++i) {
    const auto x = a.next_u64();
    CHECK(x == b.next_u64());
    differs_stream |= x != c.next_u64();
    differs_seed |= x != d.next_u64();
  }
  CHECK(differs_stream);
  CHECK(differs_seed);

  RngStream u(1, 1);
  for (int i = 0; i < 10000; ++i) {
    const double x = u.uniform();
    CHECK((x >= 0.0 && x < 1.0));
    const double y = u.uniform_open();
    CHECK((y > 0.0 && y < 1.0));
  }
}

TEST_CASE("binomial edge cases") {
  RngStream rng(3, 0);
  CHECK(sample_binomial(0, 0.5, rng) == 0);
  CHECK(sample_binomial(7, 1.0, rng) == 7);
  CHECK(sample_binomial(7, 0.0, rng) == 0);
  CHECK_THROWS_AS(sample_binomial(5, 1.5, rng), Error);
  CHECK_THROWS_AS(sample_binomial(5, -0.1, rng), Error);
  CHECK_THROWS_AS(sample_binomial(5, std::nan(""), rng), Error);
  for (int i = 0; i < 1000; ++i) CHECK(sample_binomial(20, 0.97, rng) <= 20);
}

TEST_CASE("binomial large-n mean within four standard errors") {
  RngStream rng(2024, 0);
  const std::uint64_t n = 1000000;
  const double p = 0.45;
  const int draws = 10000;
  double sum = 0.0;
  for (int i = 0; i < draws; ++i) sum += static_cast<double>(sample_binomial(n, p, rng));
  const double mean = sum / draws;
  const double se = std::sqrt(n * p * (1 - p)) / std::sqrt(static_cast<double>(draws));
  CHECK(std::abs(mean - 450000.0) <= 4.0 * se);
}

TEST_CASE("binomial matches the exact law in both regimes") {
  CHECK(passes_chi_square(10, 0.3, 200000, 11));    // inversion
  CHECK(passes_chi_square(1000, 0.004, 200000, 12));  // inversion, tiny p
  CHECK(passes_chi_square(60, 0.4, 200000, 13));    // BTRD
  CHECK(passes_chi_square(500, 0.8, 200000, 14));   // BTRD with symmetry flip
  CHECK(passes_chi_square(5000, 0.05, 200000, 15)); // BTRD, skewed
}
