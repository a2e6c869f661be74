#include <doctest.h>

#include <boost/math/distributions/chi_squared.hpp>
#include <cmath>

#include "mpcr/error.hpp"
#include "mpcr/maps.hpp"
#include "mpcr/sim.hpp"
#include "test_support.hpp"

using namespace mpcr;
using namespace mpcr::sim;
using mpcr::test::make_params;

namespace {

bool within_se(double observed_mean, double expected, double sd, double count, double k = 4.0) {
  return std::abs(observed_mean - expected) <= k * sd / std::sqrt(count);
}

}  // namespace

TEST_CASE("absorbing zero state") {
  const auto rates = ChainRates::make({0.9, 0.2}, 1e6);
  RngStream rng(1, 0);
  const PopulationState zero{0, {0, 0}, std::nullopt};
  CHECK(mpcr_step(zero, rates, rng).z == zero.z);
  PopulationState coupled{0, {0, 0}, std::vector<std::uint64_t>{0, 0}};
  const auto next = coupled_step(coupled, rates, rng);
  CHECK(next.z == coupled.z);
  CHECK(*next.y == *coupled.y);
  CHECK(next.n == 1);
}

TEST_CASE("replication probability example") {
  CHECK(replication_probability(0.9, 1.0, 1) == doctest::Approx(0.45));
  CHECK(replication_probability(0.9, 1e300, 5) == doctest::Approx(0.9));
}

TEST_CASE("one-step law d=1, K=1, z=1") {
  const auto rates = ChainRates::make({0.9}, 1.0);
  RngStream rng(77, 0);
  const PopulationState start{0, {1}, std::nullopt};
  const int draws = 200000;
  int doubled = 0;
  for (int i = 0; i < draws; ++i) doubled += mpcr_step(start, rates, rng).z[0] == 2;
  CHECK(within_se(double(doubled) / draws, 0.45, std::sqrt(0.45 * 0.55), draws));
}

TEST_CASE("coupled one-step joint cells and marginal equivalence") {
  const auto rates = ChainRates::make({0.9}, 1.0);
  RngStream rng(78, 0);
  const PopulationState start{0, {1}, std::vector<std::uint64_t>{1}};
  const int draws = 200000;
  double cells[3] = {0, 0, 0};  // (2,2), (1,2), (1,1)
  for (int i = 0; i < draws; ++i) {
    const auto s = coupled_step(start, rates, rng);
    CHECK(s.z[0] <= (*s.y)[0]);
    if (s.z[0] == 2 && (*s.y)[0] == 2) {
      cells[0] += 1;
    } else if (s.z[0] == 1 && (*s.y)[0] == 2) {
      cells[1] += 1;
    } else if (s.z[0] == 1 && (*s.y)[0] == 1) {
      cells[2] += 1;
    } else {
      FAIL("impossible cell");
    }
  }
  const double exact[3] = {0.45, 0.45, 0.10};
  double chi = 0.0;
  for (int c = 0; c < 3; ++c) {
    CHECK(within_se(cells[c] / draws, exact[c], std::sqrt(exact[c] * (1 - exact[c])), draws));
    chi += std::pow(cells[c] - draws * exact[c], 2) / (draws * exact[c]);
  }
  boost::math::chi_squared_distribution<double> dist(2);
  CHECK(chi < boost::math::quantile(dist, 1 - 1e-4));

  // z-marginal of the coupled step against the plain chain: chi-square on {1,2}.
  const double p2 = cells[0] / draws;
  CHECK(std::abs(p2 - 0.45) <= 4.0 * std::sqrt(0.45 * 0.55 / draws));
}

TEST_CASE("coupled step rejects z > y and dimension mismatches") {
  const auto rates = ChainRates::make({0.9, 0.2}, 100.0);
  RngStream rng(1, 0);
  const PopulationState bad{0, {3, 1}, std::vector<std::uint64_t>{2, 1}};
  CHECK_THROWS_AS(coupled_step(bad, rates, rng), Error);
  const PopulationState wrong{0, {3}, std::nullopt};
  CHECK_THROWS_AS(mpcr_step(wrong, rates, rng), Error);
  CHECK_THROWS_AS(ChainRates::make({0.9}, 0.0), Error);
}

TEST_CASE("huge K: chain and majorant move together on shared molecules") {
  const auto rates = ChainRates::make({0.7}, 1e300);
  RngStream rng(5, 0);
  PopulationState s{0, {10}, std::vector<std::uint64_t>{10}};
  for (int n = 0; n < 15; ++n) {
    s = coupled_step(s, rates, rng);
    CHECK(s.z[0] == (*s.y)[0]);
  }
}

TEST_CASE("conditional mean from a fixed state") {
  const auto rates = ChainRates::make({0.9, 0.4}, 500.0);
  RngStream rng(99, 0);
  const PopulationState start{0, {300, 200}, std::nullopt};
  const int draws = 100000;
  double sums[2] = {0, 0};
  for (int i = 0; i < draws; ++i) {
    const auto s = mpcr_step(start, rates, rng);
    sums[0] += static_cast<double>(s.z[0]);
    sums[1] += static_cast<double>(s.z[1]);
  }
  for (int i = 0; i < 2; ++i) {
    const double p = rates.v[i] * 500.0 / 1000.0;
    const double n = static_cast<double>(start.z[i]);
    CHECK(within_se(sums[i] / draws, n * (1 + p), std::sqrt(n * p * (1 - p)), draws));
  }
}

TEST_CASE("simulate: trajectories, dominance, monotonicity, reproducibility") {
  const auto params = make_params({0.9, 0.2}, {1, 1}, 12, 2024);
  const auto single = simulate(params, 0, Mode::Coupled, 3);
  REQUIRE(single.states.size() == 1);
  CHECK(single.states[0].z == params.z0());
  CHECK(*single.states[0].y == params.z0());

  for (std::uint64_t stream = 0; stream < 50; ++stream) {
    const auto t = simulate(params, params.kappa(), Mode::Coupled, stream);
    REQUIRE(t.states.size() == 13);
    for (std::size_t n = 0; n < t.states.size(); ++n) {
      for (std::size_t i = 0; i < 2; ++i) {
        CHECK(t.states[n].z[i] <= (*t.states[n].y)[i]);
        if (n > 0) CHECK(t.states[n].z[i] >= t.states[n - 1].z[i]);
      }
    }
  }
  const auto a = simulate(params, 12, Mode::MpcrOnly, 4);
  const auto b = simulate(params, 12, Mode::MpcrOnly, 4);
  const auto c = simulate(params, 12, Mode::MpcrOnly, 5);
  CHECK(a.states.back().z == b.states.back().z);
  bool any_diff = false;
  for (std::size_t n = 0; n < a.states.size(); ++n) any_diff |= a.states[n].z != c.states[n].z;
  CHECK(any_diff);
  CHECK(simulate_final(params, 12, Mode::MpcrOnly, 4).z == a.states.back().z);
  CHECK_THROWS_AS(simulate(params, 200, Mode::GwOnly, 0), Error);
}

TEST_CASE("mpcr densities at the pivot stay in the theorem-1 range") {
  const auto params = make_params({0.9, 0.2}, {1, 1}, 25, 31);
  for (std::uint64_t r = 0; r < 40; ++r) {
    const auto s = simulate_final(params, 25, Mode::MpcrOnly, r);
    const double x = static_cast<double>(s.total()) / params.K();
    CHECK(x > 0.0);
    CHECK(x < 3.0);
  }
}

TEST_CASE("sample_W") {
  const auto params = make_params({0.9, 0.2}, {0, 1}, 5, 8);
  RngStream rng(8, 0);
  for (int i = 0; i < 100; ++i) CHECK(sample_W(params, 10, rng)[0] == 0.0);
  CHECK_THROWS_AS(sample_W(params, 0, rng), Error);
  CHECK_THROWS_AS(sample_W(params, 200, rng), Error);

  const auto one = make_params({0.9}, {1}, 5, 9);
  const int draws = 100000;
  double sum = 0.0;
  double sumsq = 0.0;
  for (int i = 0; i < draws; ++i) {
    RngStream stream(9, static_cast<std::uint64_t>(i));
    const double w = sample_W(one, 10, stream)[0];
    sum += w;
    sumsq += w * w;
  }
  const double mean = sum / draws;
  const double sd = std::sqrt(sumsq / draws - mean * mean);
  CHECK(within_se(mean, 1.0, sd, draws));
}

TEST_CASE("P(W = 0) falls with more ancestors") {
  // Pure-birth processes never die out; with v < 1 every ancestor survives,
  // so W = 0 only when z0_i = 0. Zero fraction is 1 for z0 = 0 and 0 otherwise.
  const int draws = 2000;
  double zero_frac[3];
  for (int z = 0; z < 3; ++z) {
    const auto params = make_params({0.5, 0.5}, {1, z}, 5, 10);
    int zeros = 0;
    for (int i = 0; i < draws; ++i) {
      RngStream rng(10, static_cast<std::uint64_t>(i));
      zeros += sample_W(params, 6, rng)[1] == 0.0;
    }
    zero_frac[z] = double(zeros) / draws;
  }
  CHECK(zero_frac[0] == 1.0);
  CHECK(zero_frac[1] <= zero_frac[0]);
  CHECK(zero_frac[2] <= zero_frac[1]);
  CHECK(zero_frac[2] == 0.0);
}
