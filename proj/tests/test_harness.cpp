#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>

#include "mpcr/error.hpp"
#include "mpcr/harness.hpp"
#include "mpcr/maps.hpp"
#include "test_support.hpp"

using namespace mpcr;
using namespace mpcr::harness;
using mpcr::test::make_params;

namespace {

double correlation(const std::vector<double>& a, const std::vector<double>& b) {
  const double n = static_cast<double>(a.size());
  double ma = 0, mb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ma += a[i];
    mb += b[i];
  }
  ma /= n;
  mb /= n;
  double sab = 0, saa = 0, sbb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sab += (a[i] - ma) * (b[i] - mb);
    saa += (a[i] - ma) * (a[i] - ma);
    sbb += (b[i] - mb) * (b[i] - mb);
  }
  return sab / std::sqrt(saa * sbb);
}

bool same_records(const std::vector<ExperimentRecord>& a, const std::vector<ExperimentRecord>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t r = 0; r < a.size(); ++r) {
    if (a[r].replicate != b[r].replicate || a[r].scaled_z != b[r].scaled_z ||
        a[r].w_hat != b[r].w_hat || a[r].thm1_limit != b[r].thm1_limit) {
      return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("lower median") {
  CHECK(lower_median({0.1, 0.5}) == 0.1);
  CHECK(lower_median({3.0, 1.0, 2.0}) == 2.0);
  CHECK(lower_median({7.0}) == 7.0);
  CHECK_THROWS_AS(lower_median({}), Error);
}

TEST_CASE("theorem-1 records respect dominance and extinct columns") {
  const auto params = make_params({0.9, 0.2, 0.1}, {1, 2, 0}, 14, 5);
  const auto records = run_theorem1(params, 30);
  REQUIRE(records.size() == 30);
  for (const auto& rec : records) {
    for (std::size_t i = 0; i < 3; ++i) {
      CHECK(rec.scaled_z[i] <= rec.w_hat[i]);
      CHECK(rec.thm1_limit[i] <= rec.w_hat[i] + 1e-12);
    }
    CHECK(rec.scaled_z[2] == 0.0);
    CHECK(rec.w_hat[2] == 0.0);
    CHECK(rec.thm1_limit[2] == 0.0);
    CHECK(rec.h_w0 == doctest::Approx(maps::H_eval(rec.w_hat[0], 0.9, 1e-10).value));
  }
  const auto s = summarize(records, 14);
  CHECK(s.replicates == 30);
  CHECK(s.types[2].rel_count == 0);
  CHECK(std::isnan(s.types[2].median_rel_error));
  CHECK(s.types[2].max_abs_error == 0.0);
}

TEST_CASE("single replicate summary") {
  const auto params = make_params({0.9, 0.2}, {1, 1}, 10, 6);
  const auto records = run_theorem1(params, 1);
  const auto s = summarize(records, 10);
  for (const auto& t : s.types) {
    CHECK(t.mean_abs_error == t.median_abs_error);
    CHECK(t.min_abs_error == t.max_abs_error);
  }
  CHECK_THROWS_AS(summarize({}, 10), Error);
  CHECK_THROWS_AS(run_theorem1(params, 0), Error);
}

TEST_CASE("all-dominant limits add up to H(W0)") {
  const auto params = make_params({0.9, 0.9}, {2, 1}, 12, 7);
  for (const auto& rec : run_theorem1(params, 10)) {
    const double sum = rec.thm1_limit[0] + rec.thm1_limit[1];
    CHECK(sum == doctest::Approx(rec.h_w0).epsilon(1e-8));
  }
}

TEST_CASE("determinism and serial/parallel equality") {
  const auto params = make_params({0.9, 0.2}, {1, 1}, 12, 99);
  Execution serial{false, 1};
  Execution par{true, 4};
  const auto a = run_theorem1(params, 64, serial);
  const auto b = run_theorem1(params, 64, par);
  const auto c = run_theorem1(params, 64, par);
  CHECK(same_records(a, b));
  CHECK(same_records(b, c));
  CHECK(to_csv(theorem1_table(a)) == to_csv(theorem1_table(b)));

  const auto t2s = run_theorem2(params, -3, 16, serial);
  const auto t2p = run_theorem2(params, -3, 16, par);
  CHECK(to_csv(theorem2_table(t2s)) == to_csv(theorem2_table(t2p)));
}

TEST_CASE("theorem-2 offsets") {
  const auto params = make_params({0.9, 0.2}, {1, 1}, 12, 3);
  CHECK_THROWS_AS(run_theorem2(params, -12, 2), Error);
  const auto recs = run_theorem2(params, 2, 8);
  for (const auto& rec : recs) {
    REQUIRE(rec.thm2.has_value());
    CHECK(rec.thm2->limit[1] == 0.0);
    CHECK(rec.thm2->x_total == doctest::Approx(rec.thm2->x[0] + rec.thm2->x[1]));
    CHECK(rec.thm2->limit_total ==
          doctest::Approx(maps::f_apply(rec.h_w0, 2, 0.9)).epsilon(1e-8));
  }
}

TEST_CASE("sweep validation and single-element list") {
  const auto params = make_params({0.9, 0.2}, {1, 1}, 10, 4);
  CHECK_THROWS_AS(convergence_sweep(params, {}, 4), Error);
  CHECK_THROWS_AS(convergence_sweep(params, {3, 6}, 4), Error);
  CHECK_THROWS_AS(convergence_sweep(params, {8, 8}, 4), Error);
  const auto out = convergence_sweep(params, {8}, 5);
  REQUIRE(out.size() == 1);
  CHECK(out[0].kappa == 8);
  const auto t = sweep_table(out);
  CHECK(t.rows.size() == 2);
  CHECK(t.header.size() == 7);
}

TEST_CASE("pairing discipline: mismatched W gives larger errors") {
  const auto params = make_params({0.9, 0.2}, {1, 1}, 20, 17);
  const auto records = run_theorem1(params, 120);
  std::vector<double> paired, shuffled;
  for (std::size_t r = 0; r < records.size(); ++r) {
    const auto& other = records[(r + 1) % records.size()];
    const auto wrong = maps::theorem_limits(other.w_hat, 0, params, kLimitTolerance);
    paired.push_back(std::abs(records[r].scaled_z[0] - records[r].thm1_limit[0]));
    shuffled.push_back(std::abs(records[r].scaled_z[0] - wrong.thm1[0]));
  }
  CHECK(lower_median(paired) * 5 < lower_median(shuffled));
}

TEST_CASE("figure data shapes") {
  const auto params = make_params({0.9, 0.2}, {1, 1}, 12, 21);
  FigureOptions opt;
  opt.replicates = 20;
  opt.grid_points = 11;
  opt.grid_max = 5.0;

  const auto a = figure_data(FigureId::A, params, opt);
  CHECK(a.header == std::vector<std::string>{"x", "G_1", "G_2"});
  REQUIRE(a.rows.size() == 11);
  CHECK(std::get<double>(a.rows[0][1]) == 1.0);
  CHECK(std::get<double>(a.rows[0][2]) == 1.0);

  const auto one = figure_data(FigureId::One, params, opt);
  CHECK(one.rows.size() == 20);
  CHECK(one.header.size() == 5);

  const auto three = figure_data(FigureId::Three, params, opt);
  CHECK(three.rows.size() == 40);

  CHECK_THROWS_AS(figure_data(FigureId::Two, make_params({0.9, 0.9}, {1, 1}, 8), opt), Error);
  CHECK_THROWS_AS(parse_figure("7"), Error);
  CHECK(parse_figure("a") == FigureId::A);
}

TEST_CASE("figure 2: minor-type limit falls as H(W0) grows") {
  // Equal minor ancestry: W_2 G_2(W0) with W_2 held near its mean still
  // decreases in W0, so the replicate cloud correlates negatively.
  const auto params = make_params({0.9, 0.2}, {1, 1}, 14, 22);
  FigureOptions opt;
  opt.replicates = 200;
  const auto t = figure_data(FigureId::Two, params, opt);
  std::vector<double> h, ratio;
  const auto recs = run_theorem1(params, 200);
  for (const auto& rec : recs) {
    h.push_back(rec.h_w0);
    ratio.push_back(rec.thm1_limit[1] / rec.w_hat[1]);
  }
  CHECK(correlation(h, ratio) < -0.9);
  CHECK(t.rows.size() == 200);
}

TEST_CASE("figure 3: larger ancestry, larger limit") {
  const auto params = make_params({0.9, 0.9, 0.9, 0.9, 0.9}, {16, 8, 4, 2, 1}, 14, 23);
  const auto recs = run_theorem2(params, -3, 60);
  std::vector<std::vector<double>> by_type(5);
  for (const auto& rec : recs) {
    for (std::size_t i = 0; i < 5; ++i) by_type[i].push_back(rec.thm2->limit[i]);
  }
  for (std::size_t i = 0; i + 1 < 5; ++i) {
    CHECK(lower_median(by_type[i]) > lower_median(by_type[i + 1]));
  }
}

TEST_CASE("empty table writes nothing") {
  const auto path = std::filesystem::temp_directory_path() / "mpcr_empty_table_test.csv";
  std::filesystem::remove(path);
  CHECK_THROWS_AS(write_table(Table{}, path, TableFormat::Csv), Error);
  CHECK_FALSE(std::filesystem::exists(path));
}
