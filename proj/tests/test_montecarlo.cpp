#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "sbm/montecarlo.hpp"

using namespace sbm;

TEST_CASE("run_trials is deterministic in the master seed") {
  ExperimentConfig cfg;
  cfg.model = ModelParams::from_pq(120, 0.15, 0.05);
  cfg.trials = 6;
  cfg.ks = {3, 4};
  cfg.master_seed = 31337;
  auto r1 = run_trials(cfg);
  auto r2 = run_trials(cfg);
  REQUIRE(r1.size() == 6);
  for (int i = 0; i < 6; ++i) {
    CHECK(r1[i].seed == r2[i].seed);
    REQUIRE(r1[i].stats.size() == 2);
    CHECK(r1[i].stats[0].value == r2[i].stats[0].value);
    CHECK(r1[i].stats[1].value == r2[i].stats[1].value);
  }
  cfg.master_seed = 31338;
  auto r3 = run_trials(cfg);
  CHECK(r3[0].stats[0].value != r1[0].stats[0].value);
}

TEST_CASE("run_trials results do not depend on thread count") {
  ExperimentConfig cfg;
  cfg.model = ModelParams::from_pq(100, 0.2, 0.1);
  cfg.trials = 9;
  cfg.ks = {3};
  cfg.master_seed = 5;
  cfg.threads = 1;
  auto serial = run_trials(cfg);
  cfg.threads = 4;
  auto parallel = run_trials(cfg);
  for (int i = 0; i < 9; ++i) {
    CHECK(serial[i].index == i);
    CHECK(serial[i].seed == parallel[i].seed);
    CHECK(serial[i].stats[0].value == parallel[i].stats[0].value);
  }
}

TEST_CASE("er_null and plugin centering switches") {
  ExperimentConfig cfg;
  cfg.model = ModelParams::from_pq(80, 0.3, 0.1);
  cfg.trials = 3;
  cfg.er_null = true;
  cfg.master_seed = 1;
  auto recs = run_trials(cfg);
  for (const auto& r : recs) CHECK(r.stats[0].p_av == cfg.model.p_hat());

  cfg.plugin_centering = true;
  auto recs2 = run_trials(cfg);
  for (const auto& r : recs2) CHECK(r.stats[0].p_av != cfg.model.p_hat());
}

TEST_CASE("optional per-trial outputs") {
  ExperimentConfig cfg;
  cfg.model = ModelParams::from_ab(150, 18.0, 6.0);
  cfg.trials = 2;
  cfg.master_seed = 12;
  cfg.with_overlap = true;
  cfg.with_estimate = true;
  cfg.estimate_k = 3;
  auto recs = run_trials(cfg);
  for (const auto& r : recs) {
    REQUIRE(r.ov_abs.has_value());
    CHECK(*r.ov_abs >= 0.0);
    CHECK(*r.ov_abs <= 1.0);
    REQUIRE(r.estimate.has_value());
    CHECK(r.estimate->k_used == 3);
  }
}

TEST_CASE("run_trials validates its config") {
  ExperimentConfig cfg;
  cfg.model = ModelParams::from_pq(10, 0.5, 0.1);
  cfg.trials = 0;
  CHECK_THROWS_AS(run_trials(cfg), std::invalid_argument);
  cfg.trials = 1;
  cfg.ks = {2};
  CHECK_THROWS_AS(run_trials(cfg), std::invalid_argument);
  cfg.ks = {6};
  CHECK_THROWS_AS(run_trials(cfg), std::invalid_argument);
}

TEST_CASE("normality check accepts synthetic normals and flags shifts") {
  Rng rng(2);
  std::vector<double> z(4000);
  for (auto& x : z) x = rng.normal(0.0, std::sqrt(6.0));
  auto rep = normality_check(z, 0.0, 6.0);
  CHECK(rep.ks_stat < 0.05);
  CHECK(std::abs(rep.mean) < 0.16);  // 4 sigma band for 4000 draws
  CHECK(rep.variance == doctest::Approx(6.0).epsilon(0.15));
  CHECK(std::abs(rep.skewness) < 0.2);
  CHECK(std::abs(rep.excess_kurtosis) < 0.4);

  // Against a wrong target the KS distance is large.
  auto bad = normality_check(z, 3.0, 6.0);
  CHECK(bad.ks_stat > 0.3);
}

TEST_CASE("normality check handles degenerate samples") {
  std::vector<double> flat(10, 1.5);
  auto rep = normality_check(flat, 0.0, 1.0);
  CHECK(rep.variance == 0.0);
  CHECK(rep.mean == doctest::Approx(1.5));
  CHECK(rep.ks_stat > 0.0);
  CHECK_THROWS_AS(normality_check(std::vector<double>{}, 0.0, 1.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(normality_check(flat, 0.0, 0.0), std::invalid_argument);
}

TEST_CASE("cross moment check on independent and correlated pairs") {
  Rng rng(3);
  const int n = 20000;
  std::vector<double> x(n), y(n), z(n);
  for (int i = 0; i < n; ++i) {
    x[i] = rng.normal();
    y[i] = rng.normal();
    z[i] = x[i] + 0.5 * rng.normal();
  }
  auto ind = cross_moment_check(x, y);
  CHECK(std::abs(ind.value) < 4.0 * ind.se);
  auto dep = cross_moment_check(x, z);
  CHECK(dep.value == doctest::Approx(1.0).epsilon(0.1));
  CHECK(dep.value > 4.0 * dep.se);
  CHECK_THROWS_AS(cross_moment_check(x, std::vector<double>{1.0}),
                  std::invalid_argument);
}

TEST_CASE("wick fourth moment harness") {
  Rng rng(4);
  const int k = 3;
  const int n = 40000;
  // Gaussian with variance 2k: E[(X^2/2k)^2] = 3.
  std::vector<double> gauss(n);
  for (auto& v : gauss) v = rng.normal(0.0, std::sqrt(2.0 * k));
  auto g = wick_fourth_moment_check(gauss, k);
  CHECK(std::abs(g.value - 3.0) < 5.0 * g.se);

  // Rademacher scaled to variance 2k: fourth moment ratio is exactly 1.
  std::vector<double> rad(n);
  for (auto& v : rad) v = (rng.next_u64() & 1 ? 1.0 : -1.0) * std::sqrt(2.0 * k);
  auto r = wick_fourth_moment_check(rad, k);
  CHECK(r.value == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("threshold sweep calibrates against its own null") {
  auto sweep = threshold_sweep(300, 0.1, {0.5, 8.0}, 40, 0.1, 77, 1);
  CHECK(sweep.threshold > 1.5);  // near the bulk edge 2
  CHECK(sweep.threshold < 3.0);
  REQUIRE(sweep.points.size() == 2);
  // Below the singularity boundary t = 1 the test has ~size alpha; far
  // above it the spectral outlier is essentially always detected.
  CHECK(sweep.points[0].rate <= 0.3);
  CHECK(sweep.points[1].rate >= 0.7);
  CHECK(sweep.points[1].t > 1.0);
  CHECK(sweep.points[0].t < 1.0);

  auto sweep2 = threshold_sweep(300, 0.1, {0.5, 8.0}, 40, 0.1, 77, 3);
  CHECK(sweep2.threshold == sweep.threshold);
  CHECK(sweep2.points[0].rate == sweep.points[0].rate);
  CHECK(sweep2.points[1].rate == sweep.points[1].rate);

  CHECK_THROWS_AS(threshold_sweep(100, 0.1, {1.0}, 1, 0.05, 0),
                  std::invalid_argument);
  CHECK_THROWS_AS(threshold_sweep(100, 0.1, {1.0}, 10, 1.5, 0),
                  std::invalid_argument);
}

TEST_CASE("stat series extraction") {
  ExperimentConfig cfg;
  cfg.model = ModelParams::from_pq(60, 0.3, 0.1);
  cfg.trials = 4;
  cfg.ks = {3, 5};
  cfg.master_seed = 8;
  auto recs = run_trials(cfg);
  auto s3 = stat_series(recs, 3);
  auto s5 = stat_series(recs, 5);
  auto s4 = stat_series(recs, 4);
  CHECK(s3.size() == 4);
  CHECK(s5.size() == 4);
  CHECK(s4.empty());
  for (int i = 0; i < 4; ++i) CHECK(s3[i] == recs[i].stats[0].value);
}
