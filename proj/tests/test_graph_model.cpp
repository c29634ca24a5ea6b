#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "sbm/graph_model.hpp"

using namespace sbm;

TEST_CASE("parameter constructors and derived quantities") {
  auto mp = ModelParams::from_ab(1000, 24.0, 8.0);
  CHECK(mp.p == doctest::Approx(0.024).epsilon(1e-14));
  CHECK(mp.q == doctest::Approx(0.008).epsilon(1e-14));
  CHECK(mp.a() == doctest::Approx(24.0));
  CHECK(mp.b() == doctest::Approx(8.0));
  // c = (a-b)^2/(a+b) = 256/32 = 8
  CHECK(mp.c() == doctest::Approx(8.0).epsilon(1e-12));
  CHECK(mp.p_hat() == doctest::Approx(0.016));
  CHECK(mp.t() == doctest::Approx(8.0 / (2.0 * (1.0 - 0.016))).epsilon(1e-12));

  auto same = ModelParams::from_pq(100, 0.3, 0.3);
  CHECK(same.c() == 0.0);
  CHECK(same.t() == 0.0);
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(ModelParams::from_pq(0, 0.5, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(ModelParams::from_pq(10, -0.1, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(ModelParams::from_pq(10, 1.1, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(ModelParams::from_pq(10, 0.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(ModelParams::from_ab(10, -1.0, 5.0), std::invalid_argument);
  CHECK_THROWS_AS(ModelParams::from_ab(10, 11.0, 5.0), std::invalid_argument);
}

TEST_CASE("graph edge bookkeeping") {
  Graph g(5);
  g.add_edge(0, 1);
  g.add_edge(3, 1);
  CHECK(g.edge_count() == 2);
  CHECK(g.has_edge(1, 0));
  CHECK(g.has_edge(0, 1));
  CHECK(!g.has_edge(0, 3));
  CHECK(g.degree(1) == 2);
  CHECK(g.neighbors(1) == std::vector<int>{0, 3});
  CHECK_THROWS_AS(g.add_edge(2, 2), std::invalid_argument);
  CHECK_THROWS_AS(g.add_edge(0, 5), std::out_of_range);

  Graph c = g.complement();
  CHECK(c.edge_count() == 10 - 2);
  CHECK(!c.has_edge(0, 1));
  CHECK(c.has_edge(0, 3));
  for (int i = 0; i < 5; ++i) CHECK(!c.has_edge(i, i));
}

TEST_CASE("sampled labels are +/-1 with near-even split") {
  Rng rng(5);
  Labels sigma = sample_labels(4000, rng);
  int plus = 0;
  for (int s : sigma) {
    CHECK((s == 1 || s == -1));
    if (s == 1) ++plus;
  }
  // 6-sigma band around the binomial mean.
  CHECK(std::abs(plus - 2000) < 6.0 * std::sqrt(1000.0));

  Rng rng2(5);
  Labels bal = sample_labels_balanced(4000, rng2);
  int bplus = 0;
  for (int s : bal) bplus += s == 1;
  CHECK(bplus == 2000);
}

TEST_CASE("sbm sampler density matches within and across blocks") {
  auto mp = ModelParams::from_pq(600, 0.20, 0.05);
  Rng rng(11);
  Labels sigma = sample_labels(mp.n, rng);
  Graph g = sample_sbm(mp, sigma, rng);

  double within = 0.0, cross = 0.0, wp = 0.0, cp = 0.0;
  for (int i = 0; i < mp.n; ++i) {
    for (int j = i + 1; j < mp.n; ++j) {
      bool same = sigma[i] == sigma[j];
      (same ? wp : cp) += 1.0;
      if (g.has_edge(i, j)) (same ? within : cross) += 1.0;
    }
  }
  CHECK(within / wp == doctest::Approx(0.20).epsilon(0.05));
  CHECK(cross / cp == doctest::Approx(0.05).epsilon(0.10));
  // Symmetric storage invariant.
  for (int i = 0; i < 50; ++i) {
    for (int j = 0; j < 50; ++j) {
      if (i != j) CHECK(g.has_edge(i, j) == g.has_edge(j, i));
    }
  }
}

TEST_CASE("er sampler density and determinism") {
  Rng a(77), b(77);
  Graph g1 = sample_er(500, 0.1, a);
  Graph g2 = sample_er(500, 0.1, b);
  CHECK(g1.edge_count() == g2.edge_count());
  for (int i = 0; i < 500; ++i) {
    CHECK(g1.neighbors(i) == g2.neighbors(i));
  }
  double density = 2.0 * double(g1.edge_count()) / (500.0 * 499.0);
  CHECK(density == doctest::Approx(0.1).epsilon(0.05));
  CHECK(average_degree(g1) == doctest::Approx(2.0 * double(g1.edge_count()) / 500.0));

  Rng c(0);
  Graph empty = sample_er(100, 0.0, c);
  CHECK(empty.edge_count() == 0);
  Graph full = sample_er(50, 1.0, c);
  CHECK(full.edge_count() == 50 * 49 / 2);
}

TEST_CASE("overlap on hand examples") {
  // sigma = tau: |ov| = 1 - rbar^2 with rbar = mean label; balanced -> 1.
  Labels s1{1, 1, -1, -1}, t1{1, 1, -1, -1};
  CHECK(overlap(s1, t1) == doctest::Approx(1.0));
  Labels t2{-1, -1, 1, 1};
  CHECK(overlap(s1, t2) == doctest::Approx(-1.0));
  // Half agreement against a balanced partner: centered product vanishes.
  Labels t3{1, -1, 1, -1};
  CHECK(overlap(s1, t3) == doctest::Approx(0.0));
  // Agreement on 3 of 4: ov = (2 - 0)/4 = 0.5.
  Labels t4{1, 1, -1, 1};
  CHECK(overlap(s1, t4) == doctest::Approx(0.5));
  CHECK_THROWS_AS(overlap(s1, Labels{1, -1}), std::invalid_argument);
}

TEST_CASE("overlap is invariant to global sign only up to sign") {
  Rng rng(3);
  Labels s = sample_labels(101, rng);
  Labels t = sample_labels(101, rng);
  Labels neg(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) neg[i] = -t[i];
  CHECK(overlap(s, neg) == doctest::Approx(-overlap(s, t)).epsilon(1e-12));
}

TEST_CASE("serialization round-trips") {
  Rng rng(13);
  Graph g = sample_er(40, 0.2, rng);
  std::stringstream ss;
  save_graph(g, ss);
  Graph h = load_graph(ss);
  CHECK(h.node_count() == 40);
  CHECK(h.edge_count() == g.edge_count());
  for (int i = 0; i < 40; ++i) CHECK(h.neighbors(i) == g.neighbors(i));

  Labels sigma = sample_labels(40, rng);
  std::stringstream ls;
  save_labels(sigma, ls);
  CHECK(load_labels(ls) == sigma);

  auto mp = ModelParams::from_pq(40, 0.25, 0.125);
  std::stringstream ps;
  save_params(mp, ps);
  ModelParams back = load_params(ps);
  CHECK(back.n == 40);
  CHECK(back.p == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(back.q == doctest::Approx(0.125).epsilon(1e-15));
}

TEST_CASE("malformed inputs are rejected") {
  std::stringstream bad1("nonsense\n0 1\n");
  CHECK_THROWS_AS(load_graph(bad1), std::runtime_error);
  std::stringstream bad2("n=3\n0 7\n");
  CHECK_THROWS_AS(load_graph(bad2), std::out_of_range);
  std::stringstream bad3("n=2\n1\n5\n");
  CHECK_THROWS_AS(load_labels(bad3), std::runtime_error);
}

TEST_CASE("seed derivation separates streams") {
  CHECK(derive_seed(1, 0) != derive_seed(1, 1));
  CHECK(derive_seed(1, 0) != derive_seed(2, 0));
  CHECK(derive_seed(1, 5) == derive_seed(1, 5));
}
