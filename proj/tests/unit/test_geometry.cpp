#include <doctest.h>

#include <cmath>
#include <random>

#include "gcngeom/error.hpp"
#include "gcngeom/geometry.hpp"
#include "gcngeom/generators.hpp"
#include "oracles.hpp"

using namespace gcngeom;

namespace {

Graph cycle(std::size_t n) {
  std::vector<std::pair<NodeId, NodeId>> e;
  for (NodeId i = 0; i < n; ++i) e.emplace_back(i, static_cast<NodeId>((i + 1) % n));
  return build_graph(n, e);
}

Graph star(std::size_t leaves) {
  std::vector<std::pair<NodeId, NodeId>> e;
  for (NodeId i = 1; i <= leaves; ++i) e.emplace_back(0, i);
  return build_graph(leaves + 1, e);
}

}  // namespace

TEST_SUITE("geometry") {

TEST_CASE("topology stats match a double loop") {
  std::mt19937_64 rng(31);
  for (int rep = 0; rep < 25; ++rep) {
    Graph g = oracle::random_graph(1 + rng() % 20, 0.25, rng);
    auto a = oracle::adjacency(g);
    auto d = oracle::degrees(a);
    for (double beta : {0.5, 1.0, 2.0}) {
      TopologyStats t = topology_stats(g, beta);
      for (std::size_t u = 0; u < a.size(); ++u) {
        double s1 = 0.0, s2 = 0.0;
        for (std::size_t v = 0; v < a.size(); ++v) {
          s1 += a[u][v] * (d[v] - d[u]);
          s2 += a[u][v] * (d[v] - d[u]) * (d[v] - d[u]);
        }
        CHECK(t.delta_bar[u] == doctest::Approx(s1 / (d[u] + beta)).epsilon(1e-14));
        CHECK(t.delta_sq_bar[u] == doctest::Approx(s2 / (d[u] + beta)).epsilon(1e-14));
        CHECK(t.aug_degree[u] == d[u] + beta);
      }
    }
  }
}

TEST_CASE("regular graphs have no heterogeneity") {
  for (double beta : {0.0, 1.0, 3.0}) {
    TopologyStats t = topology_stats(cycle(5), beta);
    for (std::size_t u = 0; u < 5; ++u) {
      CHECK(t.delta_bar[u] == 0.0);
      CHECK(t.delta_sq_bar[u] == 0.0);
    }
  }
}

TEST_CASE("star leaf heterogeneity") {
  TopologyStats t = topology_stats(star(3), 1.0);
  CHECK(t.delta_bar[1] == 1.0);
  CHECK(t.delta_sq_bar[1] == 2.0);
}

TEST_CASE("M constant variants") {
  CHECK(m_constant(3.0, 0.5, 1.0) == doctest::Approx(std::pow(2.0, 2.5)));
  CHECK(m_constant(3.0, 0.5, 1.0, MConstant::Stated) == doctest::Approx(4.0));
  CHECK(m_constant(3.0, 0.5, 1.0, MConstant::Appendix) == doctest::Approx(std::pow(4.0, 2.5)));
}

TEST_CASE("norm bound closed forms") {
  Graph c = cycle(6);
  for (double alpha : {0.0, 0.3, 0.5, 1.0}) {
    auto b = lemma31_bound(c, alpha, 1.5, 2.0);
    for (double v : b) CHECK(v == doctest::Approx(2.0 * std::pow(3.5, 1.0 - 2.0 * alpha)).epsilon(1e-14));
  }
  Graph g = star(4);
  auto b0 = lemma31_bound(g, 0.0, 1.0, 3.0);
  for (NodeId u = 0; u < 5; ++u) CHECK(b0[u] == doctest::Approx(3.0 * (g.degree(u) + 1.0)).epsilon(1e-14));
  // 3-regular: K4
  Graph k4 = build_graph(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
  for (double v : lemma31_bound(k4, 0.5, 1.0, 1.7)) CHECK(v == doctest::Approx(1.7).epsilon(1e-14));
}

TEST_CASE("norm bound degenerate cases") {
  std::mt19937_64 rng(1);
  Graph g = oracle::random_graph(8, 0.4, rng);
  BoundReport zero = check_lemma31(g, 0.5, 1.0, Matrix(8, 3, 0.0));
  CHECK(zero.violations() == 0);
  for (double e : zero.empirical_norm) CHECK(e == 0.0);

  Graph single = build_graph(1, std::vector<std::pair<NodeId, NodeId>>{});
  Matrix z(1, 2, std::vector<double>{3.0, 4.0});
  for (double beta : {0.5, 2.0}) {
    BoundReport r = check_lemma31(single, 0.5, beta, z);
    CHECK(r.empirical_norm[0] == doctest::Approx(5.0).epsilon(1e-14));
    CHECK(r.bound[0] == doctest::Approx(5.0).epsilon(1e-14));
    CHECK(r.satisfied[0]);
  }
}

TEST_CASE("norm bound holds on random graphs") {
  std::mt19937_64 rng(77);
  for (int rep = 0; rep < 40; ++rep) {
    Graph g = random_connected_graph(2 + rng() % 29, 0.2, rng());
    Matrix z = oracle::random_matrix(g.num_nodes(), 4, rng, 0.0, 1.0);
    for (double alpha : {0.0, 0.25, 0.5, 0.75, 1.0})
      for (double beta : {0.0, 1.0, 2.0}) CHECK(check_lemma31(g, alpha, beta, z).violations() == 0);
  }
}

TEST_CASE("a shrunken bound is reported as violated") {
  Graph g = cycle(4);
  Matrix z(4, 1, 1.0);
  BoundReport r = check_lemma31(g, 0.5, 1.0, z, MConstant::Conservative, 0.5);
  CHECK(r.violations() == 4);
  CHECK(r.worst_slack() < 0.0);
}

TEST_CASE("noise bound on regular graphs") {
  Graph c = cycle(5);
  for (double alpha : {0.0, 0.25, 0.5, 1.0}) {
    auto r = lemma41_bounds(c, 2, alpha, 1.0, 0.3, 2.0, 2.0, 0.1, Family::Symmetric);
    CHECK(r.mu == doctest::Approx(0.09 * 4.0 * std::pow(3.0, 2.0 - 4.0 * alpha)).epsilon(1e-13));
    CHECK(r.high_prob_bound > r.mu);
  }
  auto half = lemma41_bounds(c, 0, 0.5, 1.0, 0.5, 1.5, 1.5, 0.1, Family::Symmetric);
  CHECK(half.mu == doctest::Approx(0.25 * 2.25).epsilon(1e-14));
}

TEST_CASE("noise bound mean dominates the exact mean") {
  std::mt19937_64 rng(5);
  for (int rep = 0; rep < 30; ++rep) {
    Graph g = random_connected_graph(3 + rng() % 20, 0.2, rng());
    for (Family f : {Family::Symmetric, Family::RowNormalized})
      for (double alpha : {0.0, 0.25, 0.5, 0.75, 1.0})
        for (double beta : {0.0, 1.0, 2.0})
          for (NodeId u = 0; u < g.num_nodes(); ++u) {
            auto r = lemma41_bounds(g, u, alpha, beta, 0.7, 1.3, 1.3, 0.1, f);
            CHECK(r.exact_mean <= r.mu * (1.0 + 1e-12));
          }
  }
}

TEST_CASE("exact mean matches the operator row") {
  std::mt19937_64 rng(8);
  Graph g = random_connected_graph(12, 0.3, rng());
  for (Family f : {Family::Symmetric, Family::RowNormalized}) {
    Matrix s = build_operator(g, ConvParams{0.6, 1.5, f}).to_dense();
    for (NodeId u = 0; u < 12; ++u) {
      double sq = 0.0;
      for (std::size_t v = 0; v < 12; ++v) sq += s(u, v) * s(u, v);
      auto r = lemma41_bounds(g, u, 0.6, 1.5, 2.0, 0.5, 0.5, 0.1, f);
      CHECK(r.exact_mean == doctest::Approx(4.0 * 0.25 * sq).epsilon(1e-12));
    }
  }
}

TEST_CASE("closed display form falls below the exact mean on a uniform row") {
  Graph path = build_graph(3, {{0, 1}, {1, 2}});
  Lemma41Options display;
  display.row_mean = RowMeanBound::Display;
  auto d = lemma41_bounds(path, 1, 0.0, 2.0, 1.0, 1.0, 1.0, 0.1, Family::RowNormalized, display);
  auto h = lemma41_bounds(path, 1, 0.0, 2.0, 1.0, 1.0, 1.0, 0.1, Family::RowNormalized);
  CHECK(d.exact_mean == doctest::Approx(0.375).epsilon(1e-14));
  CHECK(d.mu == doctest::Approx(1.0 / 9.0).epsilon(1e-14));
  CHECK(h.mu == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("toy leading term") {
  CHECK(toy2_leading_term(9.0, 1.0, 0.0, 1.0) == doctest::Approx(8.0).epsilon(1e-14));
  CHECK(toy2_leading_term(4.0, 4.0, 0.3, 1.0) == 0.0);
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> deg(0.0, 50.0), unit(0.0, 1.0);
  for (int rep = 0; rep < 1000; ++rep) {
    const double a = deg(rng), b = deg(rng), alpha = unit(rng), beta = 0.1 + 3 * unit(rng);
    CHECK(toy2_leading_term(a, b, alpha, beta) == -toy2_leading_term(b, a, alpha, beta));
    CHECK(toy2_leading_term(a, b, 0.5, beta) == 0.0);
  }
}

TEST_CASE("degree classes") {
  CHECK(degree_class(0.0) == 0);
  CHECK(degree_class(1.0) == 1);
  CHECK(degree_class(2.0) == 2);
  CHECK(degree_class(3.0) == 3);
  CHECK(degree_class(4.0) == 3);
  CHECK(degree_class(5.0) == 4);
  CHECK(degree_class(8.0) == 4);
  CHECK(degree_class(9.0) == 5);
  CHECK(degree_class_label(3) == "3-4");
  CHECK(degree_class_label(5) == "9-16");
}

TEST_CASE("replicas without noise embed identically") {
  Graph templ = random_connected_graph(25, 0.1, 4);
  for (Family f : {Family::Symmetric, Family::RowNormalized}) {
    StructuralExperimentConfig cfg;
    cfg.params = ConvParams{0.4, 1.0, f};
    cfg.sigma = 0.0;
    cfg.trials = 5;
    auto r = structural_distance_experiment(templ, cfg);
    CHECK(r.max_distance <= 1e-9);
  }
}

TEST_CASE("replica distances grow with noise") {
  Graph templ = random_connected_graph(25, 0.1, 4);
  StructuralExperimentConfig cfg;
  cfg.trials = 10;
  cfg.sigma = 0.05;
  auto small = structural_distance_experiment(templ, cfg);
  cfg.sigma = 0.5;
  auto large = structural_distance_experiment(templ, cfg);
  double s = 0.0, l = 0.0;
  for (double v : small.node_mean_sq_distance) s += v;
  for (double v : large.node_mean_sq_distance) l += v;
  CHECK(l > s);
  std::size_t nodes = 0;
  for (const auto& c : small.classes) nodes += c.num_nodes;
  CHECK(nodes == 25);
}

}  // TEST_SUITE
