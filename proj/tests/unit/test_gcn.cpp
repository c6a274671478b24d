#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "gcngeom/error.hpp"
#include "gcngeom/gcn.hpp"
#include "oracles.hpp"

using namespace gcngeom;

namespace {

// Plain two-layer MLP: relu(X W1 + b1) W2 + b2.
Matrix mlp_logits(const GCNModel& m, const Matrix& x) {
  Matrix z = matmul(x, m.w1);
  for (std::size_t i = 0; i < z.rows(); ++i)
    for (std::size_t j = 0; j < z.cols(); ++j) z(i, j) = std::max(0.0, z(i, j) + m.b1[j]);
  Matrix out = matmul(z, m.w2);
  for (std::size_t i = 0; i < out.rows(); ++i)
    for (std::size_t j = 0; j < out.cols(); ++j) out(i, j) += m.b2[j];
  return out;
}

DatasetBundle separable_bundle(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> noise(0.0, 0.01);
  DatasetBundle b;
  b.name = "separable";
  const std::size_t n = 40;
  std::vector<std::pair<NodeId, NodeId>> edges;
  for (NodeId i = 0; i + 2 < n; i += 2) edges.emplace_back(i, i + 2);
  for (NodeId i = 1; i + 2 < n; i += 2) edges.emplace_back(i, i + 2);
  edges.emplace_back(0, 1);
  b.graph = build_graph(n, edges);
  b.features = Matrix(n, 2);
  b.labels.resize(n);
  for (std::size_t u = 0; u < n; ++u) {
    b.labels[u] = static_cast<int>(u % 2);
    b.features(u, u % 2) = 1.0;
    b.features(u, 0) += noise(rng);
    b.features(u, 1) += noise(rng);
  }
  b.num_classes = 2;
  b.split = random_split(n, 10, seed);
  return b;
}

}  // namespace

TEST_SUITE("gcn") {

TEST_CASE("init determinism and Glorot range") {
  GCNModel a = init_model(5, 4, 3, 12);
  GCNModel b = init_model(5, 4, 3, 12);
  GCNModel c = init_model(5, 4, 3, 13);
  CHECK(a == b);
  CHECK_FALSE(a == c);
  const double lim1 = std::sqrt(6.0 / (5 + 4)), lim2 = std::sqrt(6.0 / (4 + 3));
  for (double w : a.w1.values()) CHECK(std::abs(w) <= lim1);
  for (double w : a.w2.values()) CHECK(std::abs(w) <= lim2);
  for (double v : a.b1) CHECK(v == 0.0);
  for (double v : a.b2) CHECK(v == 0.0);
  CHECK_THROWS_AS(init_model(0, 4, 3, 1), ValidationError);
}

TEST_CASE("zero first layer gives the output bias") {
  std::mt19937_64 rng(1);
  Graph g = oracle::random_graph(6, 0.5, rng);
  GCNModel m = init_model(3, 4, 2, 5);
  for (double& w : m.w1.values()) w = 0.0;
  m.b2 = {0.3, -1.2};
  auto op = build_operator(g, ConvParams{0.5, 1.0, Family::Symmetric});
  auto out = forward(m, op, oracle::random_matrix(6, 3, rng));
  for (std::size_t i = 0; i < 6; ++i) {
    CHECK(out.logits(i, 0) == 0.3);
    CHECK(out.logits(i, 1) == -1.2);
  }
}

TEST_CASE("edgeless graph reduces to an MLP") {
  std::mt19937_64 rng(2);
  Graph g = build_graph(7, std::vector<std::pair<NodeId, NodeId>>{});
  auto op = build_operator(g, ConvParams{0.0, 1.0, Family::Symmetric});
  GCNModel m = init_model(4, 5, 3, 9);
  for (double& b : m.b1) b = 0.1;
  Matrix x = oracle::random_matrix(7, 4, rng);
  auto out = forward(m, op, x);
  CHECK(max_abs_diff(out.logits, mlp_logits(m, x)) <= 1e-12);
}

TEST_CASE("forward shape errors") {
  Graph g = build_graph(3, {{0, 1}, {1, 2}});
  auto op = build_operator(g, ConvParams{});
  GCNModel m = init_model(2, 2, 2, 0);
  CHECK_THROWS_AS(forward(m, op, Matrix(4, 2)), ValidationError);
  CHECK_THROWS_AS(forward(m, op, Matrix(3, 5)), ValidationError);
}

TEST_CASE("uniform logits give log c") {
  Graph g = build_graph(4, {{0, 1}, {2, 3}});
  auto op = build_operator(g, ConvParams{});
  GCNModel m = init_model(2, 3, 5, 0);
  for (double& w : m.w2.values()) w = 0.0;
  std::vector<int> labels{0, 1, 2, 3};
  std::vector<NodeId> mask{0, 2, 3};
  auto r = loss_and_grads(m, op, Matrix(4, 2, 1.0), labels, mask);
  CHECK(r.loss == doctest::Approx(std::log(5.0)).epsilon(1e-14));
  std::vector<NodeId> empty;
  CHECK_THROWS_AS(loss_and_grads(m, op, Matrix(4, 2, 1.0), labels, empty), ValidationError);
}

TEST_CASE("analytic gradients match finite differences") {
  std::mt19937_64 rng(20240);
  for (Family f : {Family::Symmetric, Family::RowNormalized}) {
    for (int rep = 0; rep < 20; ++rep) {
      auto in = oracle::random_grad_instance(rng, f);
      CHECK(oracle::gradient_max_rel_error(in.model, in.op, in.x, in.labels, in.mask) <= 1e-4);
    }
  }
}

TEST_CASE("masked-out nodes do not contribute without coupling") {
  std::mt19937_64 rng(3);
  Graph g = build_graph(5, std::vector<std::pair<NodeId, NodeId>>{});
  auto op = build_operator(g, ConvParams{0.0, 1.0, Family::Symmetric});
  GCNModel m = init_model(3, 4, 3, 4);
  Matrix x = oracle::random_matrix(5, 3, rng);
  std::vector<int> labels{0, 1, 2, 0, 1};
  std::vector<NodeId> mask{0, 1};
  auto base = loss_and_grads(m, op, x, labels, mask);
  Matrix x2 = x;
  for (std::size_t j = 0; j < 3; ++j) x2(4, j) += 5.0;
  std::vector<int> labels2 = labels;
  labels2[3] = 2;
  auto moved = loss_and_grads(m, op, x2, labels2, mask);
  CHECK(base.loss == moved.loss);
  CHECK(base.grads == moved.grads);
}

TEST_CASE("row-normalized constant features give identical pre-activations") {
  std::mt19937_64 rng(4);
  Graph g = oracle::random_graph(10, 0.3, rng);
  auto op = build_operator(g, ConvParams{0.7, 1.0, Family::RowNormalized});
  Matrix x(10, 3);
  for (std::size_t i = 0; i < 10; ++i) {
    x(i, 0) = 0.5;
    x(i, 1) = -2.0;
    x(i, 2) = 1.25;
  }
  GCNModel m = init_model(3, 4, 2, 1);
  Matrix z = matmul(apply(op, x), m.w1);
  for (std::size_t i = 1; i < 10; ++i)
    for (std::size_t j = 0; j < 4; ++j) CHECK(std::abs(z(i, j) - z(0, j)) <= 1e-12);
}

TEST_CASE("accuracy") {
  Matrix onehot(3, 3, 0.0);
  std::vector<int> labels{2, 0, 1};
  for (std::size_t i = 0; i < 3; ++i) onehot(i, static_cast<std::size_t>(labels[i])) = 1.0;
  std::vector<NodeId> ids{0, 1, 2};
  CHECK(accuracy(onehot, labels, ids) == 1.0);
  Matrix constant(3, 3, 0.7);
  CHECK(accuracy(constant, labels, ids) == doctest::Approx(1.0 / 3.0));
  std::vector<NodeId> none;
  CHECK_THROWS_AS(accuracy(onehot, labels, none), ValidationError);
}

TEST_CASE("accuracy on random labels is near chance") {
  std::mt19937_64 rng(5);
  const std::size_t n = 20000, c = 4;
  Matrix logits = oracle::random_matrix(n, c, rng);
  std::vector<int> labels(n);
  for (int& l : labels) l = static_cast<int>(rng() % c);
  std::vector<NodeId> ids(n);
  std::iota(ids.begin(), ids.end(), 0);
  const double p = 1.0 / c, sd = std::sqrt(p * (1 - p) / n);
  CHECK(std::abs(accuracy(logits, labels, ids) - p) <= 3 * sd);
}

TEST_CASE("training separates a separable toy graph") {
  for (Family f : {Family::Symmetric, Family::RowNormalized}) {
    DatasetBundle b = separable_bundle(3);
    TrainConfig cfg;
    cfg.epochs = 200;
    cfg.seed = 1;
    TrainResult r = train(b, ConvParams{0.5, 1.0, f}, cfg, 8);
    CHECK(r.test_accuracy == 1.0);
    CHECK(r.train_loss_curve.size() == 200);
    CHECK(r.train_loss_curve.back() < r.train_loss_curve.front());
    CHECK(r.embeddings.rows() == b.graph.num_nodes());
  }
}

TEST_CASE("training is deterministic") {
  DatasetBundle b = separable_bundle(7);
  TrainConfig cfg;
  cfg.epochs = 30;
  cfg.seed = 4;
  TrainResult a = train(b, ConvParams{0.3, 1.0, Family::Symmetric}, cfg, 6);
  TrainResult c = train(b, ConvParams{0.3, 1.0, Family::Symmetric}, cfg, 6);
  CHECK(a == c);
}

TEST_CASE("permutation equivariance") {
  std::mt19937_64 rng(6);
  const std::size_t n = 12;
  Graph g = oracle::random_graph(n, 0.3, rng);
  std::vector<NodeId> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<std::pair<NodeId, NodeId>> pe;
  for (const auto& e : g.edge_list()) pe.emplace_back(perm[e.u], perm[e.v]);
  Graph gp = build_graph(n, pe);

  DatasetBundle b;
  b.name = "perm";
  b.graph = g;
  b.features = oracle::random_matrix(n, 3, rng);
  b.labels.resize(n);
  for (int& l : b.labels) l = static_cast<int>(rng() % 3);
  b.num_classes = 3;
  b.split = random_split(n, 5, 2);

  DatasetBundle bp = b;
  bp.graph = gp;
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t j = 0; j < 3; ++j) bp.features(perm[u], j) = b.features(u, j);
    bp.labels[perm[u]] = b.labels[u];
  }
  SplitSpec sp;
  for (NodeId u : b.split->train_ids) sp.train_ids.push_back(perm[u]);
  for (NodeId u : b.split->test_ids) sp.test_ids.push_back(perm[u]);
  std::sort(sp.train_ids.begin(), sp.train_ids.end());
  std::sort(sp.test_ids.begin(), sp.test_ids.end());
  bp.split = sp;

  for (Family f : {Family::Symmetric, Family::RowNormalized}) {
    TrainConfig cfg;
    cfg.epochs = 25;
    TrainResult r = train(b, ConvParams{0.6, 1.0, f}, cfg, 5);
    TrainResult rp = train(bp, ConvParams{0.6, 1.0, f}, cfg, 5);
    double worst = 0.0;
    for (std::size_t u = 0; u < n; ++u)
      for (std::size_t j = 0; j < 3; ++j) worst = std::max(worst, std::abs(r.logits(u, j) - rp.logits(perm[u], j)));
    CHECK(worst <= 1e-9);
    CHECK(r.test_accuracy == doctest::Approx(rp.test_accuracy).epsilon(1e-12));
  }
}

}  // TEST_SUITE
