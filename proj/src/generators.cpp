#include "gcngeom/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>

#include "gcngeom/error.hpp"
#include "gcngeom/random.hpp"

namespace gcngeom {

const char* to_string(NoiseMode mode) {
  switch (mode) {
    case NoiseMode::Uniform: return "uniform";
    case NoiseMode::DegreeIncreasing: return "degree_increasing";
    case NoiseMode::DegreeFlipped: return "degree_flipped";
  }
  return "?";
}

NoiseMode parse_noise_mode(const std::string& text) {
  if (text == "uniform") return NoiseMode::Uniform;
  if (text == "degree_increasing") return NoiseMode::DegreeIncreasing;
  if (text == "degree_flipped") return NoiseMode::DegreeFlipped;
  throw ValidationError("unknown noise scenario '" + text + "'");
}

void SyntheticConfig::validate() const {
  if (num_hubs < 1) throw ValidationError("synthetic: num_hubs must be >= 1");
  if (hub_size < 2) throw ValidationError("synthetic: hub_size must be >= 2");
  if (ba_m != 1) throw ValidationError("synthetic: only ba_m = 1 is supported");
  if (one_hot_dim != num_hubs) throw ValidationError("synthetic: one_hot_dim must equal num_hubs");
  if (!(noise_variance >= 0.0)) throw ValidationError("synthetic: noise variance must be >= 0");
}

double degree_noise_variance(double degree) { return std::exp(3.0 * (-1.5 + std::log(degree))); }

std::vector<double> noise_variances(const Graph& graph, NoiseMode mode, double uniform_variance) {
  const std::size_t n = graph.num_nodes();
  const auto& deg = graph.degrees();
  std::vector<double> var(n, uniform_variance);
  if (mode == NoiseMode::DegreeIncreasing) {
    for (std::size_t u = 0; u < n; ++u) var[u] = degree_noise_variance(deg[u]);
  } else if (mode == NoiseMode::DegreeFlipped) {
    std::vector<NodeId> order(n);
    std::iota(order.begin(), order.end(), NodeId{0});
    std::stable_sort(order.begin(), order.end(), [&](NodeId a, NodeId b) { return deg[a] < deg[b]; });
    // order[r] has 1-based rank r + 1; it takes the degree ranked n - r.
    for (std::size_t r = 0; r < n; ++r) var[order[r]] = degree_noise_variance(deg[order[n - 1 - r]]);
  }
  return var;
}

std::vector<std::pair<NodeId, NodeId>> barabasi_albert_tree(std::size_t n, std::uint64_t seed) {
  std::vector<std::pair<NodeId, NodeId>> edges;
  if (n < 2) return edges;
  std::mt19937_64 rng(seed);
  // Each edge contributes both endpoints, so a uniform draw is degree-proportional.
  std::vector<NodeId> endpoints;
  endpoints.reserve(2 * n);
  edges.emplace_back(1, 0);
  endpoints.insert(endpoints.end(), {0, 1});
  for (NodeId k = 2; k < n; ++k) {
    std::uniform_int_distribution<std::size_t> pick(0, endpoints.size() - 1);
    NodeId target = endpoints[pick(rng)];
    edges.emplace_back(k, target);
    endpoints.push_back(k);
    endpoints.push_back(target);
  }
  return edges;
}

DatasetBundle generate_hub_periphery(const SyntheticConfig& config) {
  config.validate();
  const std::size_t clique_nodes = config.num_hubs * config.hub_size;
  const std::size_t n = clique_nodes * (1 + config.periphery_size);

  std::vector<std::pair<NodeId, NodeId>> base;
  std::vector<int> labels(n);
  for (std::size_t h = 0; h < config.num_hubs; ++h) {
    const std::size_t first = h * config.hub_size;
    for (std::size_t i = 0; i < config.hub_size; ++i) {
      labels[first + i] = static_cast<int>(h);
      for (std::size_t j = i + 1; j < config.hub_size; ++j)
        base.emplace_back(static_cast<NodeId>(first + i), static_cast<NodeId>(first + j));
    }
  }
  for (std::size_t c = 0; c < clique_nodes; ++c) {
    const std::size_t offset = clique_nodes + c * config.periphery_size;
    for (std::size_t i = 0; i < config.periphery_size; ++i) labels[offset + i] = labels[c];
    if (config.periphery_size == 0) continue;
    for (auto [a, b] : barabasi_albert_tree(config.periphery_size, mix_seed(config.seed, 1000 + c)))
      base.emplace_back(static_cast<NodeId>(offset + a), static_cast<NodeId>(offset + b));
    base.emplace_back(static_cast<NodeId>(c), static_cast<NodeId>(offset));
  }

  Graph graph;
  bool connected = false;
  for (std::uint64_t attempt = 0; attempt < 10 && !connected; ++attempt) {
    auto edges = base;
    if (config.num_hubs > 1) {
      std::mt19937_64 rng(mix_seed(config.seed, 2 + attempt));
      std::uniform_int_distribution<std::size_t> member(0, config.hub_size - 1);
      std::uniform_int_distribution<std::size_t> other(0, config.num_hubs - 2);
      std::set<std::pair<NodeId, NodeId>> added;
      for (std::size_t h = 0; h < config.num_hubs; ++h) {
        std::size_t target_hub = other(rng);
        if (target_hub >= h) ++target_hub;
        auto a = static_cast<NodeId>(h * config.hub_size + member(rng));
        auto b = static_cast<NodeId>(target_hub * config.hub_size + member(rng));
        if (added.insert({std::min(a, b), std::max(a, b)}).second) edges.emplace_back(a, b);
      }
    }
    graph = build_graph(n, edges);
    connected = is_connected(graph);
  }
  if (!connected) throw ValidationError("synthetic: hub-periphery graph still disconnected after 10 attempts");

  const std::size_t p = config.one_hot_dim + config.dummy_dim;
  Matrix x(n, p);
  std::mt19937_64 feat_rng(mix_seed(config.seed, 3));
  std::normal_distribution<double> normal(0.0, 1.0);
  for (std::size_t u = 0; u < n; ++u) {
    x(u, static_cast<std::size_t>(labels[u])) = 1.0;
    for (std::size_t j = config.one_hot_dim; j < p; ++j) x(u, j) = normal(feat_rng);
  }
  auto var = noise_variances(graph, config.noise_mode, config.noise_variance);
  std::mt19937_64 noise_rng(mix_seed(config.seed, 4));
  for (std::size_t u = 0; u < n; ++u) {
    const double sd = std::sqrt(var[u]);
    for (std::size_t j = 0; j < p; ++j) x(u, j) += sd * normal(noise_rng);
  }

  DatasetBundle b;
  b.name = std::string("hub_periphery_") + to_string(config.noise_mode);
  b.graph = std::move(graph);
  b.features = std::move(x);
  b.labels = std::move(labels);
  b.num_classes = static_cast<int>(config.num_hubs);
  return b;
}

FeatureMatrix StructuralReplicas::combined_features() const {
  const std::size_t n = features_first.rows(), p = features_first.cols();
  Matrix x(2 * n, p);
  for (std::size_t u = 0; u < n; ++u) {
    std::copy(features_first.row(u).begin(), features_first.row(u).end(), x.row(u).begin());
    std::copy(features_second.row(u).begin(), features_second.row(u).end(), x.row(n + u).begin());
  }
  return x;
}

StructuralReplicas generate_structural_replicas(const Graph& templ, std::uint64_t seed, double sigma,
                                                std::size_t feature_dim) {
  if (!(sigma >= 0.0)) throw ValidationError("structural replicas: sigma must be >= 0");
  const std::size_t n = templ.num_nodes();
  std::vector<WeightedEdge> edges;
  for (const auto& e : templ.edge_list()) {
    edges.push_back(e);
    edges.push_back({static_cast<NodeId>(e.u + n), static_cast<NodeId>(e.v + n), e.w});
  }
  StructuralReplicas r;
  r.graph = build_graph(2 * n, edges);
  r.phi.resize(n);
  std::iota(r.phi.begin(), r.phi.end(), static_cast<NodeId>(n));

  std::normal_distribution<double> normal(0.0, 1.0);
  std::mt19937_64 rng(mix_seed(seed, 10));
  r.features_first = Matrix(n, feature_dim);
  for (double& v : r.features_first.values()) v = normal(rng);
  r.features_second = r.features_first;
  if (sigma > 0.0) {
    std::mt19937_64 noise(mix_seed(seed, 11));
    for (double& v : r.features_second.values()) v += sigma * normal(noise);
  }
  return r;
}

Graph random_connected_graph(std::size_t n, double p, std::uint64_t seed, std::size_t min_degree) {
  std::mt19937_64 rng(seed);
  std::set<std::pair<NodeId, NodeId>> edges;
  auto add = [&](NodeId a, NodeId b) {
    if (a != b) edges.insert({std::min(a, b), std::max(a, b)});
  };
  for (NodeId k = 1; k < n; ++k) add(k, std::uniform_int_distribution<NodeId>(0, k - 1)(rng));
  std::bernoulli_distribution coin(p);
  for (NodeId a = 0; a < n; ++a)
    for (NodeId b = a + 1; b < n; ++b)
      if (coin(rng)) add(a, b);
  if (min_degree > 1 && n > min_degree) {
    std::vector<std::size_t> deg(n, 0);
    for (auto [a, b] : edges) ++deg[a], ++deg[b];
    std::uniform_int_distribution<NodeId> any(0, static_cast<NodeId>(n - 1));
    for (NodeId a = 0; a < n; ++a) {
      while (deg[a] < min_degree) {
        NodeId b = any(rng);
        if (b == a || edges.count({std::min(a, b), std::max(a, b)})) continue;
        add(a, b);
        ++deg[a], ++deg[b];
      }
    }
  }
  return build_graph(n, std::vector<std::pair<NodeId, NodeId>>(edges.begin(), edges.end()));
}

}  // namespace gcngeom
