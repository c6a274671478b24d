#pragma once

#include <cstdint>
#include <vector>

#include "gcngeom/graph.hpp"

namespace gcngeom {

enum class NoiseMode { Uniform, DegreeIncreasing, DegreeFlipped };

const char* to_string(NoiseMode mode);
NoiseMode parse_noise_mode(const std::string& text);

/// Hub-periphery benchmark: cliques ("hubs") whose members each carry a sparse
/// preferential-attachment tree ("periphery").
struct SyntheticConfig {
  std::size_t num_hubs = 4;
  std::size_t hub_size = 20;
  std::size_t periphery_size = 10;
  std::size_t ba_m = 1;
  std::size_t one_hot_dim = 4;
  std::size_t dummy_dim = 16;
  NoiseMode noise_mode = NoiseMode::Uniform;
  double noise_variance = 4.0;  // used by NoiseMode::Uniform
  std::uint64_t seed = 0;

  void validate() const;
};

/// sigma^2(d) = exp(3 (-1.5 + log d)) for the degree-dependent scenarios.
double degree_noise_variance(double degree);

/// Per-node noise variance for `mode`. For DegreeFlipped the node with
/// ascending degree rank r (1-based, ties by index) receives the variance of
/// the node ranked n + 1 - r.
std::vector<double> noise_variances(const Graph& graph, NoiseMode mode, double uniform_variance);

DatasetBundle generate_hub_periphery(const SyntheticConfig& config);

/// Barabasi-Albert tree grown from a single node; m = 1 only.
std::vector<std::pair<NodeId, NodeId>> barabasi_albert_tree(std::size_t n, std::uint64_t seed);

/// Two disjoint copies of a template graph. Node u of the first copy maps to
/// phi[u] = u + n in the second.
struct StructuralReplicas {
  Graph graph;
  std::vector<NodeId> phi;
  FeatureMatrix features_first;
  FeatureMatrix features_second;

  /// Stacked (2n x p) features aligned with `graph`.
  FeatureMatrix combined_features() const;
};

/// First copy gets standard normal features; the second copy's are the first
/// copy's plus iid N(0, sigma^2) noise.
StructuralReplicas generate_structural_replicas(const Graph& templ, std::uint64_t seed, double sigma,
                                                std::size_t feature_dim);

/// Random connected graph: a random spanning tree plus Erdos-Renyi edges with
/// probability p. With min_degree > 1, low-degree nodes receive extra edges.
Graph random_connected_graph(std::size_t n, double p, std::uint64_t seed, std::size_t min_degree = 1);

}  // namespace gcngeom
