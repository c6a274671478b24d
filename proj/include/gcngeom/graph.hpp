#pragma once

#include <cstdint>
#include <filesystem>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gcngeom/matrix.hpp"

namespace gcngeom {

using NodeId = std::uint32_t;

struct WeightedEdge {
  NodeId u = 0;
  NodeId v = 0;
  double w = 1.0;
};

/// Immutable sparse undirected weighted graph in compressed row form.
///
/// Every undirected edge is stored twice, columns are sorted within a row,
/// there are no duplicates and no stored self-loops. degrees()[u] is the sum
/// of the weights in row u.
class Graph {
 public:
  Graph() = default;

  std::size_t num_nodes() const { return degrees_.size(); }
  /// Directed entry count (twice the undirected edge count).
  std::size_t num_directed_entries() const { return col_indices_.size(); }
  std::size_t num_edges() const { return col_indices_.size() / 2; }

  const std::vector<std::size_t>& row_offsets() const { return row_offsets_; }
  const std::vector<NodeId>& col_indices() const { return col_indices_; }
  const std::vector<double>& edge_weights() const { return edge_weights_; }
  const std::vector<double>& degrees() const { return degrees_; }

  std::span<const NodeId> neighbors(NodeId u) const {
    return {col_indices_.data() + row_offsets_[u], row_offsets_[u + 1] - row_offsets_[u]};
  }
  std::span<const double> weights(NodeId u) const {
    return {edge_weights_.data() + row_offsets_[u], row_offsets_[u + 1] - row_offsets_[u]};
  }
  double degree(NodeId u) const { return degrees_[u]; }
  double max_degree() const;

  /// A_uv, or 0 when absent. Binary search within row u.
  double weight(NodeId u, NodeId v) const;
  bool has_edge(NodeId u, NodeId v) const { return weight(u, v) != 0.0; }

  /// Undirected edges with u < v, in row order.
  std::vector<WeightedEdge> edge_list() const;

  Matrix to_dense() const;

  bool operator==(const Graph& other) const = default;

 private:
  friend Graph build_graph(std::size_t, std::span<const WeightedEdge>);

  std::vector<std::size_t> row_offsets_{0};
  std::vector<NodeId> col_indices_;
  std::vector<double> edge_weights_;
  std::vector<double> degrees_;
};

/// Symmetrizes, sorts and deduplicates. A repeated pair keeps the first weight.
/// Throws ValidationError on self-loops, out-of-range indices or negative weights.
Graph build_graph(std::size_t num_nodes, std::span<const WeightedEdge> edges);
Graph build_graph(std::size_t num_nodes, const std::vector<std::pair<NodeId, NodeId>>& edges);

struct SplitSpec {
  std::vector<NodeId> train_ids;
  std::vector<NodeId> test_ids;
};

struct DatasetBundle {
  std::string name;
  Graph graph;
  FeatureMatrix features;
  std::vector<int> labels;
  int num_classes = 0;
  std::optional<SplitSpec> split;
};

/// Checks label range, feature row count and split consistency.
void validate_bundle(const DatasetBundle& bundle);

/// Reads manifest.json, edges.tsv, features.csv, labels.tsv and the optional
/// splits.json from `dir`.
DatasetBundle load_dataset(const std::filesystem::path& dir);
void save_dataset(const DatasetBundle& bundle, const std::filesystem::path& dir);

/// Fraction of undirected edges whose endpoints share a label.
double edge_homophily(const Graph& graph, std::span<const int> labels);

inline constexpr std::int32_t kUnreachable = std::numeric_limits<std::int32_t>::max();

/// Row-major n*n BFS hop counts; kUnreachable across components.
class HopMatrix {
 public:
  explicit HopMatrix(std::size_t n) : n_(n), hops_(n * n, kUnreachable) {}
  std::size_t size() const { return n_; }
  std::int32_t operator()(std::size_t u, std::size_t v) const { return hops_[u * n_ + v]; }
  std::int32_t& operator()(std::size_t u, std::size_t v) { return hops_[u * n_ + v]; }

 private:
  std::size_t n_;
  std::vector<std::int32_t> hops_;
};

std::vector<std::int32_t> bfs_hops(const Graph& graph, NodeId source);
HopMatrix shortest_path_hops(const Graph& graph);

bool is_connected(const Graph& graph);

/// Uniform random subset of `train_count` training nodes, the rest are test.
/// Both lists are returned sorted.
SplitSpec random_split(std::size_t num_nodes, std::size_t train_count, std::uint64_t seed);

}  // namespace gcngeom
