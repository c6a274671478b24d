#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "gcngeom/conv.hpp"
#include "gcngeom/graph.hpp"
#include "gcngeom/matrix.hpp"

namespace gcngeom {

/// Neighborhood degree heterogeneity. The sums run over N(u) and u itself;
/// the self term has weight beta and zero degree difference.
///   delta_bar[u]    = sum_v A_uv (d_v - d_u)   / (d_u + beta)
///   delta_sq_bar[u] = sum_v A_uv (d_v - d_u)^2 / (d_u + beta)
struct TopologyStats {
  std::vector<double> delta_bar;
  std::vector<double> delta_sq_bar;
  std::vector<double> degree;
  std::vector<double> aug_degree;
};

TopologyStats topology_stats(const Graph& graph, double beta);

/// Which constant multiplies the second-order remainder of the norm bound.
enum class MConstant {
  /// ((d_max + b) / (b + 1))^(2 + a): bounds the remainder for every node.
  Conservative,
  /// ((d_max + b) / (b + 1))^2, without the alpha exponent.
  Stated,
  /// (d_max + b)^(2 + a), without the (b + 1) normalizer.
  Appendix,
};

const char* to_string(MConstant m);
double m_constant(double d_max, double alpha, double beta, MConstant variant = MConstant::Conservative);

/// Per-node upper bound on ||(S Z)_u||_2 for the symmetric family:
///   zmax ((d+b)^(1-2a) - a dbar/(d+b)^(2a) + a(a+1)M/2 * dsq/(d+b)^(1+2a))
std::vector<double> lemma31_bound(const Graph& graph, double alpha, double beta, double z_norm_max,
                                  MConstant variant = MConstant::Conservative);

struct BoundReport {
  std::vector<double> empirical_norm;
  std::vector<double> bound;
  std::vector<bool> satisfied;
  std::vector<double> slack;  // bound - empirical

  std::size_t violations() const;
  double worst_slack() const;
};

inline constexpr double kBoundTolerance = 1e-9;

/// Compares ||(S Z)_u|| under the symmetric operator with lemma31_bound.
/// `bound_scale` multiplies the bound (1 in normal use; a harness self-test
/// shrinks it to provoke violations).
BoundReport check_lemma31(const Graph& graph, double alpha, double beta, const Matrix& z,
                          MConstant variant = MConstant::Conservative, double bound_scale = 1.0);

/// How the row-normalized mean bound is formed.
enum class RowMeanBound {
  /// sigma^2 ||W||^2 max_v w_uv / sum_v w_uv with w_uv = A_uv (d_v + b)^-a,
  /// the Holder step applied to the normalized weights.
  Holder,
  /// sigma^2 ||W||^2 / (sum_v (d_v + b)^-2a) / (1 + b), the closed display.
  Display,
};

struct Lemma41Options {
  MConstant m_variant = MConstant::Conservative;
  RowMeanBound row_mean = RowMeanBound::Holder;
};

struct Lemma41Result {
  double mu = 0.0;
  double high_prob_bound = 0.0;
  /// sum_j sigma_j^2, the exact mean of ||(S eps)_u W||^2.
  double exact_mean = 0.0;
};

/// Bounds on ||(S eps)_u W||^2 for iid N(0, sigma^2) eps. `w_norm` is the norm
/// used in the deviation term, `w_fro` the Frobenius norm used in mu.
Lemma41Result lemma41_bounds(const Graph& graph, NodeId u, double alpha, double beta, double sigma,
                             double w_norm, double w_fro, double delta, Family family,
                             const Lemma41Options& options = {});

/// (d_u + b)^(1 - 2a) - (d_u2 + b)^(1 - 2a)
double toy2_leading_term(double d_u, double d_u2, double alpha, double beta);

/// Logarithmic degree classes: 0 -> 0, 1 -> 1, 2 -> 2, 3..4 -> 3, 5..8 -> 4, ...
int degree_class(double degree);
std::string degree_class_label(int cls);

struct DistanceClassStats {
  int degree_class = 0;
  std::size_t num_nodes = 0;
  double mean_distance = 0.0;
  double mean_sq_distance = 0.0;
  double q10 = 0.0;
  double q50 = 0.0;
  double q90 = 0.0;
  /// Largest high-probability distance bound among the class's nodes.
  double max_bound = 0.0;
  /// Nodes whose mean squared distance exceeds their own bound.
  std::size_t bound_violations = 0;
};

struct StructuralExperimentResult {
  std::vector<DistanceClassStats> classes;
  /// Mean over trials of ||H_u - H_phi(u)||^2 per template node.
  std::vector<double> node_mean_sq_distance;
  std::vector<double> node_bound;
  double max_distance = 0.0;
};

struct StructuralExperimentConfig {
  ConvParams params;
  double sigma = 0.1;
  std::size_t trials = 100;
  std::uint64_t seed = 0;
  std::size_t feature_dim = 8;
  std::size_t hidden_dim = 16;
  std::size_t num_classes = 4;
  double delta = 0.01;
};

/// Untrained two-layer GCN embeddings of two structural replicas; distances
/// between phi-paired nodes grouped by degree class.
StructuralExperimentResult structural_distance_experiment(const Graph& templ,
                                                          const StructuralExperimentConfig& cfg);

}  // namespace gcngeom
