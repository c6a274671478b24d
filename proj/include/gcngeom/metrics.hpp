#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "gcngeom/graph.hpp"
#include "gcngeom/matrix.hpp"

namespace gcngeom {

/// Symmetric nonnegative matrix with an exactly zero diagonal.
class DistanceMatrix {
 public:
  DistanceMatrix() = default;
  explicit DistanceMatrix(std::size_t n) : n_(n), values_(n * n, 0.0) {}

  std::size_t size() const { return n_; }
  double operator()(std::size_t i, std::size_t j) const { return values_[i * n_ + j]; }
  /// Sets both (i, j) and (j, i).
  void set(std::size_t i, std::size_t j, double d);

  const std::vector<double>& values() const { return values_; }

  DistanceMatrix subset(std::span<const std::size_t> ids) const;
  /// Upper-triangle entries in row order.
  std::vector<double> upper_triangle() const;
  double median_offdiag() const;

 private:
  std::size_t n_ = 0;
  std::vector<double> values_;
};

struct PcaResult {
  Matrix coordinates;               // n x k
  Matrix components;                // k x p, unit rows
  std::vector<double> eigenvalues;  // descending covariance eigenvalues
  std::vector<double> mean;
};

/// Mean-centred projection on the top-k covariance eigenvectors (power
/// iteration with deflation). Sign fixed so the largest-magnitude loading
/// of each component is positive.
PcaResult pca_project(const Matrix& x, std::size_t k);

/// K(u, v) = exp(-hops^2 / eps); 0 across components.
Matrix diffusion_kernel(const Graph& graph, double eps);

enum class KernelDistance { OneMinus, Sqrt2Minus2K };

/// 1 - K by default, or sqrt(2 - 2K).
DistanceMatrix graph_distance(const Graph& graph, double eps = 0.5,
                              KernelDistance kind = KernelDistance::OneMinus);

DistanceMatrix pairwise_euclidean(const Matrix& x);

/// Average ranks (ties share the mean rank), 1-based.
std::vector<double> average_ranks(std::span<const double> x);

/// Pearson correlation of average ranks. Throws ValidationError on a length
/// mismatch, fewer than two samples or constant input.
double spearman(std::span<const double> x, std::span<const double> y);

/// Spearman between upper-triangle entries of two distance matrices. Pairs are
/// subsampled (seeded) when there are more than `max_pairs`.
double distance_spearman(const DistanceMatrix& a, const DistanceMatrix& b,
                         std::size_t max_pairs = 1'000'000, std::uint64_t seed = 0);

struct GWConfig {
  /// Entropic regularization of the inner transport problems. Non-positive
  /// selects 5e-3 * median(D1) * median(D2).
  double epsilon_reg = 0.0;
  std::size_t max_outer = 50;
  std::size_t max_sinkhorn = 200;
  double tol = 1e-9;
  std::optional<std::size_t> subsample;
  std::uint64_t seed = 0;
};

struct GWResult {
  double value = 0.0;
  Matrix coupling;
  bool converged = false;
  std::size_t outer_iterations = 0;
  std::vector<double> objective_trace;
  /// Max absolute deviation of the coupling marginals from uniform.
  double marginal_error = 0.0;
};

/// sum_{ijkl} (D1_ik - D2_jl)^2 T_ij T_kl
double gw_objective(const DistanceMatrix& d1, const DistanceMatrix& d2, const Matrix& coupling);

/// Square-loss Gromov-Wasserstein between uniform metric-measure spaces by
/// conditional gradient with entropic inner transport and exact line search.
GWResult gromov_wasserstein(const DistanceMatrix& d1, const DistanceMatrix& d2, const GWConfig& cfg = {});

struct CurvatureSummary {
  std::vector<WeightedEdge> edges;
  std::vector<double> curvature;
  double mean = 0.0;
  double sd = 0.0;
};

/// 4 - d_u - d_v + 3 t(u, v), t = triangles through (u, v); degrees are edge
/// counts. Defined for any node pair.
double forman_pair_curvature(const Graph& graph, NodeId u, NodeId v);

/// Per-edge augmented Forman curvature. Throws ValidationError on an empty edge set.
CurvatureSummary forman_curvature(const Graph& graph);

/// Unweighted graph on the m smallest pairwise distances, ties by (i, j).
Graph reconstruct_graph(const Matrix& h, std::size_t m_edges);

struct DegreeBucket {
  int degree_class = 0;
  std::size_t count = 0;
  double mean_norm = 0.0;
  double q10 = 0.0;
  double q50 = 0.0;
  double q90 = 0.0;
};

struct NormDegreeProfile {
  std::vector<DegreeBucket> buckets;
  /// Spearman(degree, ||H_u||), NaN when undefined.
  double degree_norm_spearman = 0.0;
};

NormDegreeProfile norm_degree_profile(const Matrix& h, std::span<const double> degrees);

/// Linear-interpolated quantile of unsorted data, q in [0, 1].
double quantile(std::vector<double> values, double q);

}  // namespace gcngeom
