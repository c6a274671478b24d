#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "gcngeom/conv.hpp"
#include "gcngeom/gcn.hpp"
#include "gcngeom/generators.hpp"
#include "gcngeom/geometry.hpp"
#include "gcngeom/graph.hpp"
#include "gcngeom/metrics.hpp"

namespace gcngeom {

/// 0.1, 0.2, ..., 1.0
std::vector<double> default_alpha_grid();

/// Training-node counts from the benchmark hyperparameter table, keyed by
/// lower-case dataset name ("cora", "pubmed", ...).
std::optional<std::size_t> default_train_count(const std::string& dataset_name);

struct TrialRecord {
  Family family = Family::Symmetric;
  double alpha = 0.0;
  double beta = 0.0;
  std::size_t trial = 0;
  double accuracy = 0.0;
};

struct GridSummary {
  Family family = Family::Symmetric;
  double alpha = 0.0;
  double beta = 0.0;
  double mean = 0.0;
  double sd = 0.0;  // population SD of `accuracies`
  std::vector<double> accuracies;
};

struct SweepResult {
  std::vector<TrialRecord> records;  // sorted by (family, alpha, beta, trial)
  std::vector<GridSummary> summary;
};

struct SweepConfig {
  std::vector<Family> families{Family::Symmetric, Family::RowNormalized};
  std::vector<double> alphas = default_alpha_grid();
  std::vector<double> betas{0.0, 1.0};
  std::size_t trials = 30;
  std::uint64_t seed = 0;
  TrainConfig train;
  std::size_t hidden = 32;
  /// Random split size; when unset the bundle's own split is reused.
  std::optional<std::size_t> train_count;
  std::size_t workers = 0;  // 0 = hardware concurrency

  void validate() const;
};

/// Trial t uses model seed seed ^ t and split seed seed ^ (t + 10^6), shared
/// by every grid point.
SweepResult run_sweep(const DatasetBundle& bundle, const SweepConfig& cfg);

/// Sweep where every trial also draws a fresh hub-periphery graph
/// (graph seed seed ^ (t + 2 * 10^6)).
SweepResult run_synthetic_sweep(const SyntheticConfig& base, const SweepConfig& cfg);

/// Mean/SD per grid point from per-trial records.
std::vector<GridSummary> summarize(const std::vector<TrialRecord>& records);

struct TrendStats {
  Family family = Family::Symmetric;
  double beta = 0.0;
  /// Spearman(alpha, mean accuracy) over the alpha grid; NaN if undefined.
  double spearman = 0.0;
  /// max - min of the mean accuracy across alpha.
  double range = 0.0;
};

std::vector<TrendStats> alpha_trends(const SweepResult& result);

/// Synthetic-experiment defaults: the settings used for the noise scenarios.
SweepConfig synthetic_sweep_defaults();

struct StructuralRow {
  Family family = Family::Symmetric;
  double alpha = 0.0;
  double beta = 0.0;
  DistanceClassStats stats;
};

struct StructuralRunConfig {
  std::vector<Family> families{Family::Symmetric, Family::RowNormalized};
  std::vector<double> alphas = default_alpha_grid();
  double beta = 1.0;
  double sigma = 0.1;
  std::size_t trials = 100;
  std::uint64_t seed = 0;
  double delta = 0.01;
};

/// Default structural template: two cliques of 20, each member carrying a
/// 10-node preferential-attachment periphery.
Graph structural_template(std::uint64_t seed);

std::vector<StructuralRow> run_structural(const Graph& templ, const StructuralRunConfig& cfg);

struct GeometryReport {
  NormDegreeProfile norm_profile;
  double spearman_graph_embedding = 0.0;
  double spearman_feature_embedding = 0.0;
  double gw_graph_embedding = 0.0;
  double gw_feature_embedding = 0.0;
  double curvature_original_mean = 0.0;
  double curvature_reconstructed_mean = 0.0;
  /// Spearman between original-edge curvatures scored in both graphs.
  double curvature_spearman = 0.0;
  CurvatureSummary curvature_original;
  CurvatureSummary curvature_reconstructed;
  double test_accuracy = 0.0;
  std::vector<std::filesystem::path> svgs;
};

struct GeometryConfig {
  ConvParams params;
  TrainConfig train;
  std::size_t hidden = 32;
  std::optional<std::size_t> train_count;
  std::uint64_t split_seed = 0;
  std::size_t gw_subsample = 300;
};

/// Trains once and runs the full diagnostic battery on the embeddings. SVGs
/// are written to out_dir.
GeometryReport run_geometry(const DatasetBundle& bundle, const GeometryConfig& cfg,
                            const std::filesystem::path& out_dir);

/// Diagnostics on given embeddings (no training).
GeometryReport geometry_diagnostics(const Graph& graph, const Matrix& features, const Matrix& embeddings,
                                    std::size_t gw_subsample, std::uint64_t seed);

struct BoundsCell {
  double alpha = 0.0;
  double beta = 0.0;
  std::size_t lemma31_checks = 0;
  std::size_t lemma31_violations = 0;
  double lemma31_worst_slack = 0.0;
  std::size_t lemma41_checks = 0;
  std::size_t lemma41_mean_violations = 0;
  std::size_t lemma41_quantile_violations = 0;
  double lemma41_worst_mean_ratio = 0.0;      // empirical mean / mu
  double lemma41_worst_quantile_ratio = 0.0;  // empirical quantile / bound
};

struct BoundsConfig {
  std::vector<double> alphas{0.0, 0.25, 0.5, 0.75, 1.0};
  std::vector<double> betas{0.0, 1.0, 2.0};
  std::vector<Family> families{Family::Symmetric, Family::RowNormalized};
  std::size_t draws = 2000;
  std::size_t feature_dim = 8;
  std::size_t out_dim = 4;
  double delta = 0.1;
  /// Standard errors of the Monte-Carlo mean allowed above mu.
  double mean_se_allowance = 4.0;
  /// Multiplies every bound; 1 outside self-tests.
  double bound_scale = 1.0;
  std::uint64_t seed = 0;
  MConstant m_variant = MConstant::Conservative;
};

struct Lemma41Check {
  std::size_t checks = 0;
  std::size_t mean_violations = 0;
  std::size_t strict_mean_violations = 0;  // without the standard-error allowance
  std::size_t quantile_violations = 0;
  double worst_mean_ratio = 0.0;
  double worst_quantile_ratio = 0.0;
};

/// Monte-Carlo check of the noise-norm bounds on every node of `graph`:
/// eps ~ N(0, 1)^{n x p}, W fixed Glorot, statistic ||(S eps)_u W||^2.
Lemma41Check monte_carlo_lemma41(const Graph& graph, const ConvParams& params, const Matrix& w,
                                 std::size_t draws, double delta, std::uint64_t seed,
                                 double mean_se_allowance = 4.0, double bound_scale = 1.0,
                                 MConstant m_variant = MConstant::Conservative);

/// Degree-norm bound with random nonnegative Z and noise-norm Monte-Carlo over the grids.
std::vector<BoundsCell> run_bounds(const std::vector<Graph>& graphs, const BoundsConfig& cfg);

bool any_violation(const std::vector<BoundsCell>& cells);

/// Point colouring for emit_svg_scatter: categorical labels or a scalar ramp.
using PointColors = std::variant<std::vector<int>, std::vector<double>>;

/// Self-contained SVG scatter plot with axes and a legend. Throws LoadError
/// when the path cannot be written.
void emit_svg_scatter(const Matrix& points, const PointColors& colors, const std::filesystem::path& path,
                      const std::string& title = "");

void write_results_csv(const std::filesystem::path& path, const std::vector<TrialRecord>& records);
void write_summary_json(const std::filesystem::path& path, const SweepResult& result,
                        const std::string& dataset, const SweepConfig& cfg);
void write_structural_csv(const std::filesystem::path& path, const std::vector<StructuralRow>& rows);
void write_geometry_json(const std::filesystem::path& path, const GeometryReport& report,
                         const std::string& dataset, const ConvParams& params);
void write_bounds_json(const std::filesystem::path& path, const std::vector<BoundsCell>& cells,
                       const BoundsConfig& cfg);

/// Runs fn(i) for i in [0, count) on a worker pool; exceptions are rethrown.
void parallel_for(std::size_t count, std::size_t workers, const std::function<void(std::size_t)>& fn);

}  // namespace gcngeom
