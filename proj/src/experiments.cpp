#include "gcngeom/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <limits>
#include <map>
#include <mutex>
#include <random>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "gcngeom/error.hpp"
#include "gcngeom/random.hpp"

namespace gcngeom {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

// Runs fn, mapping a ValidationError (undefined statistic) to NaN.
template <typename Fn>
double guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const ValidationError&) {
    return kNaN;
  }
}

std::ofstream open_out(const std::filesystem::path& path) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw LoadError("cannot write " + path.string());
  return out;
}

nlohmann::json json_number(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v;
}

void sort_records(std::vector<TrialRecord>& records) {
  std::sort(records.begin(), records.end(), [](const TrialRecord& a, const TrialRecord& b) {
    if (a.family != b.family) return a.family < b.family;
    if (a.alpha != b.alpha) return a.alpha < b.alpha;
    if (a.beta != b.beta) return a.beta < b.beta;
    return a.trial < b.trial;
  });
}

struct GridPoint {
  Family family;
  double alpha;
  double beta;
};

std::vector<GridPoint> grid_points(const SweepConfig& cfg) {
  std::vector<GridPoint> grid;
  for (Family f : cfg.families)
    for (double a : cfg.alphas)
      for (double b : cfg.betas) grid.push_back({f, a, b});
  return grid;
}

}  // namespace

void parallel_for(std::size_t count, std::size_t workers, const std::function<void(std::size_t)>& fn) {
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = std::min(workers, count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
          next = count;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

std::vector<double> default_alpha_grid() {
  std::vector<double> grid;
  for (int i = 1; i <= 10; ++i) grid.push_back(i / 10.0);
  return grid;
}

std::optional<std::size_t> default_train_count(const std::string& dataset_name) {
  static const std::map<std::string, std::size_t> counts{
      {"cora", 140},           {"pubmed", 60},   {"citeseer", 1694},   {"coauthor cs", 9194},
      {"coauthor_cs", 9194},   {"amazon photos", 3844}, {"amazon_photos", 3844}, {"actor", 3804},
      {"cornell", 87},         {"wisconsin", 126}};
  auto it = counts.find(lower(dataset_name));
  if (it == counts.end()) return std::nullopt;
  return it->second;
}

void SweepConfig::validate() const {
  if (trials < 1) throw ValidationError("sweep: trials must be >= 1");
  if (families.empty() || alphas.empty() || betas.empty()) throw ValidationError("sweep: empty grid");
  for (double a : alphas)
    for (double b : betas)
      for (Family f : families) ConvParams{a, b, f}.validate();
  if (hidden < 1) throw ValidationError("sweep: hidden must be >= 1");
  if (train.epochs < 1) throw ValidationError("sweep: epochs must be >= 1");
  if (!(train.lr > 0.0)) throw ValidationError("sweep: lr must be positive");
}

std::vector<GridSummary> summarize(const std::vector<TrialRecord>& records) {
  std::map<std::tuple<Family, double, double>, GridSummary> groups;
  for (const auto& r : records) {
    auto& g = groups[{r.family, r.alpha, r.beta}];
    g.family = r.family;
    g.alpha = r.alpha;
    g.beta = r.beta;
    g.accuracies.push_back(r.accuracy);
  }
  std::vector<GridSummary> out;
  for (auto& [key, g] : groups) {
    const double n = static_cast<double>(g.accuracies.size());
    double sum = 0.0;
    for (double a : g.accuracies) sum += a;
    g.mean = sum / n;
    double var = 0.0;
    for (double a : g.accuracies) var += (a - g.mean) * (a - g.mean);
    g.sd = std::sqrt(var / n);
    out.push_back(std::move(g));
  }
  return out;
}

SweepResult run_sweep(const DatasetBundle& bundle, const SweepConfig& cfg) {
  cfg.validate();
  validate_bundle(bundle);
  if (!cfg.train_count && !bundle.split)
    throw ValidationError("sweep: dataset '" + bundle.name + "' has no split and no train count was given");
  const auto grid = grid_points(cfg);
  std::vector<SparseOperator> ops;
  for (const auto& g : grid) ops.push_back(build_operator(bundle.graph, ConvParams{g.alpha, g.beta, g.family}));

  std::vector<SplitSpec> splits;
  for (std::size_t t = 0; t < cfg.trials; ++t)
    splits.push_back(cfg.train_count ? random_split(bundle.graph.num_nodes(), *cfg.train_count,
                                                    cfg.seed ^ (t + 1'000'000))
                                     : *bundle.split);

  SweepResult res;
  res.records.resize(grid.size() * cfg.trials);
  parallel_for(res.records.size(), cfg.workers, [&](std::size_t idx) {
    const std::size_t gi = idx / cfg.trials, t = idx % cfg.trials;
    TrainConfig tc = cfg.train;
    tc.seed = cfg.seed ^ t;
    const auto r = train(bundle, splits[t], ops[gi], tc, cfg.hidden);
    res.records[idx] = {grid[gi].family, grid[gi].alpha, grid[gi].beta, t, r.test_accuracy};
  });
  sort_records(res.records);
  res.summary = summarize(res.records);
  return res;
}

SweepResult run_synthetic_sweep(const SyntheticConfig& base, const SweepConfig& cfg) {
  cfg.validate();
  base.validate();
  if (!cfg.train_count) throw ValidationError("synthetic sweep: train count required");
  const auto grid = grid_points(cfg);
  SweepResult res;
  res.records.resize(grid.size() * cfg.trials);
  parallel_for(cfg.trials, cfg.workers, [&](std::size_t t) {
    SyntheticConfig sc = base;
    sc.seed = cfg.seed ^ (t + 2'000'000);
    const DatasetBundle bundle = generate_hub_periphery(sc);
    const SplitSpec split = random_split(bundle.graph.num_nodes(), *cfg.train_count, cfg.seed ^ (t + 1'000'000));
    TrainConfig tc = cfg.train;
    tc.seed = cfg.seed ^ t;
    for (std::size_t gi = 0; gi < grid.size(); ++gi) {
      const auto op = build_operator(bundle.graph, ConvParams{grid[gi].alpha, grid[gi].beta, grid[gi].family});
      const auto r = train(bundle, split, op, tc, cfg.hidden);
      res.records[gi * cfg.trials + t] = {grid[gi].family, grid[gi].alpha, grid[gi].beta, t, r.test_accuracy};
    }
  });
  sort_records(res.records);
  res.summary = summarize(res.records);
  return res;
}

std::vector<TrendStats> alpha_trends(const SweepResult& result) {
  std::map<std::pair<Family, double>, std::vector<std::pair<double, double>>> curves;
  for (const auto& g : result.summary) curves[{g.family, g.beta}].emplace_back(g.alpha, g.mean);
  std::vector<TrendStats> out;
  for (auto& [key, pts] : curves) {
    std::vector<double> a, m;
    for (auto& [alpha, mean] : pts) {
      a.push_back(alpha);
      m.push_back(mean);
    }
    TrendStats s;
    s.family = key.first;
    s.beta = key.second;
    s.spearman = guarded([&] { return spearman(a, m); });
    s.range = *std::max_element(m.begin(), m.end()) - *std::min_element(m.begin(), m.end());
    out.push_back(s);
  }
  return out;
}

SweepConfig synthetic_sweep_defaults() {
  SweepConfig cfg;
  cfg.betas = {1.0};
  cfg.trials = 50;
  cfg.hidden = 32;
  cfg.train.lr = 0.05;
  cfg.train.epochs = 50;
  cfg.train.weight_decay = 5e-4;
  cfg.train_count = 80;  // 20 labelled nodes per class
  return cfg;
}

Graph structural_template(std::uint64_t seed) {
  SyntheticConfig sc;
  sc.num_hubs = 2;
  sc.one_hot_dim = 2;
  sc.seed = seed;
  return generate_hub_periphery(sc).graph;
}

std::vector<StructuralRow> run_structural(const Graph& templ, const StructuralRunConfig& cfg) {
  if (cfg.trials < 1) throw ValidationError("structural: trials must be >= 1");
  std::vector<StructuralRow> rows;
  for (Family f : cfg.families) {
    for (double a : cfg.alphas) {
      StructuralExperimentConfig sc;
      sc.params = ConvParams{a, cfg.beta, f};
      sc.sigma = cfg.sigma;
      sc.trials = cfg.trials;
      sc.seed = cfg.seed;
      sc.delta = cfg.delta;
      const auto res = structural_distance_experiment(templ, sc);
      for (const auto& c : res.classes) rows.push_back({f, a, cfg.beta, c});
    }
  }
  return rows;
}

GeometryReport geometry_diagnostics(const Graph& graph, const Matrix& features, const Matrix& embeddings,
                                    std::size_t gw_subsample, std::uint64_t seed) {
  if (features.rows() != graph.num_nodes() || embeddings.rows() != graph.num_nodes())
    throw ValidationError("geometry: row counts do not match the graph");
  GeometryReport rep;
  std::vector<double> degrees(graph.num_nodes());
  for (NodeId u = 0; u < graph.num_nodes(); ++u) degrees[u] = graph.degree(u);
  rep.norm_profile = norm_degree_profile(embeddings, degrees);

  const DistanceMatrix dg = graph_distance(graph);
  const DistanceMatrix de = pairwise_euclidean(embeddings);
  const DistanceMatrix df = pairwise_euclidean(features);
  rep.spearman_graph_embedding = guarded([&] { return distance_spearman(dg, de, 1'000'000, seed); });
  rep.spearman_feature_embedding = guarded([&] { return distance_spearman(df, de, 1'000'000, seed); });
  GWConfig gw;
  if (gw_subsample > 0) gw.subsample = gw_subsample;
  gw.seed = seed;
  rep.gw_graph_embedding = gromov_wasserstein(dg, de, gw).value;
  rep.gw_feature_embedding = gromov_wasserstein(df, de, gw).value;

  rep.curvature_original_mean = kNaN;
  rep.curvature_reconstructed_mean = kNaN;
  rep.curvature_spearman = kNaN;
  if (graph.num_edges() > 0) {
    rep.curvature_original = forman_curvature(graph);
    const Graph recon = reconstruct_graph(embeddings, graph.num_edges());
    rep.curvature_reconstructed = forman_curvature(recon);
    rep.curvature_original_mean = rep.curvature_original.mean;
    rep.curvature_reconstructed_mean = rep.curvature_reconstructed.mean;
    std::vector<double> rescored;
    for (const auto& e : rep.curvature_original.edges) rescored.push_back(forman_pair_curvature(recon, e.u, e.v));
    rep.curvature_spearman = guarded([&] { return spearman(rep.curvature_original.curvature, rescored); });
  }
  return rep;
}

GeometryReport run_geometry(const DatasetBundle& bundle, const GeometryConfig& cfg,
                            const std::filesystem::path& out_dir) {
  validate_bundle(bundle);
  std::optional<SplitSpec> split = bundle.split;
  if (cfg.train_count)
    split = random_split(bundle.graph.num_nodes(), *cfg.train_count, cfg.split_seed);
  else if (!split) {
    auto tc = default_train_count(bundle.name);
    if (!tc) throw ValidationError("geometry: dataset '" + bundle.name + "' has no split; pass a train count");
    split = random_split(bundle.graph.num_nodes(), *tc, cfg.split_seed);
  }
  const auto op = build_operator(bundle.graph, cfg.params);
  const auto trained = train(bundle, *split, op, cfg.train, cfg.hidden);
  GeometryReport rep =
      geometry_diagnostics(bundle.graph, bundle.features, trained.embeddings, cfg.gw_subsample, cfg.split_seed);
  rep.test_accuracy = trained.test_accuracy;

  const std::size_t k = std::min<std::size_t>(2, std::min(trained.embeddings.rows(), trained.embeddings.cols()));
  Matrix coords(trained.embeddings.rows(), 2);
  if (k > 0) {
    const auto pca = pca_project(trained.embeddings, k);
    for (std::size_t r = 0; r < coords.rows(); ++r)
      for (std::size_t c = 0; c < k; ++c) coords(r, c) = pca.coordinates(r, c);
  }
  std::vector<double> degrees(bundle.graph.num_nodes());
  for (NodeId u = 0; u < bundle.graph.num_nodes(); ++u) degrees[u] = bundle.graph.degree(u);
  const std::string tag = std::string(to_string(cfg.params.family)) + " alpha=" + fmt("%g", cfg.params.alpha) +
                          " beta=" + fmt("%g", cfg.params.beta);
  rep.svgs.push_back(out_dir / "pca_by_class.svg");
  emit_svg_scatter(coords, bundle.labels, rep.svgs.back(), bundle.name + " PCA by class, " + tag);
  rep.svgs.push_back(out_dir / "pca_by_degree.svg");
  emit_svg_scatter(coords, degrees, rep.svgs.back(), bundle.name + " PCA by degree, " + tag);
  return rep;
}

Lemma41Check monte_carlo_lemma41(const Graph& graph, const ConvParams& params, const Matrix& w,
                                 std::size_t draws, double delta, std::uint64_t seed, double mean_se_allowance,
                                 double bound_scale, MConstant m_variant) {
  if (draws < 2) throw ValidationError("monte_carlo_lemma41: need at least two draws");
  const auto op = build_operator(graph, params);
  const std::size_t n = graph.num_nodes();
  std::vector<std::vector<double>> samples(n, std::vector<double>(draws));
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix eps(n, w.rows());
  for (std::size_t d = 0; d < draws; ++d) {
    for (double& v : eps.values()) v = normal(rng);
    const Matrix y = matmul(apply(op, eps), w);
    for (std::size_t u = 0; u < n; ++u) {
      double s = 0.0;
      for (double v : y.row(u)) s += v * v;
      samples[u][d] = s;
    }
  }
  const double w_fro = w.frobenius_norm();
  Lemma41Options opts;
  opts.m_variant = m_variant;
  Lemma41Check out;
  for (NodeId u = 0; u < n; ++u) {
    const auto b = lemma41_bounds(graph, u, params.alpha, params.beta, 1.0, w_fro, w_fro, delta, params.family, opts);
    const double mu = bound_scale * b.mu;
    const double hb = bound_scale * b.high_prob_bound;
    const auto& s = samples[u];
    double mean = 0.0;
    for (double v : s) mean += v;
    mean /= static_cast<double>(draws);
    double var = 0.0;
    for (double v : s) var += (v - mean) * (v - mean);
    const double se = std::sqrt(var / static_cast<double>(draws - 1) / static_cast<double>(draws));
    const double q = quantile(s, 1.0 - delta);
    ++out.checks;
    if (mean > mu) ++out.strict_mean_violations;
    if (mean > mu + mean_se_allowance * se) ++out.mean_violations;
    if (q > hb) ++out.quantile_violations;
    if (mu > 0.0) out.worst_mean_ratio = std::max(out.worst_mean_ratio, mean / mu);
    if (hb > 0.0) out.worst_quantile_ratio = std::max(out.worst_quantile_ratio, q / hb);
  }
  return out;
}

std::vector<BoundsCell> run_bounds(const std::vector<Graph>& graphs, const BoundsConfig& cfg) {
  if (graphs.empty()) throw ValidationError("bounds: no graphs");
  std::vector<BoundsCell> cells;
  for (double a : cfg.alphas) {
    for (double b : cfg.betas) {
      BoundsCell cell;
      cell.alpha = a;
      cell.beta = b;
      cell.lemma31_worst_slack = std::numeric_limits<double>::infinity();
      for (std::size_t gi = 0; gi < graphs.size(); ++gi) {
        const Graph& g = graphs[gi];
        std::mt19937_64 rng(mix_seed(cfg.seed, gi));
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        Matrix z(g.num_nodes(), cfg.feature_dim);
        for (double& v : z.values()) v = unit(rng);
        const auto rep = check_lemma31(g, a, b, z, cfg.m_variant, cfg.bound_scale);
        cell.lemma31_checks += rep.empirical_norm.size();
        cell.lemma31_violations += rep.violations();
        cell.lemma31_worst_slack = std::min(cell.lemma31_worst_slack, rep.worst_slack());

        const Matrix w = init_model(cfg.feature_dim, cfg.out_dim, 2, mix_seed(cfg.seed, 100'000 + gi)).w1;
        for (Family f : cfg.families) {
          const auto mc = monte_carlo_lemma41(g, ConvParams{a, b, f}, w, cfg.draws, cfg.delta,
                                              mix_seed(cfg.seed, 200'000 + gi), cfg.mean_se_allowance,
                                              cfg.bound_scale, cfg.m_variant);
          cell.lemma41_checks += mc.checks;
          cell.lemma41_mean_violations += mc.mean_violations;
          cell.lemma41_quantile_violations += mc.quantile_violations;
          cell.lemma41_worst_mean_ratio = std::max(cell.lemma41_worst_mean_ratio, mc.worst_mean_ratio);
          cell.lemma41_worst_quantile_ratio = std::max(cell.lemma41_worst_quantile_ratio, mc.worst_quantile_ratio);
        }
      }
      cells.push_back(cell);
    }
  }
  return cells;
}

bool any_violation(const std::vector<BoundsCell>& cells) {
  return std::any_of(cells.begin(), cells.end(), [](const BoundsCell& c) {
    return c.lemma31_violations > 0 || c.lemma41_mean_violations > 0 || c.lemma41_quantile_violations > 0;
  });
}

// ---------------------------------------------------------------------------
// SVG

namespace {

const char* const kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                                "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

std::string ramp_color(double t) {
  // Piecewise-linear approximation of the viridis map.
  static const double stops[][3] = {{68, 1, 84}, {59, 82, 139}, {33, 145, 140}, {94, 201, 98}, {253, 231, 37}};
  t = std::clamp(std::isfinite(t) ? t : 0.0, 0.0, 1.0);
  const double pos = t * 4.0;
  const int i = std::min(3, static_cast<int>(pos));
  const double f = pos - i;
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", static_cast<int>(std::lround(stops[i][0] + f * (stops[i + 1][0] - stops[i][0]))),
                static_cast<int>(std::lround(stops[i][1] + f * (stops[i + 1][1] - stops[i][1]))),
                static_cast<int>(std::lround(stops[i][2] + f * (stops[i + 1][2] - stops[i][2]))));
  return buf;
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

void emit_svg_scatter(const Matrix& points, const PointColors& colors, const std::filesystem::path& path,
                      const std::string& title) {
  if (points.rows() > 0 && points.cols() != 2) throw ValidationError("emit_svg_scatter: points must be n x 2");
  if (!points.all_finite()) throw ValidationError("emit_svg_scatter: non-finite coordinates");
  const std::size_t n = points.rows();
  const std::size_t ncolors = std::visit([](const auto& v) { return v.size(); }, colors);
  if (ncolors != n) throw ValidationError("emit_svg_scatter: one colour value per point required");

  constexpr double width = 640, height = 480, left = 60, right = 150, top = 40, bottom = 50;
  double xmin = 0, xmax = 1, ymin = 0, ymax = 1;
  if (n > 0) {
    xmin = xmax = points(0, 0);
    ymin = ymax = points(0, 1);
    for (std::size_t i = 1; i < n; ++i) {
      xmin = std::min(xmin, points(i, 0));
      xmax = std::max(xmax, points(i, 0));
      ymin = std::min(ymin, points(i, 1));
      ymax = std::max(ymax, points(i, 1));
    }
    if (xmax - xmin < 1e-12) xmin -= 0.5, xmax += 0.5;
    if (ymax - ymin < 1e-12) ymin -= 0.5, ymax += 0.5;
  }
  const double pw = width - left - right, ph = height - top - bottom;
  auto sx = [&](double x) { return left + (x - xmin) / (xmax - xmin) * pw; };
  auto sy = [&](double y) { return top + ph - (y - ymin) / (ymax - ymin) * ph; };

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (!title.empty())
    svg << "<text x=\"" << width / 2 << "\" y=\"22\" text-anchor=\"middle\" font-family=\"sans-serif\" "
        << "font-size=\"14\">" << xml_escape(title) << "</text>\n";
  svg << "<g id=\"axes\" stroke=\"black\" stroke-width=\"1\">\n"
      << "<line x1=\"" << left << "\" y1=\"" << top + ph << "\" x2=\"" << left + pw << "\" y2=\"" << top + ph
      << "\"/>\n"
      << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\"" << top + ph << "\"/>\n"
      << "</g>\n";
  svg << "<g font-family=\"sans-serif\" font-size=\"10\">\n"
      << "<text x=\"" << left << "\" y=\"" << top + ph + 15 << "\" text-anchor=\"middle\">" << fmt("%.3g", xmin)
      << "</text>\n"
      << "<text x=\"" << left + pw << "\" y=\"" << top + ph + 15 << "\" text-anchor=\"middle\">"
      << fmt("%.3g", xmax) << "</text>\n"
      << "<text x=\"" << left - 5 << "\" y=\"" << top + ph << "\" text-anchor=\"end\">" << fmt("%.3g", ymin)
      << "</text>\n"
      << "<text x=\"" << left - 5 << "\" y=\"" << top + 4 << "\" text-anchor=\"end\">" << fmt("%.3g", ymax)
      << "</text>\n"
      << "<text x=\"" << left + pw / 2 << "\" y=\"" << height - 12 << "\" text-anchor=\"middle\">PC1</text>\n"
      << "<text x=\"15\" y=\"" << top + ph / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 15 "
      << top + ph / 2 << ")\">PC2</text>\n"
      << "</g>\n";

  std::vector<std::string> fill(n);
  std::ostringstream legend;
  const double lx = left + pw + 20;
  legend << "<g id=\"legend\" font-family=\"sans-serif\" font-size=\"11\">\n";
  if (const auto* labels = std::get_if<std::vector<int>>(&colors)) {
    std::vector<int> distinct(labels->begin(), labels->end());
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    for (std::size_t i = 0; i < n; ++i) {
      const auto pos = std::lower_bound(distinct.begin(), distinct.end(), (*labels)[i]) - distinct.begin();
      fill[i] = kPalette[pos % 10];
    }
    for (std::size_t k = 0; k < distinct.size(); ++k) {
      const double y = top + 10 + 18.0 * static_cast<double>(k);
      legend << "<rect x=\"" << lx << "\" y=\"" << y - 8 << "\" width=\"10\" height=\"10\" fill=\"" << kPalette[k % 10]
             << "\"/><text x=\"" << lx + 15 << "\" y=\"" << y + 1 << "\">class " << distinct[k] << "</text>\n";
    }
  } else {
    const auto& values = std::get<std::vector<double>>(colors);
    double vmin = 0.0, vmax = 1.0;
    if (!values.empty()) {
      vmin = *std::min_element(values.begin(), values.end());
      vmax = *std::max_element(values.begin(), values.end());
    }
    const double span = vmax - vmin;
    for (std::size_t i = 0; i < n; ++i) fill[i] = ramp_color(span > 0.0 ? (values[i] - vmin) / span : 0.0);
    legend << "<defs><linearGradient id=\"ramp\" x1=\"0\" y1=\"1\" x2=\"0\" y2=\"0\">\n";
    for (int s = 0; s <= 4; ++s)
      legend << "<stop offset=\"" << s * 25 << "%\" stop-color=\"" << ramp_color(s / 4.0) << "\"/>\n";
    legend << "</linearGradient></defs>\n"
           << "<rect x=\"" << lx << "\" y=\"" << top << "\" width=\"14\" height=\"" << ph / 2
           << "\" fill=\"url(#ramp)\"/>\n"
           << "<text x=\"" << lx + 20 << "\" y=\"" << top + 8 << "\">" << fmt("%.4g", vmax) << "</text>\n"
           << "<text x=\"" << lx + 20 << "\" y=\"" << top + ph / 2 << "\">" << fmt("%.4g", vmin) << "</text>\n";
  }
  legend << "</g>\n";

  svg << "<g id=\"points\" fill-opacity=\"0.8\">\n";
  for (std::size_t i = 0; i < n; ++i)
    svg << "<circle cx=\"" << fmt("%.2f", sx(points(i, 0))) << "\" cy=\"" << fmt("%.2f", sy(points(i, 1)))
        << "\" r=\"3\" fill=\"" << fill[i] << "\"/>\n";
  svg << "</g>\n" << legend.str() << "</svg>\n";

  auto out = open_out(path);
  out << svg.str();
  if (!out) throw LoadError("cannot write " + path.string());
}

// ---------------------------------------------------------------------------
// Writers

void write_results_csv(const std::filesystem::path& path, const std::vector<TrialRecord>& records) {
  auto out = open_out(path);
  out << "family,alpha,beta,trial,accuracy\n";
  for (const auto& r : records)
    out << to_string(r.family) << ',' << fmt("%.10g", r.alpha) << ',' << fmt("%.10g", r.beta) << ',' << r.trial
        << ',' << fmt("%.10g", r.accuracy) << '\n';
  if (!out) throw LoadError("cannot write " + path.string());
}

void write_summary_json(const std::filesystem::path& path, const SweepResult& result, const std::string& dataset,
                        const SweepConfig& cfg) {
  nlohmann::json j;
  j["dataset"] = dataset;
  j["trials"] = cfg.trials;
  j["seed"] = cfg.seed;
  j["hidden"] = cfg.hidden;
  j["lr"] = cfg.train.lr;
  j["epochs"] = cfg.train.epochs;
  j["weight_decay"] = cfg.train.weight_decay;
  if (cfg.train_count) j["train_count"] = *cfg.train_count;
  j["grid"] = nlohmann::json::array();
  for (const auto& g : result.summary)
    j["grid"].push_back({{"family", to_string(g.family)},
                         {"alpha", g.alpha},
                         {"beta", g.beta},
                         {"mean", g.mean},
                         {"sd", g.sd},
                         {"trials", g.accuracies.size()}});
  j["trends"] = nlohmann::json::array();
  for (const auto& t : alpha_trends(result))
    j["trends"].push_back({{"family", to_string(t.family)},
                           {"beta", t.beta},
                           {"spearman_alpha_accuracy", json_number(t.spearman)},
                           {"range", t.range}});
  auto out = open_out(path);
  out << j.dump(2) << '\n';
}

void write_structural_csv(const std::filesystem::path& path, const std::vector<StructuralRow>& rows) {
  auto out = open_out(path);
  out << "family,alpha,beta,degree_class,num_nodes,mean_distance,mean_sq_distance,q10,q50,q90,max_bound,"
         "bound_violations\n";
  for (const auto& r : rows)
    out << to_string(r.family) << ',' << fmt("%.10g", r.alpha) << ',' << fmt("%.10g", r.beta) << ','
        << degree_class_label(r.stats.degree_class) << ',' << r.stats.num_nodes << ','
        << fmt("%.10g", r.stats.mean_distance) << ',' << fmt("%.10g", r.stats.mean_sq_distance) << ','
        << fmt("%.10g", r.stats.q10) << ',' << fmt("%.10g", r.stats.q50) << ',' << fmt("%.10g", r.stats.q90) << ','
        << fmt("%.10g", r.stats.max_bound) << ',' << r.stats.bound_violations << '\n';
  if (!out) throw LoadError("cannot write " + path.string());
}

void write_geometry_json(const std::filesystem::path& path, const GeometryReport& report, const std::string& dataset,
                         const ConvParams& params) {
  nlohmann::json j;
  j["dataset"] = dataset;
  j["family"] = to_string(params.family);
  j["alpha"] = params.alpha;
  j["beta"] = params.beta;
  j["test_accuracy"] = report.test_accuracy;
  j["diagnostics"] = {
      {"degree_norm_spearman", json_number(report.norm_profile.degree_norm_spearman)},
      {"spearman_graph_embedding", json_number(report.spearman_graph_embedding)},
      {"spearman_feature_embedding", json_number(report.spearman_feature_embedding)},
      {"gw_graph_embedding", json_number(report.gw_graph_embedding)},
      {"gw_feature_embedding", json_number(report.gw_feature_embedding)},
      {"curvature_original_mean", json_number(report.curvature_original_mean)},
      {"curvature_reconstructed_mean", json_number(report.curvature_reconstructed_mean)},
      {"curvature_spearman", json_number(report.curvature_spearman)},
  };
  j["curvature"] = {{"original_sd", json_number(report.curvature_original.sd)},
                    {"reconstructed_sd", json_number(report.curvature_reconstructed.sd)}};
  j["norm_degree_profile"] = nlohmann::json::array();
  for (const auto& b : report.norm_profile.buckets)
    j["norm_degree_profile"].push_back({{"degree_class", degree_class_label(b.degree_class)},
                                        {"count", b.count},
                                        {"mean_norm", b.mean_norm},
                                        {"q10", b.q10},
                                        {"q50", b.q50},
                                        {"q90", b.q90}});
  j["svgs"] = nlohmann::json::array();
  for (const auto& p : report.svgs) j["svgs"].push_back(p.filename().string());
  auto out = open_out(path);
  out << j.dump(2) << '\n';
}

void write_bounds_json(const std::filesystem::path& path, const std::vector<BoundsCell>& cells,
                       const BoundsConfig& cfg) {
  nlohmann::json j;
  j["m_constant"] = to_string(cfg.m_variant);
  j["draws"] = cfg.draws;
  j["delta"] = cfg.delta;
  j["bound_scale"] = cfg.bound_scale;
  j["violation"] = any_violation(cells);
  j["cells"] = nlohmann::json::array();
  for (const auto& c : cells)
    j["cells"].push_back({{"alpha", c.alpha},
                          {"beta", c.beta},
                          {"lemma31_checks", c.lemma31_checks},
                          {"lemma31_violations", c.lemma31_violations},
                          {"lemma31_worst_slack", json_number(c.lemma31_worst_slack)},
                          {"lemma41_checks", c.lemma41_checks},
                          {"lemma41_mean_violations", c.lemma41_mean_violations},
                          {"lemma41_quantile_violations", c.lemma41_quantile_violations},
                          {"lemma41_worst_mean_ratio", c.lemma41_worst_mean_ratio},
                          {"lemma41_worst_quantile_ratio", c.lemma41_worst_quantile_ratio}});
  auto out = open_out(path);
  out << j.dump(2) << '\n';
}

}  // namespace gcngeom
