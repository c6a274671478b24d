// gcngeom: experiment driver for convolution-family sweeps and geometry checks.
//
//   gcngeom sweep      --dataset DIR | --scenario NAME
//   gcngeom synthetic  [--scenario NAME]
//   gcngeom structural [--dataset DIR]
//   gcngeom geometry   --dataset DIR | --scenario NAME
//   gcngeom bounds     [--dataset DIR]
//
// Exit status: 0 success, 2 validation error, 3 bound violation.

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "gcngeom/error.hpp"
#include "gcngeom/experiments.hpp"
#include "gcngeom/random.hpp"

namespace fs = std::filesystem;
using namespace gcngeom;

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitViolation = 3;

struct CommonOptions {
  std::string dataset;
  std::string scenario;
  std::string family = "both";
  std::vector<double> alphas;
  std::vector<double> betas;
  std::optional<std::size_t> trials;
  std::uint64_t seed = 0;
  std::string out = "out";
  std::optional<double> lr;
  std::optional<std::size_t> epochs;
  std::optional<std::size_t> hidden;
  std::optional<std::size_t> train_count;
  std::optional<double> weight_decay;
  std::size_t workers = 0;
};

void add_common(CLI::App* cmd, CommonOptions& o, bool data_flags = true) {
  if (data_flags) {
    auto* d = cmd->add_option("--dataset", o.dataset, "Interchange dataset directory");
    auto* s = cmd->add_option("--scenario", o.scenario, "Synthetic scenario: uniform, degree_increasing, degree_flipped");
    d->excludes(s);
  }
  cmd->add_option("--family", o.family, "sym, row or both");
  cmd->add_option("--alpha", o.alphas, "Comma-separated alpha values")->delimiter(',');
  cmd->add_option("--beta", o.betas, "Comma-separated beta values")->delimiter(',');
  cmd->add_option("--trials", o.trials, "Number of trials");
  cmd->add_option("--seed", o.seed, "Base seed");
  cmd->add_option("--out", o.out, "Output directory");
  cmd->add_option("--lr", o.lr, "Learning rate");
  cmd->add_option("--epochs", o.epochs, "Training epochs");
  cmd->add_option("--hidden", o.hidden, "Hidden dimension (default 32)");
  cmd->add_option("--train-count", o.train_count, "Training nodes per random split");
  cmd->add_option("--weight-decay", o.weight_decay, "L2 penalty");
  cmd->add_option("--workers", o.workers, "Worker threads (0 = all cores)");
}

std::vector<Family> families_of(const std::string& text) {
  if (text == "both") return {Family::Symmetric, Family::RowNormalized};
  return {parse_family(text)};
}

void apply_train_overrides(const CommonOptions& o, SweepConfig& cfg) {
  if (o.lr) cfg.train.lr = *o.lr;
  if (o.epochs) cfg.train.epochs = *o.epochs;
  if (o.hidden) cfg.hidden = *o.hidden;
  if (o.weight_decay) cfg.train.weight_decay = *o.weight_decay;
  if (o.train_count) cfg.train_count = *o.train_count;
  if (o.trials) cfg.trials = *o.trials;
  if (!o.alphas.empty()) cfg.alphas = o.alphas;
  if (!o.betas.empty()) cfg.betas = o.betas;
  cfg.families = families_of(o.family);
  cfg.seed = o.seed;
  cfg.workers = o.workers;
}

// Mean accuracy against alpha, one colour per (family, beta) curve.
void emit_trend_svg(const SweepResult& res, const fs::path& path, const std::string& title) {
  Matrix pts(res.summary.size(), 2);
  std::vector<int> group;
  std::vector<std::pair<Family, double>> keys;
  for (std::size_t i = 0; i < res.summary.size(); ++i) {
    const auto& g = res.summary[i];
    pts(i, 0) = g.alpha;
    pts(i, 1) = g.mean;
    std::pair<Family, double> key{g.family, g.beta};
    auto it = std::find(keys.begin(), keys.end(), key);
    if (it == keys.end()) it = keys.insert(keys.end(), key);
    group.push_back(static_cast<int>(it - keys.begin()));
  }
  emit_svg_scatter(pts, group, path, title);
}

void write_sweep_outputs(const SweepResult& res, const SweepConfig& cfg, const std::string& name, const fs::path& dir) {
  write_results_csv(dir / "results.csv", res.records);
  write_summary_json(dir / "summary.json", res, name, cfg);
  emit_trend_svg(res, dir / "accuracy_vs_alpha.svg", name + ": mean accuracy vs alpha");
  for (const auto& t : alpha_trends(res))
    std::fprintf(stderr, "%s beta=%g: spearman(alpha, acc)=%.3f range=%.4f\n", to_string(t.family), t.beta,
                 t.spearman, t.range);
}

DatasetBundle scenario_bundle(const std::string& scenario, std::uint64_t seed) {
  SyntheticConfig sc;
  sc.noise_mode = parse_noise_mode(scenario);
  sc.seed = seed;
  return generate_hub_periphery(sc);
}

int cmd_sweep(const CommonOptions& o) {
  if (o.dataset.empty() == o.scenario.empty())
    throw ValidationError("sweep: exactly one of --dataset or --scenario is required");
  SweepConfig cfg;
  if (!o.scenario.empty()) {
    cfg = synthetic_sweep_defaults();
    cfg.betas = {0.0, 1.0};
    cfg.trials = 30;
  }
  apply_train_overrides(o, cfg);
  SweepResult res;
  std::string name;
  if (!o.scenario.empty()) {
    SyntheticConfig sc;
    sc.noise_mode = parse_noise_mode(o.scenario);
    name = std::string("hub_periphery_") + to_string(sc.noise_mode);
    res = run_synthetic_sweep(sc, cfg);
  } else {
    const DatasetBundle bundle = load_dataset(o.dataset);
    name = bundle.name;
    if (!cfg.train_count && !bundle.split) cfg.train_count = default_train_count(bundle.name);
    res = run_sweep(bundle, cfg);
  }
  write_sweep_outputs(res, cfg, name, o.out);
  return 0;
}

int cmd_synthetic(const CommonOptions& o) {
  if (!o.dataset.empty()) throw ValidationError("synthetic: --dataset is not accepted");
  std::vector<std::string> scenarios{"uniform", "degree_increasing", "degree_flipped"};
  if (!o.scenario.empty()) scenarios = {to_string(parse_noise_mode(o.scenario))};
  SweepConfig cfg = synthetic_sweep_defaults();
  apply_train_overrides(o, cfg);
  for (const auto& s : scenarios) {
    SyntheticConfig sc;
    sc.noise_mode = parse_noise_mode(s);
    std::fprintf(stderr, "scenario %s: %zu trials\n", s.c_str(), cfg.trials);
    const auto res = run_synthetic_sweep(sc, cfg);
    write_sweep_outputs(res, cfg, "hub_periphery_" + s, fs::path(o.out) / s);
  }
  return 0;
}

int cmd_structural(const CommonOptions& o, double sigma) {
  StructuralRunConfig cfg;
  if (!o.alphas.empty()) cfg.alphas = o.alphas;
  if (o.betas.size() > 1) throw ValidationError("structural: a single --beta value is expected");
  if (!o.betas.empty()) cfg.beta = o.betas.front();
  if (o.trials) cfg.trials = *o.trials;
  cfg.families = families_of(o.family);
  cfg.seed = o.seed;
  cfg.sigma = sigma;
  const Graph templ = o.dataset.empty() ? structural_template(o.seed) : load_dataset(o.dataset).graph;
  const auto rows = run_structural(templ, cfg);
  write_structural_csv(fs::path(o.out) / "results.csv", rows);

  nlohmann::json j;
  j["trials"] = cfg.trials;
  j["sigma"] = cfg.sigma;
  j["beta"] = cfg.beta;
  j["template_nodes"] = templ.num_nodes();
  std::size_t violations = 0;
  for (const auto& r : rows) violations += r.stats.bound_violations;
  j["bound_violations"] = violations;
  std::ofstream(fs::path(o.out) / "summary.json") << j.dump(2) << '\n';

  // Mean distance of the highest degree class against alpha, per family.
  Matrix pts(0, 2);
  std::vector<int> fam;
  int top = 0;
  for (const auto& r : rows) top = std::max(top, r.stats.degree_class);
  std::vector<std::pair<double, double>> xy;
  for (const auto& r : rows)
    if (r.stats.degree_class == top) {
      xy.emplace_back(r.alpha, r.stats.mean_distance);
      fam.push_back(static_cast<int>(r.family));
    }
  pts = Matrix(xy.size(), 2);
  for (std::size_t i = 0; i < xy.size(); ++i) {
    pts(i, 0) = xy[i].first;
    pts(i, 1) = xy[i].second;
  }
  emit_svg_scatter(pts, fam, fs::path(o.out) / "high_degree_distance.svg",
                   "mean replica distance, degree class " + degree_class_label(top));
  std::fprintf(stderr, "structural: %zu rows, %zu bound violations\n", rows.size(), violations);
  return 0;
}

int cmd_geometry(const CommonOptions& o) {
  if (o.dataset.empty() == o.scenario.empty())
    throw ValidationError("geometry: exactly one of --dataset or --scenario is required");
  GeometryConfig cfg;
  const auto fams = families_of(o.family == "both" ? "sym" : o.family);
  cfg.params.family = fams.front();
  if (o.alphas.size() > 1 || o.betas.size() > 1)
    throw ValidationError("geometry: single --alpha and --beta values are expected");
  if (!o.alphas.empty()) cfg.params.alpha = o.alphas.front();
  if (!o.betas.empty()) cfg.params.beta = o.betas.front();
  cfg.params.validate();
  if (o.lr) cfg.train.lr = *o.lr;
  if (o.epochs) cfg.train.epochs = *o.epochs;
  if (o.hidden) cfg.hidden = *o.hidden;
  if (o.weight_decay) cfg.train.weight_decay = *o.weight_decay;
  cfg.train_count = o.train_count;
  cfg.train.seed = o.seed;
  cfg.split_seed = o.seed ^ 1'000'000;
  DatasetBundle bundle = o.dataset.empty() ? scenario_bundle(o.scenario, o.seed) : load_dataset(o.dataset);
  if (!o.scenario.empty() && !cfg.train_count) cfg.train_count = synthetic_sweep_defaults().train_count;
  const auto rep = run_geometry(bundle, cfg, o.out);
  write_geometry_json(fs::path(o.out) / "summary.json", rep, bundle.name, cfg.params);
  std::fprintf(stderr, "geometry: accuracy %.4f, degree-norm spearman %.3f\n", rep.test_accuracy,
               rep.norm_profile.degree_norm_spearman);
  return 0;
}

int cmd_bounds(const CommonOptions& o, std::size_t num_graphs, std::size_t draws, double bound_scale) {
  BoundsConfig cfg;
  if (!o.alphas.empty()) cfg.alphas = o.alphas;
  if (!o.betas.empty()) cfg.betas = o.betas;
  cfg.families = families_of(o.family);
  cfg.draws = draws;
  cfg.seed = o.seed;
  cfg.bound_scale = bound_scale;
  std::vector<Graph> graphs;
  if (!o.dataset.empty()) {
    graphs.push_back(load_dataset(o.dataset).graph);
  } else {
    for (std::size_t g = 0; g < num_graphs; ++g) {
      const std::size_t n = 5 + mix_seed(o.seed, g) % 26;
      graphs.push_back(random_connected_graph(n, 0.2, mix_seed(o.seed, 1000 + g)));
    }
  }
  const auto cells = run_bounds(graphs, cfg);
  write_bounds_json(fs::path(o.out) / "bounds.json", cells, cfg);
  for (const auto& c : cells)
    std::printf("alpha=%-5g beta=%-4g norm violations=%zu worst_slack=%.4g | noise mean=%zu quantile=%zu "
                "worst_ratio=%.3f/%.3f\n",
                c.alpha, c.beta, c.lemma31_violations, c.lemma31_worst_slack, c.lemma41_mean_violations,
                c.lemma41_quantile_violations, c.lemma41_worst_mean_ratio, c.lemma41_worst_quantile_ratio);
  if (any_violation(cells)) {
    std::fprintf(stderr, "bounds: violation found\n");
    return kExitViolation;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Convolution-family experiments for graph neural networks"};
  app.require_subcommand(1);
  CommonOptions opts;
  double sigma = 0.1;
  std::size_t num_graphs = 50, draws = 2000;
  double bound_scale = 1.0;

  auto* sweep = app.add_subcommand("sweep", "Node-classification accuracy over the (family, alpha, beta) grid");
  add_common(sweep, opts);
  auto* synthetic = app.add_subcommand("synthetic", "Hub-periphery noise scenarios across alpha");
  add_common(synthetic, opts);
  auto* structural = app.add_subcommand("structural", "Distances between structurally equivalent replica nodes");
  add_common(structural, opts);
  structural->add_option("--sigma", sigma, "Feature perturbation scale of the second replica");
  auto* geometry = app.add_subcommand("geometry", "Embedding geometry diagnostics for one trained model");
  add_common(geometry, opts);
  auto* bounds = app.add_subcommand("bounds", "Check the norm and distance bounds; exit 3 on violation");
  add_common(bounds, opts);
  bounds->add_option("--graphs", num_graphs, "Random graphs when no dataset is given");
  bounds->add_option("--draws", draws, "Monte-Carlo draws per node");
  bounds->add_option("--test-scale-bound", bound_scale, "Multiply every bound (harness self-test)")
      ->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitValidation;
  }

  try {
    fs::create_directories(opts.out);
    if (sweep->parsed()) return cmd_sweep(opts);
    if (synthetic->parsed()) return cmd_synthetic(opts);
    if (structural->parsed()) return cmd_structural(opts, sigma);
    if (geometry->parsed()) return cmd_geometry(opts);
    if (bounds->parsed()) return cmd_bounds(opts, num_graphs, draws, bound_scale);
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const LoadError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "fatal: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
