// Runs every primary acceptance criterion at its stated tolerance and runtime
// limit. Prints one PASS/FAIL line per criterion; exits 1 if any fails.
// Optional arguments select criteria by number.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "gcngeom/experiments.hpp"
#include "oracles.hpp"

using namespace gcngeom;

namespace {

struct Outcome {
  bool ok = false;
  std::string detail;
};

struct Criterion {
  int id;
  const char* name;
  double limit_seconds;
  std::function<Outcome()> run;
};

std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

Outcome operator_correctness() {
  std::mt19937_64 rng(101);
  double worst_gcn = 0.0, worst_row = 0.0;
  bool gin_exact = true;
  for (int rep = 0; rep < 100; ++rep) {
    Graph g = oracle::random_graph(1 + rng() % 30, 0.05 + 0.4 * (rng() % 100) / 100.0, rng);
    auto a = oracle::adjacency(g);
    Matrix s = build_symmetric(g, 0.5, 1.0).to_dense();
    worst_gcn = std::max(worst_gcn, oracle::max_abs_diff(oracle::symmetric_operator(a, 0.5, 1.0), s));

    Matrix gin = build_symmetric(g, 0.0, 1.0).to_dense();
    Matrix expect = g.to_dense();
    for (std::size_t i = 0; i < expect.rows(); ++i) expect(i, i) += 1.0;
    gin_exact = gin_exact && gin == expect;

    for (double alpha : {0.0, 0.5, 1.0}) {
      Matrix r = build_row_normalized(g, alpha, 1.0).to_dense();
      for (std::size_t i = 0; i < r.rows(); ++i) {
        double sum = 0.0;
        for (std::size_t j = 0; j < r.cols(); ++j) sum += r(i, j);
        worst_row = std::max(worst_row, std::abs(sum - 1.0));
      }
    }
  }
  return {worst_gcn <= 1e-12 && gin_exact && worst_row <= 1e-12,
          "max|S-oracle|=" + fmt("%.2e", worst_gcn) + " A+I exact=" + (gin_exact ? "yes" : "no") +
              " max|rowsum-1|=" + fmt("%.2e", worst_row)};
}

Outcome gradient_suite() {
  std::mt19937_64 rng(202);
  double worst = 0.0;
  for (Family f : {Family::Symmetric, Family::RowNormalized})
    for (int rep = 0; rep < 20; ++rep) {
      auto in = oracle::random_grad_instance(rng, f);
      worst = std::max(worst, oracle::gradient_max_rel_error(in.model, in.op, in.x, in.labels, in.mask));
    }
  return {worst <= 1e-4, "max relative error " + fmt("%.2e", worst) + " over 2x20 instances"};
}

Outcome norm_bound() {
  std::mt19937_64 rng(303);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::size_t checks = 0, violations = 0;
  double worst = std::numeric_limits<double>::infinity();
  for (int rep = 0; rep < 200; ++rep) {
    Graph g = random_connected_graph(2 + rng() % 29, 0.05 + 0.45 * unit(rng), rng());
    Matrix z = oracle::random_matrix(g.num_nodes(), 1 + rng() % 8, rng, 0.0, 1.0);
    for (double alpha : {0.0, 0.25, 0.5, 0.75, 1.0})
      for (double beta : {0.0, 1.0, 2.0}) {
        BoundReport r = check_lemma31(g, alpha, beta, z, MConstant::Conservative);
        checks += r.bound.size();
        violations += r.violations();
        worst = std::min(worst, r.worst_slack());
      }
  }
  return {violations == 0, std::to_string(violations) + " violations in " + std::to_string(checks) +
                               " node checks, worst slack " + fmt("%.3g", worst)};
}

Outcome noise_bound() {
  std::mt19937_64 rng(404);
  std::size_t checks = 0, mean_v = 0, strict_v = 0, quant_v = 0;
  double worst_mean = 0.0, worst_quant = 0.0;
  for (int t = 0; t < 10; ++t) {
    Graph g = random_connected_graph(5 + rng() % 26, 0.2, rng());
    GCNModel m = init_model(8, 4, 2, rng());
    for (Family f : {Family::Symmetric, Family::RowNormalized})
      for (double alpha : {0.0, 0.25, 0.5, 0.75, 1.0})
        for (double beta : {0.0, 1.0, 2.0}) {
          auto c = monte_carlo_lemma41(g, ConvParams{alpha, beta, f}, m.w1, 10000, 0.1, rng());
          checks += c.checks;
          mean_v += c.mean_violations;
          strict_v += c.strict_mean_violations;
          quant_v += c.quantile_violations;
          worst_mean = std::max(worst_mean, c.worst_mean_ratio);
          worst_quant = std::max(worst_quant, c.worst_quantile_ratio);
        }
  }
  return {mean_v == 0 && quant_v == 0,
          std::to_string(checks) + " node checks: mean violations " + std::to_string(mean_v) +
              " (beyond 4 SE; strict count " + std::to_string(strict_v) + ", worst mean/mu " +
              fmt("%.4f", worst_mean) + "), quantile violations " + std::to_string(quant_v) +
              " (worst q/bound " + fmt("%.3f", worst_quant) + ")"};
}

Outcome degree_radius_inversion() {
  double low = 0.0, high = 0.0;
  const int seeds = 20;
  for (int s = 0; s < seeds; ++s) {
    SyntheticConfig cfg;
    cfg.seed = static_cast<std::uint64_t>(s);
    DatasetBundle b = generate_hub_periphery(cfg);
    GCNModel m = init_model(b.features.cols(), 32, 4, static_cast<std::uint64_t>(1000 + s));
    for (double alpha : {0.2, 0.7}) {
      auto op = build_symmetric(b.graph, alpha, 1.0);
      Matrix h = forward(m, op, b.features).embeddings;
      const double rho = norm_degree_profile(h, b.graph.degrees()).degree_norm_spearman;
      (alpha < 0.5 ? low : high) += rho / seeds;
    }
  }
  return {low > 0.3 && high < -0.3,
          "mean Spearman(degree, |H|): alpha=0.2 " + fmt("%+.3f", low) + ", alpha=0.7 " + fmt("%+.3f", high)};
}

Outcome synthetic_noise() {
  SweepConfig cfg = synthetic_sweep_defaults();
  cfg.trials = 50;
  std::string detail;
  bool ok = true;
  for (NoiseMode mode : {NoiseMode::DegreeIncreasing, NoiseMode::DegreeFlipped}) {
    SyntheticConfig base;
    base.noise_mode = mode;
    auto trends = alpha_trends(run_synthetic_sweep(base, cfg));
    double sym_rho = 0.0, sym_range = 0.0, row_range = 0.0;
    for (const auto& t : trends) {
      if (t.family == Family::Symmetric) {
        sym_rho = t.spearman;
        sym_range = t.range;
      } else {
        row_range = t.range;
      }
    }
    const bool trend_ok = mode == NoiseMode::DegreeIncreasing ? sym_rho > 0.7 : sym_rho < -0.7;
    ok = ok && trend_ok && row_range < sym_range;
    detail += std::string(detail.empty() ? "" : "; ") + to_string(mode) + ": sym rho " + fmt("%+.3f", sym_rho) +
              " range " + fmt("%.4f", sym_range) + ", row range " + fmt("%.4f", row_range);
  }
  return {ok, detail};
}

Outcome structural_replicas() {
  Graph templ = structural_template(0);
  StructuralRunConfig zero;
  zero.families = {Family::Symmetric};
  zero.sigma = 0.0;
  double max_zero = 0.0;
  for (double a : zero.alphas) {
    StructuralExperimentConfig sc;
    sc.params = ConvParams{a, zero.beta, Family::Symmetric};
    sc.sigma = 0.0;
    sc.trials = 100;
    max_zero = std::max(max_zero, structural_distance_experiment(templ, sc).max_distance);
  }
  StructuralRunConfig noisy;
  noisy.sigma = 0.1;
  noisy.trials = 100;
  std::size_t violations = 0, rows = 0;
  for (const auto& r : run_structural(templ, noisy)) {
    violations += r.stats.bound_violations;
    ++rows;
  }
  return {max_zero <= 1e-9 && violations == 0,
          "sigma=0 max distance " + fmt("%.2e", max_zero) + "; sigma=0.1 bound violations " +
              std::to_string(violations) + " over " + std::to_string(rows) + " class rows"};
}

Outcome toy_identities() {
  std::mt19937_64 rng(808);
  std::uniform_real_distribution<double> deg(0.0, 100.0), unit(0.0, 1.0);
  double worst_half = 0.0, worst_anti = 0.0;
  for (int rep = 0; rep < 10000; ++rep) {
    const double du = std::floor(deg(rng)), dv = std::floor(deg(rng));
    const double alpha = unit(rng), beta = 0.05 + 3.0 * unit(rng);
    worst_half = std::max(worst_half, std::abs(toy2_leading_term(du, dv, 0.5, beta)));
    worst_anti = std::max(worst_anti,
                          std::abs(toy2_leading_term(du, dv, alpha, beta) + toy2_leading_term(dv, du, alpha, beta)));
  }
  return {worst_half == 0.0 && worst_anti == 0.0,
          "max|term(alpha=0.5)|=" + fmt("%.1e", worst_half) + " max|f(a,b)+f(b,a)|=" + fmt("%.1e", worst_anti)};
}

Outcome gw_axioms() {
  std::mt19937_64 rng(909);
  double worst_self = 0.0, worst_perm = 0.0, worst_marg = 0.0;
  for (int rep = 0; rep < 20; ++rep) {
    DistanceMatrix d = pairwise_euclidean(oracle::random_matrix(15, 1 + rng() % 4, rng));
    std::vector<std::size_t> perm(15);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::shuffle(perm.begin(), perm.end(), rng);
    DistanceMatrix dp(15);
    for (std::size_t i = 0; i < 15; ++i)
      for (std::size_t j = i + 1; j < 15; ++j) dp.set(perm[i], perm[j], d(i, j));
    GWResult self = gromov_wasserstein(d, d);
    GWResult pr = gromov_wasserstein(d, dp);
    worst_self = std::max(worst_self, self.value);
    worst_perm = std::max(worst_perm, pr.value);
    worst_marg = std::max({worst_marg, self.marginal_error, pr.marginal_error});
  }
  double worst_two = 0.0;
  std::uniform_real_distribution<double> len(0.1, 5.0);
  for (int rep = 0; rep < 20; ++rep) {
    const double a = len(rng), b = len(rng);
    DistanceMatrix d1(2), d2(2);
    d1.set(0, 1, a);
    d2.set(0, 1, b);
    GWResult r = gromov_wasserstein(d1, d2);
    worst_two = std::max(worst_two, std::abs(r.value - (a - b) * (a - b) / 2.0));
    worst_marg = std::max(worst_marg, r.marginal_error);
  }
  return {worst_self <= 1e-6 && worst_perm <= 1e-6 && worst_marg <= 1e-6 && worst_two <= 1e-6,
          "gw(D,D)<=" + fmt("%.1e", worst_self) + " gw(D,PDP')<=" + fmt("%.1e", worst_perm) + " marginal<=" +
              fmt("%.1e", worst_marg) + " |2pt-(a-b)^2/2|<=" + fmt("%.1e", worst_two)};
}

Outcome curvature_closed_forms() {
  auto all_equal = [](const Graph& g, double v) {
    for (double c : forman_curvature(g).curvature)
      if (c != v) return false;
    return true;
  };
  bool ok = true;
  for (std::size_t n = 4; n <= 12; ++n) {
    std::vector<std::pair<NodeId, NodeId>> e;
    for (NodeId i = 0; i < n; ++i) e.emplace_back(i, static_cast<NodeId>((i + 1) % n));
    ok = ok && all_equal(build_graph(n, e), 0.0);
  }
  ok = ok && all_equal(build_graph(3, {{0, 1}, {1, 2}, {0, 2}}), 3.0);
  ok = ok && all_equal(build_graph(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}}), -1.0);
  // hypercubes Q_d and complete bipartite K_{d,d} are d-regular and triangle-free
  for (int d = 1; d <= 6; ++d) {
    const NodeId n = NodeId{1} << d;
    std::vector<std::pair<NodeId, NodeId>> cube, kdd;
    for (NodeId u = 0; u < n; ++u)
      for (int b = 0; b < d; ++b)
        if ((u ^ (NodeId{1} << b)) > u) cube.emplace_back(u, u ^ (NodeId{1} << b));
    for (NodeId i = 0; i < static_cast<NodeId>(d); ++i)
      for (NodeId j = 0; j < static_cast<NodeId>(d); ++j) kdd.emplace_back(i, d + j);
    ok = ok && all_equal(build_graph(n, cube), 4.0 - 2.0 * d);
    ok = ok && all_equal(build_graph(2 * static_cast<std::size_t>(d), kdd), 4.0 - 2.0 * d);
  }
  return {ok, ok ? "C_n, K_3, K_1,4, Q_d and K_d,d exact" : "closed form mismatch"};
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> only;
  for (int i = 1; i < argc; ++i) only.insert(std::stoi(argv[i]));

  const std::vector<Criterion> criteria{
      {1, "operator correctness", 5, operator_correctness},
      {2, "gradient suite", 10, gradient_suite},
      {3, "norm bound", 30, norm_bound},
      {4, "noise bound Monte-Carlo", 60, noise_bound},
      {5, "degree-radius inversion", 60, degree_radius_inversion},
      {6, "synthetic noise experiment", 600, synthetic_noise},
      {7, "structural replicas", 300, structural_replicas},
      {8, "toy leading-term identities", 1, toy_identities},
      {9, "GW axioms", 30, gw_axioms},
      {10, "curvature closed forms", 1, curvature_closed_forms},
  };

  bool all_ok = true;
  for (const auto& c : criteria) {
    if (!only.empty() && !only.count(c.id)) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs < c.limit_seconds;
    const bool pass = o.ok && in_time;
    all_ok = all_ok && pass;
    std::printf("%s [%d] %s: %s (%.2f s, limit %.0f s%s)\n", pass ? "PASS" : "FAIL", c.id, c.name,
                o.detail.c_str(), secs, c.limit_seconds, in_time ? "" : ", exceeded");
    std::fflush(stdout);
  }
  return all_ok ? 0 : 1;
}
