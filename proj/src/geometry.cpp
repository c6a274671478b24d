#include "gcngeom/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "gcngeom/error.hpp"
#include "gcngeom/gcn.hpp"
#include "gcngeom/generators.hpp"
#include "gcngeom/metrics.hpp"
#include "gcngeom/random.hpp"

namespace gcngeom {

namespace {

struct NodeStats {
  double aug = 0.0;
  double delta_bar = 0.0;
  double delta_sq_bar = 0.0;
};

NodeStats node_stats(const Graph& graph, NodeId u, double beta) {
  NodeStats s;
  const double du = graph.degree(u);
  s.aug = du + beta;
  if (s.aug <= 0.0) return s;
  auto nbrs = graph.neighbors(u);
  auto ws = graph.weights(u);
  for (std::size_t k = 0; k < nbrs.size(); ++k) {
    const double diff = graph.degree(nbrs[k]) - du;
    s.delta_bar += ws[k] * diff;
    s.delta_sq_bar += ws[k] * diff * diff;
  }
  s.delta_bar /= s.aug;
  s.delta_sq_bar /= s.aug;
  return s;
}

double powd(double base, double exponent) {
  if (exponent == 0.0) return 1.0;
  return std::pow(base, exponent);
}

}  // namespace

TopologyStats topology_stats(const Graph& graph, double beta) {
  if (!(beta >= 0.0)) throw ValidationError("topology_stats: beta must be >= 0");
  const std::size_t n = graph.num_nodes();
  TopologyStats t;
  t.delta_bar.resize(n);
  t.delta_sq_bar.resize(n);
  t.degree = graph.degrees();
  t.aug_degree.resize(n);
  for (NodeId u = 0; u < n; ++u) {
    auto s = node_stats(graph, u, beta);
    t.delta_bar[u] = s.delta_bar;
    t.delta_sq_bar[u] = s.delta_sq_bar;
    t.aug_degree[u] = s.aug;
  }
  return t;
}

const char* to_string(MConstant m) {
  switch (m) {
    case MConstant::Conservative: return "conservative";
    case MConstant::Stated: return "stated";
    case MConstant::Appendix: return "appendix";
  }
  return "?";
}

double m_constant(double d_max, double alpha, double beta, MConstant variant) {
  switch (variant) {
    case MConstant::Conservative: return std::pow((d_max + beta) / (beta + 1.0), 2.0 + alpha);
    case MConstant::Stated: return std::pow((d_max + beta) / (beta + 1.0), 2.0);
    case MConstant::Appendix: return std::pow(d_max + beta, 2.0 + alpha);
  }
  return 0.0;
}

std::vector<double> lemma31_bound(const Graph& graph, double alpha, double beta, double z_norm_max,
                                  MConstant variant) {
  ConvParams{alpha, beta, Family::Symmetric}.validate();
  const double m = m_constant(graph.max_degree(), alpha, beta, variant);
  std::vector<double> bound(graph.num_nodes(), 0.0);
  for (NodeId u = 0; u < graph.num_nodes(); ++u) {
    auto s = node_stats(graph, u, beta);
    if (s.aug <= 0.0) continue;  // empty row of S
    const double lead = powd(s.aug, 1.0 - 2.0 * alpha);
    const double first = alpha * s.delta_bar / powd(s.aug, 2.0 * alpha);
    const double second = alpha * (alpha + 1.0) * m / 2.0 * s.delta_sq_bar / powd(s.aug, 1.0 + 2.0 * alpha);
    bound[u] = z_norm_max * (lead - first + second);
  }
  return bound;
}

std::size_t BoundReport::violations() const {
  return static_cast<std::size_t>(std::count(satisfied.begin(), satisfied.end(), false));
}

double BoundReport::worst_slack() const {
  return slack.empty() ? 0.0 : *std::min_element(slack.begin(), slack.end());
}

BoundReport check_lemma31(const Graph& graph, double alpha, double beta, const Matrix& z, MConstant variant,
                          double bound_scale) {
  if (z.rows() != graph.num_nodes()) throw ValidationError("check_lemma31: Z rows != num_nodes");
  const Matrix sz = apply(build_symmetric(graph, alpha, beta), z);
  BoundReport r;
  r.bound = lemma31_bound(graph, alpha, beta, z.max_row_norm(), variant);
  const std::size_t n = graph.num_nodes();
  r.empirical_norm.resize(n);
  r.satisfied.resize(n);
  r.slack.resize(n);
  for (std::size_t u = 0; u < n; ++u) {
    r.bound[u] *= bound_scale;
    r.empirical_norm[u] = sz.row_norm(u);
    r.slack[u] = r.bound[u] - r.empirical_norm[u];
    r.satisfied[u] = r.empirical_norm[u] <= r.bound[u] + kBoundTolerance;
  }
  return r;
}

Lemma41Result lemma41_bounds(const Graph& graph, NodeId u, double alpha, double beta, double sigma,
                             double w_norm, double w_fro, double delta, Family family,
                             const Lemma41Options& options) {
  ConvParams{alpha, beta, family}.validate();
  if (!(delta > 0.0 && delta < 1.0)) throw ValidationError("lemma41_bounds: delta must lie in (0, 1)");
  if (u >= graph.num_nodes()) throw ValidationError("lemma41_bounds: node out of range");
  const auto s = node_stats(graph, u, beta);
  if (s.aug <= 0.0) return {};
  const double scale = sigma * sigma * w_fro * w_fro;
  const double log_term = std::log(1.0 / delta);
  auto nbrs = graph.neighbors(u);
  auto ws = graph.weights(u);
  Lemma41Result r;

  if (family == Family::Symmetric) {
    const double m = m_constant(graph.max_degree(), alpha, beta, options.m_variant);
    const double a = s.aug;
    r.mu = scale * (powd(a, 2.0 - 4.0 * alpha) + 2.0 * alpha * std::abs(s.delta_bar) * powd(a, -4.0 * alpha) +
                    alpha * (2.0 * alpha + 1.0) * m * s.delta_sq_bar * powd(a, -1.0 - 4.0 * alpha));
    const double dev = 2.0 * std::sqrt(2.0) * sigma * w_norm * powd(a, 1.0 - 2.0 * alpha) *
                       std::sqrt(1.0 + 2.0 * alpha * std::abs(s.delta_bar) / a + alpha * (2.0 * alpha + 1.0) * m) *
                       log_term;
    r.high_prob_bound = r.mu + dev;
    const double fu = powd(a, -alpha);
    double sum_sq = beta * beta * fu * fu * fu * fu;
    for (std::size_t k = 0; k < nbrs.size(); ++k) {
      const double suv = ws[k] * fu * powd(graph.degree(nbrs[k]) + beta, -alpha);
      sum_sq += suv * suv;
    }
    r.exact_mean = scale * sum_sq;
    return r;
  }

  // Row-normalized: s_uv = w_uv / sum_v w_uv, w_uv = A_uv (d_v + beta)^-alpha, self weight beta.
  double w_self = beta * powd(s.aug, -alpha);
  double w_sum = w_self, w_max = w_self, w_sq = w_self * w_self, display_sum = powd(s.aug, -2.0 * alpha);
  for (std::size_t k = 0; k < nbrs.size(); ++k) {
    const double c = powd(graph.degree(nbrs[k]) + beta, -alpha);
    const double w = ws[k] * c;
    w_sum += w;
    w_max = std::max(w_max, w);
    w_sq += w * w;
    display_sum += c * c;
  }
  if (!(w_sum > 0.0)) throw DivisionByZeroError("lemma41_bounds: row " + std::to_string(u) + " sums to zero");
  r.exact_mean = scale * w_sq / (w_sum * w_sum);
  r.mu = options.row_mean == RowMeanBound::Holder ? scale * w_max / w_sum
                                                  : scale / display_sum / (1.0 + beta);
  r.high_prob_bound = r.mu + 2.0 * std::sqrt(2.0) * std::sqrt(r.exact_mean) * log_term;
  return r;
}

double toy2_leading_term(double d_u, double d_u2, double alpha, double beta) {
  const double e = 1.0 - 2.0 * alpha;
  return powd(d_u + beta, e) - powd(d_u2 + beta, e);
}

int degree_class(double degree) {
  const auto d = static_cast<long long>(std::llround(degree));
  if (d <= 0) return 0;
  int cls = 1;
  long long upper = 1;
  while (d > upper) {
    upper *= 2;
    ++cls;
  }
  return cls;
}

std::string degree_class_label(int cls) {
  if (cls <= 0) return "0";
  if (cls == 1) return "1";
  if (cls == 2) return "2";
  const long long hi = 1LL << (cls - 1);
  return std::to_string(hi / 2 + 1) + "-" + std::to_string(hi);
}

StructuralExperimentResult structural_distance_experiment(const Graph& templ,
                                                          const StructuralExperimentConfig& cfg) {
  if (cfg.trials < 1) throw ValidationError("structural experiment: trials must be >= 1");
  cfg.params.validate();
  const std::size_t n = templ.num_nodes();
  StructuralExperimentResult res;
  res.node_mean_sq_distance.assign(n, 0.0);
  res.node_bound.assign(n, 0.0);
  std::vector<std::vector<double>> node_dist(n);

  for (std::size_t t = 0; t < cfg.trials; ++t) {
    auto rep = generate_structural_replicas(templ, mix_seed(cfg.seed, t), cfg.sigma, cfg.feature_dim);
    const SparseOperator s = build_operator(rep.graph, cfg.params);
    const GCNModel model =
        init_model(cfg.feature_dim, cfg.hidden_dim, cfg.num_classes, mix_seed(cfg.seed, 1'000'000 + t));
    const Matrix h = forward(model, s, rep.combined_features()).embeddings;
    const double w_fro = model.w1.frobenius_norm();
    for (NodeId u = 0; u < n; ++u) {
      double sq = 0.0;
      auto a = h.row(u);
      auto b = h.row(rep.phi[u]);
      for (std::size_t j = 0; j < a.size(); ++j) sq += (a[j] - b[j]) * (a[j] - b[j]);
      node_dist[u].push_back(std::sqrt(sq));
      res.node_mean_sq_distance[u] += sq / static_cast<double>(cfg.trials);
      res.max_distance = std::max(res.max_distance, std::sqrt(sq));
      res.node_bound[u] += lemma41_bounds(templ, u, cfg.params.alpha, cfg.params.beta, cfg.sigma, w_fro, w_fro,
                                          cfg.delta, cfg.params.family)
                               .high_prob_bound /
                           static_cast<double>(cfg.trials);
    }
  }

  std::map<int, std::vector<NodeId>> by_class;
  for (NodeId u = 0; u < n; ++u) by_class[degree_class(templ.degree(u))].push_back(u);
  for (const auto& [cls, nodes] : by_class) {
    DistanceClassStats st;
    st.degree_class = cls;
    st.num_nodes = nodes.size();
    std::vector<double> all;
    for (NodeId u : nodes) {
      all.insert(all.end(), node_dist[u].begin(), node_dist[u].end());
      st.mean_sq_distance += res.node_mean_sq_distance[u] / static_cast<double>(nodes.size());
      st.max_bound = std::max(st.max_bound, res.node_bound[u]);
      if (res.node_mean_sq_distance[u] > res.node_bound[u] + kBoundTolerance) ++st.bound_violations;
    }
    double sum = 0.0;
    for (double d : all) sum += d;
    st.mean_distance = sum / static_cast<double>(all.size());
    st.q10 = quantile(all, 0.1);
    st.q50 = quantile(all, 0.5);
    st.q90 = quantile(all, 0.9);
    res.classes.push_back(st);
  }
  return res;
}

}  // namespace gcngeom
