#include "gcngeom/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <random>

#include "gcngeom/error.hpp"
#include "gcngeom/geometry.hpp"

namespace gcngeom {

void DistanceMatrix::set(std::size_t i, std::size_t j, double d) {
  values_[i * n_ + j] = d;
  values_[j * n_ + i] = d;
}

DistanceMatrix DistanceMatrix::subset(std::span<const std::size_t> ids) const {
  DistanceMatrix out(ids.size());
  for (std::size_t a = 0; a < ids.size(); ++a)
    for (std::size_t b = a + 1; b < ids.size(); ++b) out.set(a, b, (*this)(ids[a], ids[b]));
  return out;
}

std::vector<double> DistanceMatrix::upper_triangle() const {
  std::vector<double> out;
  out.reserve(n_ * (n_ - 1) / 2);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = i + 1; j < n_; ++j) out.push_back((*this)(i, j));
  return out;
}

double DistanceMatrix::median_offdiag() const {
  if (n_ < 2) return 0.0;
  return quantile(upper_triangle(), 0.5);
}

double quantile(std::vector<double> values, double q) {
  if (values.empty()) return std::numeric_limits<double>::quiet_NaN();
  std::sort(values.begin(), values.end());
  const double pos = q * static_cast<double>(values.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, values.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return values[lo] + frac * (values[hi] - values[lo]);
}

// ---------------------------------------------------------------------------
// PCA

PcaResult pca_project(const Matrix& x, std::size_t k) {
  const std::size_t n = x.rows(), p = x.cols();
  if (k > std::min(n, p)) throw ValidationError("pca_project: k exceeds min(n, p)");
  PcaResult res;
  res.mean.assign(p, 0.0);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t j = 0; j < p; ++j) res.mean[j] += x(r, j) / static_cast<double>(n);
  Matrix centred = x;
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t j = 0; j < p; ++j) centred(r, j) -= res.mean[j];
  Matrix cov = matmul_tn(centred, centred);
  const double denom = n > 1 ? static_cast<double>(n - 1) : 1.0;
  for (double& v : cov.values()) v /= denom;

  res.components = Matrix(k, p);
  auto orthogonalize = [&](std::vector<double>& v, std::size_t upto) {
    for (std::size_t c = 0; c < upto; ++c) {
      double dot = 0.0;
      for (std::size_t j = 0; j < p; ++j) dot += v[j] * res.components(c, j);
      for (std::size_t j = 0; j < p; ++j) v[j] -= dot * res.components(c, j);
    }
  };
  auto normalize = [&](std::vector<double>& v) {
    double s = 0.0;
    for (double e : v) s += e * e;
    s = std::sqrt(s);
    if (s < 1e-300) return false;
    for (double& e : v) e /= s;
    return true;
  };

  for (std::size_t c = 0; c < k; ++c) {
    std::vector<double> v(p);
    for (std::size_t j = 0; j < p; ++j) v[j] = 1.0 + 0.01 * static_cast<double>(j % 7) + 1e-3 * static_cast<double>(j);
    orthogonalize(v, c);
    for (std::size_t basis = 0; !normalize(v) && basis < p; ++basis) {
      std::fill(v.begin(), v.end(), 0.0);
      v[basis] = 1.0;
      orthogonalize(v, c);
    }
    double lambda = 0.0;
    for (int iter = 0; iter < 1000; ++iter) {
      std::vector<double> w(p, 0.0);
      for (std::size_t i = 0; i < p; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < p; ++j) s += cov(i, j) * v[j];
        w[i] = s;
      }
      orthogonalize(w, c);
      double next = 0.0;
      for (std::size_t j = 0; j < p; ++j) next += w[j] * v[j];
      if (!normalize(w)) {
        lambda = 0.0;
        break;
      }
      v = std::move(w);
      const bool done = std::abs(next - lambda) <= 1e-10 * std::max(std::abs(next), 1e-300);
      lambda = next;
      if (done) break;
    }
    // Deflate: C <- C - lambda v v^T.
    for (std::size_t i = 0; i < p; ++i)
      for (std::size_t j = 0; j < p; ++j) cov(i, j) -= lambda * v[i] * v[j];
    std::size_t arg = 0;
    for (std::size_t j = 1; j < p; ++j)
      if (std::abs(v[j]) > std::abs(v[arg])) arg = j;
    const double sign = v[arg] < 0.0 ? -1.0 : 1.0;
    for (std::size_t j = 0; j < p; ++j) res.components(c, j) = sign * v[j];
    res.eigenvalues.push_back(lambda);
  }
  res.coordinates = matmul_nt(centred, res.components);
  return res;
}

// ---------------------------------------------------------------------------
// Distances and correlations

Matrix diffusion_kernel(const Graph& graph, double eps) {
  if (!(eps > 0.0)) throw ValidationError("diffusion_kernel: eps must be positive");
  const std::size_t n = graph.num_nodes();
  Matrix k(n, n);
  for (NodeId s = 0; s < n; ++s) {
    auto hops = bfs_hops(graph, s);
    for (std::size_t t = 0; t < n; ++t) {
      if (hops[t] == kUnreachable) continue;
      const double h = hops[t];
      k(s, t) = std::exp(-h * h / eps);
    }
  }
  return k;
}

DistanceMatrix graph_distance(const Graph& graph, double eps, KernelDistance kind) {
  const Matrix k = diffusion_kernel(graph, eps);
  DistanceMatrix d(graph.num_nodes());
  for (std::size_t i = 0; i < d.size(); ++i)
    for (std::size_t j = i + 1; j < d.size(); ++j)
      d.set(i, j, kind == KernelDistance::OneMinus ? 1.0 - k(i, j) : std::sqrt(2.0 - 2.0 * k(i, j)));
  return d;
}

DistanceMatrix pairwise_euclidean(const Matrix& x) {
  DistanceMatrix d(x.rows());
  for (std::size_t i = 0; i < x.rows(); ++i) {
    auto a = x.row(i);
    for (std::size_t j = i + 1; j < x.rows(); ++j) {
      auto b = x.row(j);
      double s = 0.0;
      for (std::size_t c = 0; c < a.size(); ++c) s += (a[c] - b[c]) * (a[c] - b[c]);
      d.set(i, j, std::sqrt(s));
    }
  }
  return d;
}

std::vector<double> average_ranks(std::span<const double> x) {
  std::vector<std::size_t> order(x.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
  std::vector<double> ranks(x.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j + 1 < order.size() && x[order[j + 1]] == x[order[i]]) ++j;
    const double r = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t t = i; t <= j; ++t) ranks[order[t]] = r;
    i = j + 1;
  }
  return ranks;
}

double spearman(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw ValidationError("spearman: length mismatch");
  if (x.size() < 2) throw ValidationError("spearman: need at least two samples");
  const auto rx = average_ranks(x);
  const auto ry = average_ranks(y);
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / n;
  const double my = std::accumulate(ry.begin(), ry.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    sxy += (rx[i] - mx) * (ry[i] - my);
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) throw ValidationError("spearman: constant input");
  return sxy / std::sqrt(sxx * syy);
}

double distance_spearman(const DistanceMatrix& a, const DistanceMatrix& b, std::size_t max_pairs,
                         std::uint64_t seed) {
  if (a.size() != b.size()) throw ValidationError("distance_spearman: size mismatch");
  const std::size_t n = a.size();
  const std::size_t pairs = n * (n - 1) / 2;
  std::vector<double> xa, xb;
  if (pairs <= max_pairs) {
    xa = a.upper_triangle();
    xb = b.upper_triangle();
  } else {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    xa.reserve(max_pairs);
    xb.reserve(max_pairs);
    while (xa.size() < max_pairs) {
      std::size_t i = pick(rng), j = pick(rng);
      if (i == j) continue;
      xa.push_back(a(i, j));
      xb.push_back(b(i, j));
    }
  }
  return spearman(xa, xb);
}

// ---------------------------------------------------------------------------
// Gromov-Wasserstein

namespace {

// D1 T D2 for square D1 (n x n), T (n x m), D2 (m x m).
Matrix sandwich(const DistanceMatrix& d1, const Matrix& t, const DistanceMatrix& d2) {
  const std::size_t n = d1.size(), m = d2.size();
  Matrix dt(n, m);
  for (std::size_t i = 0; i < n; ++i) {
    double* out = dt.row(i).data();
    for (std::size_t k = 0; k < n; ++k) {
      const double w = d1(i, k);
      if (w == 0.0) continue;
      const double* tr = t.row(k).data();
      for (std::size_t j = 0; j < m; ++j) out[j] += w * tr[j];
    }
  }
  Matrix res(n, m);
  for (std::size_t i = 0; i < n; ++i) {
    double* out = res.row(i).data();
    const double* in = dt.row(i).data();
    for (std::size_t l = 0; l < m; ++l) {
      const double w = in[l];
      if (w == 0.0) continue;
      for (std::size_t j = 0; j < m; ++j) out[j] += w * d2(l, j);
    }
  }
  return res;
}

double inner(const Matrix& a, const Matrix& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.values().size(); ++i) s += a.values()[i] * b.values()[i];
  return s;
}

std::pair<std::vector<double>, std::vector<double>> marginals(const Matrix& t) {
  std::vector<double> r(t.rows(), 0.0), c(t.cols(), 0.0);
  for (std::size_t i = 0; i < t.rows(); ++i)
    for (std::size_t j = 0; j < t.cols(); ++j) {
      r[i] += t(i, j);
      c[j] += t(i, j);
    }
  return {r, c};
}

Matrix const_term(const DistanceMatrix& d1, const DistanceMatrix& d2, std::span<const double> p,
                  std::span<const double> q) {
  const std::size_t n = d1.size(), m = d2.size();
  std::vector<double> a(n, 0.0), b(m, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) a[i] += d1(i, k) * d1(i, k) * p[k];
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t l = 0; l < m; ++l) b[j] += d2(j, l) * d2(j, l) * q[l];
  Matrix c(n, m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j) c(i, j) = a[i] + b[j];
  return c;
}

double log_sum_exp(const double* v, std::size_t len) {
  double mx = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < len; ++i) mx = std::max(mx, v[i]);
  if (!std::isfinite(mx)) return mx;
  double s = 0.0;
  for (std::size_t i = 0; i < len; ++i) s += std::exp(v[i] - mx);
  return mx + std::log(s);
}

// Log-domain Sinkhorn followed by rounding onto the transport polytope.
Matrix entropic_transport(const Matrix& cost, std::span<const double> p, std::span<const double> q, double reg,
                          std::size_t max_iter, double tol) {
  const std::size_t n = cost.rows(), m = cost.cols();
  std::vector<double> f(n, 0.0), g(m, 0.0), buf(std::max(n, m));
  std::vector<double> logp(n), logq(m);
  for (std::size_t i = 0; i < n; ++i) logp[i] = std::log(p[i]);
  for (std::size_t j = 0; j < m; ++j) logq[j] = std::log(q[j]);
  Matrix plan(n, m);
  for (std::size_t it = 0; it < max_iter; ++it) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < m; ++j) buf[j] = (g[j] - cost(i, j)) / reg;
      f[i] = reg * (logp[i] - log_sum_exp(buf.data(), m));
    }
    for (std::size_t j = 0; j < m; ++j) {
      for (std::size_t i = 0; i < n; ++i) buf[i] = (f[i] - cost(i, j)) / reg;
      g[j] = reg * (logq[j] - log_sum_exp(buf.data(), n));
    }
    double err = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < m; ++j) buf[j] = (f[i] + g[j] - cost(i, j)) / reg;
      err = std::max(err, std::abs(std::exp(log_sum_exp(buf.data(), m)) - p[i]));
    }
    if (err < tol) break;
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j) plan(i, j) = std::exp((f[i] + g[j] - cost(i, j)) / reg);

  // Rounding (scale rows down, then columns down, then add the rank-one defect).
  auto [r, c] = marginals(plan);
  for (std::size_t i = 0; i < n; ++i) {
    const double s = r[i] > p[i] ? p[i] / r[i] : 1.0;
    for (std::size_t j = 0; j < m; ++j) plan(i, j) *= s;
  }
  std::tie(r, c) = marginals(plan);
  for (std::size_t j = 0; j < m; ++j) {
    const double s = c[j] > q[j] ? q[j] / c[j] : 1.0;
    for (std::size_t i = 0; i < n; ++i) plan(i, j) *= s;
  }
  std::tie(r, c) = marginals(plan);
  double l1 = 0.0;
  for (std::size_t i = 0; i < n; ++i) l1 += p[i] - r[i];
  if (l1 > 0.0)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < m; ++j) plan(i, j) += (p[i] - r[i]) * (q[j] - c[j]) / l1;
  return plan;
}

// Couples points in order of eccentricity (mean distance), north-west corner rule.
Matrix eccentricity_coupling(const DistanceMatrix& d1, const DistanceMatrix& d2, std::span<const double> p,
                             std::span<const double> q) {
  auto order = [](const DistanceMatrix& d) {
    std::vector<double> ecc(d.size(), 0.0);
    for (std::size_t i = 0; i < d.size(); ++i)
      for (std::size_t k = 0; k < d.size(); ++k) ecc[i] += d(i, k);
    std::vector<std::size_t> idx(d.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return ecc[a] < ecc[b]; });
    return idx;
  };
  const auto o1 = order(d1), o2 = order(d2);
  Matrix t(d1.size(), d2.size());
  std::size_t a = 0, b = 0;
  double ra = p[o1[0]], rb = q[o2[0]];
  while (a < o1.size() && b < o2.size()) {
    const double mass = std::min(ra, rb);
    t(o1[a], o2[b]) += mass;
    ra -= mass;
    rb -= mass;
    if (ra <= 1e-15 * p[o1[a]]) {
      if (++a < o1.size()) ra = p[o1[a]];
    }
    if (rb <= 1e-15 * q[o2[b]]) {
      if (++b < o2.size()) rb = q[o2[b]];
    }
  }
  return t;
}

GWResult conditional_gradient(const DistanceMatrix& d1, const DistanceMatrix& d2, Matrix t,
                              std::span<const double> p, std::span<const double> q, double reg,
                              const GWConfig& cfg) {
  const Matrix constc = const_term(d1, d2, p, q);
  GWResult res;
  Matrix dtd = sandwich(d1, t, d2);
  double f = inner(constc, t) - 2.0 * inner(dtd, t);
  res.objective_trace.push_back(f);
  for (std::size_t it = 0; it < cfg.max_outer; ++it) {
    Matrix grad(t.rows(), t.cols());
    for (std::size_t i = 0; i < grad.values().size(); ++i)
      grad.values()[i] = 2.0 * (constc.values()[i] - 2.0 * dtd.values()[i]);
    double gmin = *std::min_element(grad.values().begin(), grad.values().end());
    for (double& v : grad.values()) v -= gmin;
    Matrix target = entropic_transport(grad, p, q, reg, cfg.max_sinkhorn, cfg.tol);
    Matrix dir = target;
    for (std::size_t i = 0; i < dir.values().size(); ++i) dir.values()[i] -= t.values()[i];
    const Matrix ddd = sandwich(d1, dir, d2);
    const double a = -2.0 * inner(ddd, dir);
    const double b = inner(constc, dir) - 4.0 * inner(dtd, dir);
    double tau;
    if (a > 0.0)
      tau = std::clamp(-b / (2.0 * a), 0.0, 1.0);
    else
      tau = (a + b < 0.0) ? 1.0 : 0.0;
    const double f_new = f + b * tau + a * tau * tau;
    res.outer_iterations = it + 1;
    if (tau == 0.0 || !(f_new < f)) {
      res.converged = true;
      break;
    }
    for (std::size_t i = 0; i < t.values().size(); ++i) t.values()[i] += tau * dir.values()[i];
    dtd = sandwich(d1, t, d2);
    const double f_exact = inner(constc, t) - 2.0 * inner(dtd, t);
    const double improvement = f - f_exact;
    f = std::min(f, f_exact);
    res.objective_trace.push_back(f);
    if (improvement <= cfg.tol * std::max(std::abs(f), 1e-12)) {
      res.converged = true;
      break;
    }
  }
  res.value = std::max(f, 0.0);
  res.coupling = std::move(t);
  return res;
}

}  // namespace

double gw_objective(const DistanceMatrix& d1, const DistanceMatrix& d2, const Matrix& coupling) {
  if (coupling.rows() != d1.size() || coupling.cols() != d2.size())
    throw ValidationError("gw_objective: coupling shape mismatch");
  auto [p, q] = marginals(coupling);
  const Matrix constc = const_term(d1, d2, p, q);
  return inner(constc, coupling) - 2.0 * inner(sandwich(d1, coupling, d2), coupling);
}

GWResult gromov_wasserstein(const DistanceMatrix& d1_in, const DistanceMatrix& d2_in, const GWConfig& cfg) {
  if (!(cfg.tol > 0.0)) throw ValidationError("gromov_wasserstein: tol must be positive");
  if (d1_in.size() == 0 || d2_in.size() == 0) throw ValidationError("gromov_wasserstein: empty space");
  DistanceMatrix d1 = d1_in, d2 = d2_in;
  if (cfg.subsample) {
    auto pick = [&](const DistanceMatrix& d) {
      if (d.size() <= *cfg.subsample) return d;
      std::vector<std::size_t> ids(d.size());
      std::iota(ids.begin(), ids.end(), std::size_t{0});
      std::mt19937_64 rng(cfg.seed);
      std::shuffle(ids.begin(), ids.end(), rng);
      ids.resize(*cfg.subsample);
      std::sort(ids.begin(), ids.end());
      return d.subset(ids);
    };
    d1 = pick(d1_in);
    d2 = pick(d2_in);
  }
  const std::size_t n = d1.size(), m = d2.size();
  std::vector<double> p(n, 1.0 / static_cast<double>(n)), q(m, 1.0 / static_cast<double>(m));
  double reg = cfg.epsilon_reg;
  if (!(reg > 0.0)) {
    reg = 5e-3 * d1.median_offdiag() * d2.median_offdiag();
    if (!(reg > 0.0)) reg = 5e-3 * std::max({d1.median_offdiag(), d2.median_offdiag(), 1e-3});
  }

  Matrix product(n, m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j) product(i, j) = p[i] * q[j];
  GWResult best = conditional_gradient(d1, d2, eccentricity_coupling(d1, d2, p, q), p, q, reg, cfg);
  GWResult alt = conditional_gradient(d1, d2, std::move(product), p, q, reg, cfg);
  if (alt.value < best.value) best = std::move(alt);

  auto [r, c] = marginals(best.coupling);
  best.marginal_error = 0.0;
  for (std::size_t i = 0; i < n; ++i) best.marginal_error = std::max(best.marginal_error, std::abs(r[i] - p[i]));
  for (std::size_t j = 0; j < m; ++j) best.marginal_error = std::max(best.marginal_error, std::abs(c[j] - q[j]));
  return best;
}

// ---------------------------------------------------------------------------
// Curvature and reconstruction

double forman_pair_curvature(const Graph& graph, NodeId u, NodeId v) {
  auto a = graph.neighbors(u);
  auto b = graph.neighbors(v);
  std::size_t common = 0;
  for (std::size_t i = 0, j = 0; i < a.size() && j < b.size();) {
    if (a[i] < b[j]) ++i;
    else if (a[i] > b[j]) ++j;
    else {
      ++common;
      ++i;
      ++j;
    }
  }
  return 4.0 - static_cast<double>(a.size()) - static_cast<double>(b.size()) + 3.0 * static_cast<double>(common);
}

CurvatureSummary forman_curvature(const Graph& graph) {
  if (graph.num_edges() == 0) throw ValidationError("forman_curvature: graph has no edges");
  CurvatureSummary s;
  s.edges = graph.edge_list();
  s.curvature.reserve(s.edges.size());
  for (const auto& e : s.edges) s.curvature.push_back(forman_pair_curvature(graph, e.u, e.v));
  const double n = static_cast<double>(s.curvature.size());
  s.mean = std::accumulate(s.curvature.begin(), s.curvature.end(), 0.0) / n;
  double var = 0.0;
  for (double c : s.curvature) var += (c - s.mean) * (c - s.mean);
  s.sd = std::sqrt(var / n);
  return s;
}

Graph reconstruct_graph(const Matrix& h, std::size_t m_edges) {
  const std::size_t n = h.rows();
  if (m_edges > n * (n - 1) / 2) throw ValidationError("reconstruct_graph: more edges than node pairs");
  struct Pair {
    double d;
    NodeId i, j;
  };
  std::vector<Pair> pairs;
  pairs.reserve(n * (n - 1) / 2);
  for (NodeId i = 0; i < n; ++i) {
    auto a = h.row(i);
    for (NodeId j = i + 1; j < n; ++j) {
      auto b = h.row(j);
      double s = 0.0;
      for (std::size_t c = 0; c < a.size(); ++c) s += (a[c] - b[c]) * (a[c] - b[c]);
      pairs.push_back({s, i, j});
    }
  }
  auto less = [](const Pair& x, const Pair& y) {
    if (x.d != y.d) return x.d < y.d;
    if (x.i != y.i) return x.i < y.i;
    return x.j < y.j;
  };
  if (m_edges < pairs.size())
    std::nth_element(pairs.begin(), pairs.begin() + static_cast<std::ptrdiff_t>(m_edges), pairs.end(), less);
  std::vector<std::pair<NodeId, NodeId>> edges;
  edges.reserve(m_edges);
  for (std::size_t k = 0; k < m_edges; ++k) edges.emplace_back(pairs[k].i, pairs[k].j);
  return build_graph(n, edges);
}

NormDegreeProfile norm_degree_profile(const Matrix& h, std::span<const double> degrees) {
  if (degrees.size() != h.rows()) throw ValidationError("norm_degree_profile: degree count != rows");
  std::vector<double> norms(h.rows());
  for (std::size_t u = 0; u < h.rows(); ++u) norms[u] = h.row_norm(u);
  std::map<int, std::vector<double>> buckets;
  for (std::size_t u = 0; u < h.rows(); ++u) buckets[degree_class(degrees[u])].push_back(norms[u]);
  NormDegreeProfile prof;
  for (auto& [cls, values] : buckets) {
    DegreeBucket b;
    b.degree_class = cls;
    b.count = values.size();
    b.mean_norm = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
    b.q10 = quantile(values, 0.1);
    b.q50 = quantile(values, 0.5);
    b.q90 = quantile(values, 0.9);
    prof.buckets.push_back(b);
  }
  try {
    prof.degree_norm_spearman = spearman(degrees, norms);
  } catch (const ValidationError&) {
    prof.degree_norm_spearman = std::numeric_limits<double>::quiet_NaN();
  }
  return prof;
}

}  // namespace gcngeom
