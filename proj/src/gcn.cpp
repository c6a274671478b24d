#include "gcngeom/gcn.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "gcngeom/error.hpp"

namespace gcngeom {

GCNModel GCNModel::zeros_like() const {
  return {Matrix(w1.rows(), w1.cols()), std::vector<double>(b1.size(), 0.0), Matrix(w2.rows(), w2.cols()),
          std::vector<double>(b2.size(), 0.0)};
}

bool GCNModel::all_finite() const {
  auto finite = [](const std::vector<double>& v) {
    return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
  };
  return w1.all_finite() && w2.all_finite() && finite(b1) && finite(b2);
}

GCNModel init_model(std::size_t p, std::size_t h, std::size_t c, std::uint64_t seed) {
  if (p == 0 || h == 0 || c == 0) throw ValidationError("init_model: dimensions must be >= 1");
  std::mt19937_64 rng(seed);
  auto glorot = [&](std::size_t fan_in, std::size_t fan_out) {
    const double bound = std::sqrt(6.0 / static_cast<double>(fan_in + fan_out));
    std::uniform_real_distribution<double> dist(-bound, bound);
    Matrix w(fan_in, fan_out);
    for (double& v : w.values()) v = dist(rng);
    return w;
  };
  GCNModel m;
  m.w1 = glorot(p, h);
  m.b1.assign(h, 0.0);
  m.w2 = glorot(h, c);
  m.b2.assign(c, 0.0);
  return m;
}

namespace {

void check_shapes(const GCNModel& model, const SparseOperator& s, const Matrix& x) {
  if (x.rows() != s.size()) throw ValidationError("forward: feature rows do not match operator size");
  if (x.cols() != model.w1.rows()) throw ValidationError("forward: feature dim does not match W1");
  if (model.b1.size() != model.w1.cols() || model.w2.rows() != model.w1.cols() ||
      model.b2.size() != model.w2.cols())
    throw ValidationError("forward: inconsistent parameter shapes");
}

void add_bias(Matrix& m, const std::vector<double>& b) {
  for (std::size_t r = 0; r < m.rows(); ++r) {
    double* row = m.row(r).data();
    for (std::size_t j = 0; j < b.size(); ++j) row[j] += b[j];
  }
}

struct Activations {
  Matrix pre;  // SX W1 + b1
  Matrix hidden;
  Matrix embeddings;
  Matrix logits;
};

Activations forward_from_sx(const GCNModel& model, const SparseOperator& s, const Matrix& sx) {
  Activations a;
  a.pre = matmul(sx, model.w1);
  add_bias(a.pre, model.b1);
  a.hidden = a.pre;
  for (double& v : a.hidden.values()) v = v > 0.0 ? v : 0.0;
  a.embeddings = apply(s, a.hidden);
  a.logits = matmul(a.embeddings, model.w2);
  add_bias(a.logits, model.b2);
  return a;
}

LossAndGrads loss_and_grads_from_sx(const GCNModel& model, const SparseOperator& s, const Matrix& sx,
                                    std::span<const int> labels, std::span<const NodeId> mask) {
  if (mask.empty()) throw ValidationError("loss_and_grads: empty mask");
  if (labels.size() != s.size()) throw ValidationError("loss_and_grads: label count mismatch");
  Activations a = forward_from_sx(model, s, sx);
  const std::size_t c = model.w2.cols();
  const double inv_m = 1.0 / static_cast<double>(mask.size());

  LossAndGrads out;
  out.grads = model.zeros_like();
  Matrix g(a.logits.rows(), c);
  for (NodeId u : mask) {
    auto z = a.logits.row(u);
    const double zmax = *std::max_element(z.begin(), z.end());
    double sum = 0.0;
    for (double v : z) sum += std::exp(v - zmax);
    const double lse = zmax + std::log(sum);
    const int y = labels[u];
    if (y < 0 || static_cast<std::size_t>(y) >= c) throw ValidationError("loss_and_grads: label out of range");
    out.loss += (lse - z[static_cast<std::size_t>(y)]) * inv_m;
    for (std::size_t k = 0; k < c; ++k) g(u, k) += std::exp(z[k] - lse) * inv_m;
    g(u, static_cast<std::size_t>(y)) -= inv_m;
  }

  out.grads.w2 = matmul_tn(a.embeddings, g);
  for (std::size_t r = 0; r < g.rows(); ++r)
    for (std::size_t k = 0; k < c; ++k) out.grads.b2[k] += g(r, k);

  Matrix d_emb = matmul_nt(g, model.w2);
  Matrix d_pre = apply_transpose(s, d_emb);
  for (std::size_t i = 0; i < d_pre.values().size(); ++i)
    if (!(a.pre.values()[i] > 0.0)) d_pre.values()[i] = 0.0;
  out.grads.w1 = matmul_tn(sx, d_pre);
  for (std::size_t r = 0; r < d_pre.rows(); ++r)
    for (std::size_t k = 0; k < d_pre.cols(); ++k) out.grads.b1[k] += d_pre(r, k);
  return out;
}

class AdamState {
 public:
  explicit AdamState(const GCNModel& shape) : m_(shape.zeros_like()), v_(shape.zeros_like()) {}

  void step(GCNModel& model, const GCNModel& grads, const TrainConfig& cfg) {
    ++t_;
    const double c1 = 1.0 - std::pow(cfg.adam_beta1, static_cast<double>(t_));
    const double c2 = 1.0 - std::pow(cfg.adam_beta2, static_cast<double>(t_));
    auto update = [&](std::vector<double>& p, const std::vector<double>& g, std::vector<double>& m,
                      std::vector<double>& v) {
      for (std::size_t i = 0; i < p.size(); ++i) {
        const double gi = g[i] + cfg.weight_decay * p[i];
        m[i] = cfg.adam_beta1 * m[i] + (1.0 - cfg.adam_beta1) * gi;
        v[i] = cfg.adam_beta2 * v[i] + (1.0 - cfg.adam_beta2) * gi * gi;
        p[i] -= cfg.lr * (m[i] / c1) / (std::sqrt(v[i] / c2) + cfg.adam_eps);
      }
    };
    update(model.w1.values(), grads.w1.values(), m_.w1.values(), v_.w1.values());
    update(model.b1, grads.b1, m_.b1, v_.b1);
    update(model.w2.values(), grads.w2.values(), m_.w2.values(), v_.w2.values());
    update(model.b2, grads.b2, m_.b2, v_.b2);
  }

 private:
  GCNModel m_, v_;
  std::size_t t_ = 0;
};

void sgd_step(GCNModel& model, const GCNModel& grads, const TrainConfig& cfg) {
  auto update = [&](std::vector<double>& p, const std::vector<double>& g) {
    for (std::size_t i = 0; i < p.size(); ++i) p[i] -= cfg.lr * (g[i] + cfg.weight_decay * p[i]);
  };
  update(model.w1.values(), grads.w1.values());
  update(model.b1, grads.b1);
  update(model.w2.values(), grads.w2.values());
  update(model.b2, grads.b2);
}

}  // namespace

ForwardResult forward(const GCNModel& model, const SparseOperator& s, const Matrix& x) {
  check_shapes(model, s, x);
  Activations a = forward_from_sx(model, s, apply(s, x));
  return {std::move(a.logits), std::move(a.embeddings)};
}

LossAndGrads loss_and_grads(const GCNModel& model, const SparseOperator& s, const Matrix& x,
                            std::span<const int> labels, std::span<const NodeId> mask) {
  check_shapes(model, s, x);
  return loss_and_grads_from_sx(model, s, apply(s, x), labels, mask);
}

TrainResult train(const DatasetBundle& bundle, const ConvParams& params, const TrainConfig& cfg,
                  std::size_t hidden_dim) {
  return train(bundle, build_operator(bundle.graph, params), cfg, hidden_dim);
}

TrainResult train(const DatasetBundle& bundle, const SparseOperator& s, const TrainConfig& cfg,
                  std::size_t hidden_dim) {
  if (!bundle.split) throw ValidationError("train: dataset '" + bundle.name + "' has no split");
  return train(bundle, *bundle.split, s, cfg, hidden_dim);
}

TrainResult train(const DatasetBundle& bundle, const SplitSpec& split, const SparseOperator& s,
                  const TrainConfig& cfg, std::size_t hidden_dim) {
  if (cfg.epochs < 1) throw ValidationError("train: epochs must be >= 1");
  if (!(cfg.lr > 0.0)) throw ValidationError("train: lr must be positive");
  GCNModel model = init_model(bundle.features.cols(), hidden_dim, static_cast<std::size_t>(bundle.num_classes),
                              cfg.seed);
  check_shapes(model, s, bundle.features);
  const Matrix sx = apply(s, bundle.features);

  TrainResult result;
  result.train_loss_curve.reserve(cfg.epochs);
  AdamState adam(model);
  for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
    auto lg = loss_and_grads_from_sx(model, s, sx, bundle.labels, split.train_ids);
    result.train_loss_curve.push_back(lg.loss);
    if (cfg.optimizer == Optimizer::Adam)
      adam.step(model, lg.grads, cfg);
    else
      sgd_step(model, lg.grads, cfg);
  }
  Activations a = forward_from_sx(model, s, sx);
  result.test_accuracy = split.test_ids.empty() ? 0.0 : accuracy(a.logits, bundle.labels, split.test_ids);
  result.final_model = std::move(model);
  result.embeddings = std::move(a.embeddings);
  result.logits = std::move(a.logits);
  return result;
}

double accuracy(const Matrix& logits, std::span<const int> labels, std::span<const NodeId> ids) {
  if (ids.empty()) throw ValidationError("accuracy: empty id set");
  std::size_t correct = 0;
  for (NodeId u : ids) {
    auto z = logits.row(u);
    auto best = static_cast<int>(std::max_element(z.begin(), z.end()) - z.begin());
    if (best == labels[u]) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(ids.size());
}

}  // namespace gcngeom
