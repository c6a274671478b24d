#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "gcngeom/conv.hpp"
#include "gcngeom/graph.hpp"
#include "gcngeom/matrix.hpp"

namespace gcngeom {

/// Two-layer GCN: logits = S relu(S X W1 + b1) W2 + b2.
struct GCNModel {
  Matrix w1;  // p x h
  std::vector<double> b1;
  Matrix w2;  // h x c
  std::vector<double> b2;

  std::size_t input_dim() const { return w1.rows(); }
  std::size_t hidden_dim() const { return w1.cols(); }
  std::size_t num_classes() const { return w2.cols(); }

  /// Same shape, all zeros.
  GCNModel zeros_like() const;
  bool all_finite() const;

  bool operator==(const GCNModel& other) const = default;
};

enum class Optimizer { Adam, SGD };

struct TrainConfig {
  double lr = 0.01;
  std::size_t epochs = 200;
  std::uint64_t seed = 0;
  double weight_decay = 0.0;
  Optimizer optimizer = Optimizer::Adam;
  double adam_beta1 = 0.9;
  double adam_beta2 = 0.999;
  double adam_eps = 1e-8;
};

struct TrainResult {
  GCNModel final_model;
  double test_accuracy = 0.0;
  std::vector<double> train_loss_curve;
  Matrix embeddings;  // n x h, S relu(S X W1 + b1)
  Matrix logits;

  bool operator==(const TrainResult& other) const = default;
};

/// Glorot-uniform weights, zero biases.
GCNModel init_model(std::size_t p, std::size_t h, std::size_t c, std::uint64_t seed);

struct ForwardResult {
  Matrix logits;
  Matrix embeddings;
};

ForwardResult forward(const GCNModel& model, const SparseOperator& s, const Matrix& x);

/// Mean softmax cross-entropy over `mask` and its exact gradient.
struct LossAndGrads {
  double loss = 0.0;
  GCNModel grads;
};

LossAndGrads loss_and_grads(const GCNModel& model, const SparseOperator& s, const Matrix& x,
                            std::span<const int> labels, std::span<const NodeId> mask);

/// Full-batch training on bundle.split; returns test accuracy and embeddings.
TrainResult train(const DatasetBundle& bundle, const ConvParams& params, const TrainConfig& cfg,
                  std::size_t hidden_dim = 32);
/// Variant reusing an already built operator.
TrainResult train(const DatasetBundle& bundle, const SparseOperator& s, const TrainConfig& cfg,
                  std::size_t hidden_dim = 32);
/// Variant with an explicit split; bundle.split is ignored.
TrainResult train(const DatasetBundle& bundle, const SplitSpec& split, const SparseOperator& s,
                  const TrainConfig& cfg, std::size_t hidden_dim = 32);

/// Fraction of ids whose argmax (lowest index on ties) equals the label.
double accuracy(const Matrix& logits, std::span<const int> labels, std::span<const NodeId> ids);

}  // namespace gcngeom
