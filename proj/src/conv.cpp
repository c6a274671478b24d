#include "gcngeom/conv.hpp"

#include <algorithm>
#include <cmath>

#include "gcngeom/error.hpp"

namespace gcngeom {

const char* to_string(Family family) {
  return family == Family::Symmetric ? "symmetric" : "row_normalized";
}

Family parse_family(const std::string& text) {
  if (text == "sym" || text == "symmetric") return Family::Symmetric;
  if (text == "row" || text == "row-normalized" || text == "row_normalized") return Family::RowNormalized;
  throw ValidationError("unknown operator family '" + text + "'");
}

void ConvParams::validate() const {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw ValidationError("alpha must lie in [0, 1]");
  if (!(beta >= 0.0) || !std::isfinite(beta)) throw ValidationError("beta must be a finite value >= 0");
}

double SparseOperator::entry(NodeId u, NodeId v) const {
  auto first = col_indices_.begin() + static_cast<std::ptrdiff_t>(row_offsets_[u]);
  auto last = col_indices_.begin() + static_cast<std::ptrdiff_t>(row_offsets_[u + 1]);
  auto it = std::lower_bound(first, last, v);
  if (it == last || *it != v) return 0.0;
  return values_[static_cast<std::size_t>(it - col_indices_.begin())];
}

Matrix SparseOperator::to_dense() const {
  Matrix s(size(), size());
  for (std::size_t u = 0; u < size(); ++u)
    for (std::size_t k = row_offsets_[u]; k < row_offsets_[u + 1]; ++k) s(u, col_indices_[k]) = values_[k];
  return s;
}

namespace {

// (d + beta)^-alpha via exp(-alpha ln(d + beta)); alpha = 0 gives 1 even at d + beta = 0.
double inv_power(double aug_degree, double alpha) {
  if (alpha == 0.0) return 1.0;
  return std::exp(-alpha * std::log(aug_degree));
}

}  // namespace

SparseOperator build_symmetric(const Graph& graph, double alpha, double beta) {
  ConvParams params{alpha, beta, Family::Symmetric};
  params.validate();
  const std::size_t n = graph.num_nodes();
  SparseOperator op;
  op.params_ = params;
  op.aug_degrees_.resize(n);
  std::vector<double> scale(n);
  for (NodeId u = 0; u < n; ++u) {
    op.aug_degrees_[u] = graph.degree(u) + beta;
    if (op.aug_degrees_[u] <= 0.0 && alpha > 0.0)
      throw DivisionByZeroError("build_symmetric: node " + std::to_string(u) +
                                " has zero augmented degree (isolated with beta = 0)");
    scale[u] = inv_power(op.aug_degrees_[u], alpha);
  }
  const bool diag = beta > 0.0;
  op.row_offsets_.assign(n + 1, 0);
  op.col_indices_.reserve(graph.num_directed_entries() + (diag ? n : 0));
  op.values_.reserve(op.col_indices_.capacity());
  for (NodeId u = 0; u < n; ++u) {
    auto nbrs = graph.neighbors(u);
    auto ws = graph.weights(u);
    bool placed = !diag;
    for (std::size_t k = 0; k <= nbrs.size(); ++k) {
      if (!placed && (k == nbrs.size() || nbrs[k] > u)) {
        op.col_indices_.push_back(u);
        op.values_.push_back(beta * scale[u] * scale[u]);
        placed = true;
      }
      if (k == nbrs.size()) break;
      op.col_indices_.push_back(nbrs[k]);
      op.values_.push_back(ws[k] * scale[u] * scale[nbrs[k]]);
    }
    op.row_offsets_[u + 1] = op.col_indices_.size();
  }
  return op;
}

SparseOperator build_row_normalized(const Graph& graph, double alpha, double beta) {
  SparseOperator op = build_symmetric(graph, alpha, beta);
  op.params_.family = Family::RowNormalized;
  for (std::size_t u = 0; u < op.size(); ++u) {
    double sum = 0.0;
    for (std::size_t k = op.row_offsets_[u]; k < op.row_offsets_[u + 1]; ++k) sum += op.values_[k];
    if (!(sum > 0.0))
      throw DivisionByZeroError("build_row_normalized: row " + std::to_string(u) + " sums to zero");
    for (std::size_t k = op.row_offsets_[u]; k < op.row_offsets_[u + 1]; ++k) op.values_[k] /= sum;
  }
  return op;
}

SparseOperator build_operator(const Graph& graph, const ConvParams& params) {
  return params.family == Family::Symmetric ? build_symmetric(graph, params.alpha, params.beta)
                                            : build_row_normalized(graph, params.alpha, params.beta);
}

Matrix apply(const SparseOperator& op, const Matrix& x) {
  if (x.rows() != op.size())
    throw ValidationError("apply: operator size " + std::to_string(op.size()) + " vs " +
                          std::to_string(x.rows()) + " feature rows");
  const std::size_t p = x.cols();
  Matrix out(x.rows(), p);
  const auto& offs = op.row_offsets();
  const auto& cols = op.col_indices();
  const auto& vals = op.values();
  for (std::size_t u = 0; u < op.size(); ++u) {
    double* o = out.row(u).data();
    for (std::size_t k = offs[u]; k < offs[u + 1]; ++k) {
      const double s = vals[k];
      const double* xr = x.row(cols[k]).data();
      for (std::size_t j = 0; j < p; ++j) o[j] += s * xr[j];
    }
  }
  return out;
}

Matrix apply_transpose(const SparseOperator& op, const Matrix& x) {
  if (x.rows() != op.size()) throw ValidationError("apply_transpose: dimension mismatch");
  const std::size_t p = x.cols();
  Matrix out(x.rows(), p);
  const auto& offs = op.row_offsets();
  const auto& cols = op.col_indices();
  const auto& vals = op.values();
  for (std::size_t u = 0; u < op.size(); ++u) {
    const double* xr = x.row(u).data();
    for (std::size_t k = offs[u]; k < offs[u + 1]; ++k) {
      const double s = vals[k];
      double* o = out.row(cols[k]).data();
      for (std::size_t j = 0; j < p; ++j) o[j] += s * xr[j];
    }
  }
  return out;
}

}  // namespace gcngeom
