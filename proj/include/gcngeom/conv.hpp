#pragma once

#include <string>
#include <vector>

#include "gcngeom/graph.hpp"
#include "gcngeom/matrix.hpp"

namespace gcngeom {

enum class Family { Symmetric, RowNormalized };

const char* to_string(Family family);
/// Accepts "sym"/"symmetric" and "row"/"row-normalized".
Family parse_family(const std::string& text);

struct ConvParams {
  double alpha = 0.5;
  double beta = 1.0;
  Family family = Family::Symmetric;

  /// Checks 0 <= alpha <= 1 and beta >= 0.
  void validate() const;
};

/// Convolution matrix S on the graph pattern plus diagonal, in CSR form.
///
/// Symmetric:      S = D_b^-a (A + bI) D_b^-a,  D_b = diag(d_u + b)
/// RowNormalized:  S = diag(M 1)^-1 M  with M the symmetric operator above.
/// The self term carries weight b (d_u + b)^-2a before normalization.
class SparseOperator {
 public:
  std::size_t size() const { return aug_degrees_.size(); }
  const ConvParams& params() const { return params_; }
  const std::vector<double>& aug_degrees() const { return aug_degrees_; }

  const std::vector<std::size_t>& row_offsets() const { return row_offsets_; }
  const std::vector<NodeId>& col_indices() const { return col_indices_; }
  const std::vector<double>& values() const { return values_; }

  double entry(NodeId u, NodeId v) const;
  Matrix to_dense() const;

 private:
  friend SparseOperator build_symmetric(const Graph&, double, double);
  friend SparseOperator build_row_normalized(const Graph&, double, double);

  ConvParams params_;
  std::vector<double> aug_degrees_;
  std::vector<std::size_t> row_offsets_{0};
  std::vector<NodeId> col_indices_;
  std::vector<double> values_;
};

/// Throws DivisionByZeroError naming the node when beta = 0, alpha > 0 and a
/// node is isolated.
SparseOperator build_symmetric(const Graph& graph, double alpha, double beta);
/// Throws DivisionByZeroError naming the node whose row sum vanishes.
SparseOperator build_row_normalized(const Graph& graph, double alpha, double beta);
SparseOperator build_operator(const Graph& graph, const ConvParams& params);

/// S X. Throws ValidationError on a row-count mismatch.
Matrix apply(const SparseOperator& op, const Matrix& x);
/// S^T X.
Matrix apply_transpose(const SparseOperator& op, const Matrix& x);

}  // namespace gcngeom
