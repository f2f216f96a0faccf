#pragma once

#include <utility>
#include <vector>

#include "epiccbr/graph.hpp"
#include "epiccbr/matrix.hpp"

namespace epiccbr {

enum class Side { Left, Right };

// One step of symmetric-normalized weighted propagation:
//   out[x] = sum_{y in N(x)} w_xy * from[y] / sqrt(deg(x) * deg(y))
// with weighted degrees. `to` selects the output side; `from` must match the
// opposite side. Zero-degree rows yield zero vectors. The operator toward
// Left is the exact transpose of the operator toward Right, which is what
// the backward passes rely on.
Matrix sym_norm_apply(const SparseBipartiteGraph& g, Side to, const Matrix& from);

// Uniform neighbor mean, edge weights ignored:
//   out[x] = (1/|N(x)|) sum_{y in N(x)} from[y]
Matrix row_mean_apply(const SparseBipartiteGraph& g, Side to, const Matrix& from);

// Transpose of row_mean_apply(to): given gradients on the `to` side,
// accumulates gradients for the `from` side.
Matrix row_mean_transpose(const SparseBipartiteGraph& g, Side to,
                          const Matrix& g_out);

// LightGCN-style bidirectional propagation for depth layers; returns all
// layers 0..depth on both sides.
struct PropagationLayers {
  std::vector<Matrix> left;
  std::vector<Matrix> right;
};
PropagationLayers propagate(const SparseBipartiteGraph& g, const Matrix& left0,
                            const Matrix& right0, int depth);

// Mean over layers 0..T (divisor T+1).
Matrix coalesce(const std::vector<Matrix>& layers);

struct Coalesced {
  Matrix left;
  Matrix right;
};

// propagate + coalesce without retaining intermediate layers.
Coalesced propagate_coalesced(const SparseBipartiteGraph& g, const Matrix& left0,
                              const Matrix& right0, int depth);

// Adjoint of propagate_coalesced: maps gradients of the coalesced outputs to
// gradients of the layer-0 inputs. Exact because the operator is linear with
// constant coefficients.
std::pair<Matrix, Matrix> propagate_coalesced_backward(
    const SparseBipartiteGraph& g, const Matrix& g_left, const Matrix& g_right,
    int depth);

}  // namespace epiccbr
