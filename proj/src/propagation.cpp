#include "epiccbr/propagation.hpp"

#include <cmath>

#include "epiccbr/errors.hpp"
#include "epiccbr/parallel.hpp"

namespace epiccbr {

namespace {

// Shared kernel: for each output row x, sum coeff(x,y) * from[y] over the
// adjacency. Row-parallel; per-row accumulation order is the CSR order, so
// results are identical for any thread count.
template <typename CoeffFn>
Matrix gather_rows(std::size_t n_out, std::size_t dim, CoeffFn&& coeff_row) {
  Matrix out(n_out, dim);
  parallel_for(n_out, [&](std::size_t begin, std::size_t end) {
    for (std::size_t x = begin; x < end; ++x) coeff_row(x, out.row(x));
  });
  return out;
}

}  // namespace

Matrix sym_norm_apply(const SparseBipartiteGraph& g, Side to, const Matrix& from) {
  const bool to_left = to == Side::Left;
  const std::size_t n_out = to_left ? g.n_left() : g.n_right();
  const std::size_t n_in = to_left ? g.n_right() : g.n_left();
  if (from.rows() != n_in)
    throw NumericError("sym_norm_apply: input row count mismatch");
  const auto& out_deg = to_left ? g.left_degrees() : g.right_degrees();
  const auto& in_deg = to_left ? g.right_degrees() : g.left_degrees();
  const std::size_t d = from.cols();

  return gather_rows(n_out, d, [&](std::size_t x, double* dst) {
    const double dx = out_deg[x];
    if (dx <= 0.0) return;
    const auto nbrs = to_left ? g.left_neighbors(static_cast<std::uint32_t>(x))
                              : g.right_neighbors(static_cast<std::uint32_t>(x));
    const auto wts = to_left ? g.left_weights(static_cast<std::uint32_t>(x))
                             : g.right_weights(static_cast<std::uint32_t>(x));
    for (std::size_t k = 0; k < nbrs.size(); ++k) {
      const std::uint32_t y = nbrs[k];
      const double dy = in_deg[y];
      if (dy <= 0.0) continue;
      axpy(dst, from.row(y), wts[k] / std::sqrt(dx * dy), d);
    }
  });
}

Matrix row_mean_apply(const SparseBipartiteGraph& g, Side to, const Matrix& from) {
  const bool to_left = to == Side::Left;
  const std::size_t n_out = to_left ? g.n_left() : g.n_right();
  const std::size_t n_in = to_left ? g.n_right() : g.n_left();
  if (from.rows() != n_in)
    throw NumericError("row_mean_apply: input row count mismatch");
  const std::size_t d = from.cols();

  return gather_rows(n_out, d, [&](std::size_t x, double* dst) {
    const auto nbrs = to_left ? g.left_neighbors(static_cast<std::uint32_t>(x))
                              : g.right_neighbors(static_cast<std::uint32_t>(x));
    if (nbrs.empty()) return;
    const double inv = 1.0 / static_cast<double>(nbrs.size());
    for (const std::uint32_t y : nbrs) axpy(dst, from.row(y), inv, d);
  });
}

Matrix row_mean_transpose(const SparseBipartiteGraph& g, Side to,
                          const Matrix& g_out) {
  // Forward was out[x] = (1/|N(x)|) sum_y from[y] toward `to`; the adjoint
  // accumulates g_in[y] += g_out[x] / |N(x)| and is computed as a gather over
  // the opposite side's CSR.
  const bool to_left = to == Side::Left;
  const std::size_t n_out = to_left ? g.n_left() : g.n_right();
  const std::size_t n_in = to_left ? g.n_right() : g.n_left();
  if (g_out.rows() != n_out)
    throw NumericError("row_mean_transpose: gradient row count mismatch");
  const std::size_t d = g_out.cols();

  return gather_rows(n_in, d, [&](std::size_t y, double* dst) {
    const auto xs = to_left ? g.right_neighbors(static_cast<std::uint32_t>(y))
                            : g.left_neighbors(static_cast<std::uint32_t>(y));
    for (const std::uint32_t x : xs) {
      const std::size_t cnt = to_left ? g.left_count(x) : g.right_count(x);
      if (cnt == 0) continue;
      axpy(dst, g_out.row(x), 1.0 / static_cast<double>(cnt), d);
    }
  });
}

PropagationLayers propagate(const SparseBipartiteGraph& g, const Matrix& left0,
                            const Matrix& right0, int depth) {
  if (depth < 0) throw NumericError("propagation depth must be >= 0");
  if (left0.rows() != g.n_left() || right0.rows() != g.n_right())
    throw NumericError("propagate: embedding row counts do not match graph");
  PropagationLayers layers;
  layers.left.reserve(depth + 1);
  layers.right.reserve(depth + 1);
  layers.left.push_back(left0);
  layers.right.push_back(right0);
  for (int t = 0; t < depth; ++t) {
    layers.left.push_back(sym_norm_apply(g, Side::Left, layers.right[t]));
    layers.right.push_back(sym_norm_apply(g, Side::Right, layers.left[t]));
  }
  return layers;
}

Matrix coalesce(const std::vector<Matrix>& layers) {
  if (layers.empty()) throw NumericError("coalesce of zero layers");
  Matrix out(layers[0].rows(), layers[0].cols());
  for (const Matrix& l : layers) add_scaled(out, l, 1.0);
  scale(out, 1.0 / static_cast<double>(layers.size()));
  return out;
}

Coalesced propagate_coalesced(const SparseBipartiteGraph& g, const Matrix& left0,
                              const Matrix& right0, int depth) {
  PropagationLayers layers = propagate(g, left0, right0, depth);
  return {coalesce(layers.left), coalesce(layers.right)};
}

std::pair<Matrix, Matrix> propagate_coalesced_backward(
    const SparseBipartiteGraph& g, const Matrix& g_left, const Matrix& g_right,
    int depth) {
  // Each layer receives 1/(T+1) of the coalesced gradient; the recurrence
  //   left[t+1] = P right[t],  right[t+1] = P^T left[t]
  // transposes to running the same operators backwards.
  const double inv = 1.0 / static_cast<double>(depth + 1);
  Matrix gl(g_left.rows(), g_left.cols());
  Matrix gr(g_right.rows(), g_right.cols());
  add_scaled(gl, g_left, inv);
  add_scaled(gr, g_right, inv);
  for (int t = depth; t > 0; --t) {
    // Gradients flowing into layer t-1 from layer t, plus the direct
    // coalescence share of layer t-1.
    Matrix gl_prev = sym_norm_apply(g, Side::Left, gr);
    Matrix gr_prev = sym_norm_apply(g, Side::Right, gl);
    add_scaled(gl_prev, g_left, inv);
    add_scaled(gr_prev, g_right, inv);
    gl = std::move(gl_prev);
    gr = std::move(gr_prev);
  }
  return {std::move(gl), std::move(gr)};
}

}  // namespace epiccbr
