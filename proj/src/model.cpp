#include "epiccbr/model.hpp"

#include <cstring>

#include "epiccbr/errors.hpp"

namespace epiccbr {

namespace {

void check_graphs(const ModelGraphs& g) {
  if (!g.ui_plain || !g.ui_enhanced || !g.pop_bi || !g.ub_train)
    throw InputError("model graphs are not fully wired");
}

// Weighted mean coefficients normalized to sum 1.
template <std::size_t N>
std::array<double, N> normalize(const std::array<double, N>& w) {
  double sum = 0.0;
  for (double v : w) {
    if (v < 0.0) throw InputError("view weights must be nonnegative");
    sum += v;
  }
  if (sum <= 0.0) throw InputError("view weights must not all be zero");
  std::array<double, N> out{};
  for (std::size_t i = 0; i < N; ++i) out[i] = w[i] / sum;
  return out;
}

Matrix weighted_sum(const Matrix& a, double wa, const Matrix& b, double wb) {
  Matrix out(a.rows(), a.cols());
  add_scaled(out, a, wa);
  add_scaled(out, b, wb);
  return out;
}

// Layer-0 bundle embeddings for the warm BI view: the ID embedding for warm
// bundles, the popularity-weighted mean of member items for cold ones.
Matrix warm_bi_bundle_layer0(const EmbeddingState& state,
                             const SparseBipartiteGraph& pop_bi) {
  Matrix b0 = state.bundle_warm;
  const std::size_t d = state.dim;
  for (std::uint32_t b = 0; b < pop_bi.n_left(); ++b) {
    if (!state.is_frozen(b)) continue;
    double* dst = b0.row(b);
    std::memset(dst, 0, sizeof(double) * d);
    const double total = pop_bi.left_degree(b);
    if (total <= 0.0) continue;
    const auto items = pop_bi.left_neighbors(b);
    const auto wts = pop_bi.left_weights(b);
    for (std::size_t k = 0; k < items.size(); ++k)
      axpy(dst, state.item_warm.row(items[k]), wts[k] / total, d);
  }
  return b0;
}

}  // namespace

Matrix pop_bundle_agg(const Matrix& items, const SparseBipartiteGraph& pop_bi) {
  return sym_norm_apply(pop_bi, Side::Left, items);
}

Matrix ui_user_agg(const Matrix& items, const SparseBipartiteGraph& ui) {
  return row_mean_apply(ui, Side::Left, items);
}

ScenarioEmbeddings cold_forward(const EmbeddingState& state,
                                const ModelGraphs& graphs,
                                const ViewWeights& weights) {
  check_graphs(graphs);
  const auto w = normalize(weights.cold);
  const int t = state.layers;

  // View A: user-item-bundle over the enhanced UI graph.
  const Coalesced view_a =
      propagate_coalesced(*graphs.ui_enhanced, state.user_cold, state.item_cold, t);
  const Matrix bundles_a = pop_bundle_agg(view_a.right, *graphs.pop_bi);

  // View B: bundle-item-user over the weighted BI graph, seeded with the
  // view-A bundle vectors.
  const Coalesced view_b =
      propagate_coalesced(*graphs.pop_bi, bundles_a, state.item_cold, t);
  const Matrix users_b = ui_user_agg(view_b.right, *graphs.ui_enhanced);

  return {weighted_sum(view_a.left, w[0], users_b, w[1]),
          weighted_sum(bundles_a, w[0], view_b.left, w[1])};
}

void cold_backward(const EmbeddingState& state, const ModelGraphs& graphs,
                   const ViewWeights& weights, const Matrix& g_users,
                   const Matrix& g_bundles, TableGrads& grads) {
  check_graphs(graphs);
  const auto w = normalize(weights.cold);
  const int t = state.layers;

  Matrix g_users_a(g_users.rows(), g_users.cols());
  add_scaled(g_users_a, g_users, w[0]);
  Matrix g_users_b(g_users.rows(), g_users.cols());
  add_scaled(g_users_b, g_users, w[1]);
  Matrix g_bundles_a(g_bundles.rows(), g_bundles.cols());
  add_scaled(g_bundles_a, g_bundles, w[0]);
  Matrix g_bundles_b(g_bundles.rows(), g_bundles.cols());
  add_scaled(g_bundles_b, g_bundles, w[1]);

  // users_b = row_mean(ui_enhanced -> users) of view_b items.
  Matrix g_items_b = row_mean_transpose(*graphs.ui_enhanced, Side::Left, g_users_b);

  // View B propagation adjoint; its bundle layer 0 was bundles_a.
  auto [g_bundles_a_from_b, g_item_cold_b] =
      propagate_coalesced_backward(*graphs.pop_bi, g_bundles_b, g_items_b, t);
  add_scaled(g_bundles_a, g_bundles_a_from_b, 1.0);
  add_scaled(grads.item_cold, g_item_cold_b, 1.0);

  // bundles_a = sym_norm(pop_bi -> bundles) of view_a items.
  Matrix g_items_a = sym_norm_apply(*graphs.pop_bi, Side::Right, g_bundles_a);

  auto [g_user_cold, g_item_cold_a] =
      propagate_coalesced_backward(*graphs.ui_enhanced, g_users_a, g_items_a, t);
  add_scaled(grads.user_cold, g_user_cold, 1.0);
  add_scaled(grads.item_cold, g_item_cold_a, 1.0);
}

ScenarioEmbeddings warm_forward(const EmbeddingState& state,
                                const ModelGraphs& graphs,
                                const ViewWeights& weights) {
  check_graphs(graphs);
  const auto w = normalize(weights.warm);
  const int t = state.layers;

  const Coalesced view_ub =
      propagate_coalesced(*graphs.ub_train, state.user_warm, state.bundle_warm, t);

  const Coalesced view_ui =
      propagate_coalesced(*graphs.ui_plain, state.user_warm, state.item_warm, t);
  const Matrix bundles_ui = pop_bundle_agg(view_ui.right, *graphs.pop_bi);

  const Matrix b0 = warm_bi_bundle_layer0(state, *graphs.pop_bi);
  const Coalesced view_bi =
      propagate_coalesced(*graphs.pop_bi, b0, state.item_warm, t);
  const Matrix users_bi = ui_user_agg(view_bi.right, *graphs.ui_plain);

  ScenarioEmbeddings out;
  out.users = Matrix(state.user_warm.rows(), state.dim);
  add_scaled(out.users, view_ub.left, w[0]);
  add_scaled(out.users, view_ui.left, w[1]);
  add_scaled(out.users, users_bi, w[2]);
  out.bundles = Matrix(state.bundle_warm.rows(), state.dim);
  add_scaled(out.bundles, view_ub.right, w[0]);
  add_scaled(out.bundles, bundles_ui, w[1]);
  add_scaled(out.bundles, view_bi.left, w[2]);
  return out;
}

void warm_backward(const EmbeddingState& state, const ModelGraphs& graphs,
                   const ViewWeights& weights, const Matrix& g_users,
                   const Matrix& g_bundles, TableGrads& grads) {
  check_graphs(graphs);
  const auto w = normalize(weights.warm);
  const int t = state.layers;
  const std::size_t d = state.dim;

  // UB view.
  {
    Matrix gu(g_users.rows(), d), gb(g_bundles.rows(), d);
    add_scaled(gu, g_users, w[0]);
    add_scaled(gb, g_bundles, w[0]);
    auto [g_user_warm, g_bundle_warm] =
        propagate_coalesced_backward(*graphs.ub_train, gu, gb, t);
    add_scaled(grads.user_warm, g_user_warm, 1.0);
    // Frozen rows are not parameters; drop their gradient.
    for (std::uint32_t b = 0; b < g_bundle_warm.rows(); ++b)
      if (!state.is_frozen(b))
        axpy(grads.bundle_warm.row(b), g_bundle_warm.row(b), 1.0, d);
  }

  // UI view; its item output feeds the bundle aggregation.
  {
    Matrix gu(g_users.rows(), d), gb(g_bundles.rows(), d);
    add_scaled(gu, g_users, w[1]);
    add_scaled(gb, g_bundles, w[1]);
    Matrix g_items = sym_norm_apply(*graphs.pop_bi, Side::Right, gb);
    auto [g_user_warm, g_item_warm] =
        propagate_coalesced_backward(*graphs.ui_plain, gu, g_items, t);
    add_scaled(grads.user_warm, g_user_warm, 1.0);
    add_scaled(grads.item_warm, g_item_warm, 1.0);
  }

  // BI view; its item output feeds the user aggregation, and its bundle
  // layer 0 splits between the bundle table and (for cold bundles) the
  // popularity-weighted mean of item embeddings.
  {
    Matrix gu(g_users.rows(), d), gb(g_bundles.rows(), d);
    add_scaled(gu, g_users, w[2]);
    add_scaled(gb, g_bundles, w[2]);
    Matrix g_items_from_users = row_mean_transpose(*graphs.ui_plain, Side::Left, gu);
    auto [g_b0, g_item_warm] = propagate_coalesced_backward(
        *graphs.pop_bi, gb, g_items_from_users, t);
    add_scaled(grads.item_warm, g_item_warm, 1.0);
    for (std::uint32_t b = 0; b < g_b0.rows(); ++b) {
      if (!state.is_frozen(b)) {
        axpy(grads.bundle_warm.row(b), g_b0.row(b), 1.0, d);
        continue;
      }
      const double total = graphs.pop_bi->left_degree(b);
      if (total <= 0.0) continue;
      const auto items = graphs.pop_bi->left_neighbors(b);
      const auto wts = graphs.pop_bi->left_weights(b);
      for (std::size_t k = 0; k < items.size(); ++k)
        axpy(grads.item_warm.row(items[k]), g_b0.row(b), wts[k] / total, d);
    }
  }
}

FusedEmbeddings fuse(const ScenarioEmbeddings& warm,
                     const ScenarioEmbeddings& cold, double k) {
  if (k < 0.0 || k > 1.0) throw InputError("scenario weight k must be in [0,1]");
  if (!warm.users.same_shape(cold.users) || !warm.bundles.same_shape(cold.bundles))
    throw InputError("scenario embedding shapes disagree");

  FusedEmbeddings out;
  out.k = k;
  out.dim = static_cast<std::uint32_t>(warm.users.cols());
  const std::size_t d = out.dim;

  const auto concat = [&](const Matrix& w, const Matrix& c) {
    Matrix m(w.rows(), 2 * d);
    for (std::size_t r = 0; r < w.rows(); ++r) {
      double* dst = m.row(r);
      const double* ws = w.row(r);
      const double* cs = c.row(r);
      for (std::size_t j = 0; j < d; ++j) dst[j] = k * ws[j];
      for (std::size_t j = 0; j < d; ++j) dst[d + j] = (1.0 - k) * cs[j];
    }
    return m;
  };
  out.users = concat(warm.users, cold.users);
  out.bundles = concat(warm.bundles, cold.bundles);
  return out;
}

double score(const FusedEmbeddings& fused, std::uint32_t user,
             std::uint32_t bundle) {
  return dot(fused.users.row(user), fused.bundles.row(bundle),
             fused.users.cols());
}

}  // namespace epiccbr
