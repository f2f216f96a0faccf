#pragma once

#include <array>
#include <cstdint>

#include "epiccbr/embedding.hpp"
#include "epiccbr/graph.hpp"
#include "epiccbr/matrix.hpp"
#include "epiccbr/propagation.hpp"

namespace epiccbr {

// The static graphs the forward passes propagate over. All views share one
// popularity-weighted BI graph; the cold path uses the enhanced UI graph,
// the warm path the plain one.
struct ModelGraphs {
  const SparseBipartiteGraph* ui_plain = nullptr;
  const SparseBipartiteGraph* ui_enhanced = nullptr;
  const SparseBipartiteGraph* pop_bi = nullptr;
  const SparseBipartiteGraph* ub_train = nullptr;
};

// Per-view fusion weights (normalized by their sum). Equal weights give the
// plain early-fusion mean; zeroing entries ablates views.
struct ViewWeights {
  std::array<double, 2> cold{1.0, 1.0};  // user-item-bundle, bundle-item-user
  std::array<double, 3> warm{1.0, 1.0, 1.0};  // UB, UI, BI
};

struct ScenarioEmbeddings {
  Matrix users;    // n_users x d
  Matrix bundles;  // n_bundles x d
};

// Popularity-weighted aggregation of item vectors into bundle vectors over
// the weighted BI graph: e_b = sum_i w_bi * e_i / sqrt(D_b * D_i).
Matrix pop_bundle_agg(const Matrix& items, const SparseBipartiteGraph& pop_bi);

// Uniform mean of a user's UI-neighbor item vectors (weights ignored).
Matrix ui_user_agg(const Matrix& items, const SparseBipartiteGraph& ui);

// Cold path: two symmetric views forming a user-to-user pathway.
//   A (user-item-bundle): propagate (user_cold, item_cold) on the enhanced
//     UI graph, coalesce, then aggregate items into bundles via pop_bi.
//   B (bundle-item-user): propagate (bundle vectors from A, item_cold) on
//     pop_bi, coalesce, then mean item vectors back into users over the
//     enhanced UI graph.
// Fusion is the weighted mean of the per-view user/bundle embeddings.
ScenarioEmbeddings cold_forward(const EmbeddingState& state,
                                const ModelGraphs& graphs,
                                const ViewWeights& weights);

// Warm path: UB, UI and BI views. Cold bundles carry no ID embedding: their
// UB-view layer 0 is the zero vector and their BI-view layer 0 is the
// popularity-weighted mean of their items' initial warm embeddings.
ScenarioEmbeddings warm_forward(const EmbeddingState& state,
                                const ModelGraphs& graphs,
                                const ViewWeights& weights);

struct TableGrads {
  Matrix user_warm;
  Matrix item_warm;
  Matrix bundle_warm;
  Matrix user_cold;
  Matrix item_cold;

  explicit TableGrads(const EmbeddingState& s)
      : user_warm(s.user_warm.rows(), s.dim),
        item_warm(s.item_warm.rows(), s.dim),
        bundle_warm(s.bundle_warm.rows(), s.dim),
        user_cold(s.user_cold.rows(), s.dim),
        item_cold(s.item_cold.rows(), s.dim) {}

  void set_zero() {
    user_warm.set_zero();
    item_warm.set_zero();
    bundle_warm.set_zero();
    user_cold.set_zero();
    item_cold.set_zero();
  }
};

// Adjoints of the forward passes: map gradients w.r.t. the fused per-scenario
// user/bundle embeddings into gradients w.r.t. the initial tables.
// Gradients into frozen (cold) bundle rows are discarded -- those rows are
// not parameters.
void cold_backward(const EmbeddingState& state, const ModelGraphs& graphs,
                   const ViewWeights& weights, const Matrix& g_users,
                   const Matrix& g_bundles, TableGrads& grads);
void warm_backward(const EmbeddingState& state, const ModelGraphs& graphs,
                   const ViewWeights& weights, const Matrix& g_users,
                   const Matrix& g_bundles, TableGrads& grads);

// Dual-scenario weighted concatenation: row x of `users` is
// [k * warm_row, (1-k) * cold_row], a (count x 2d) matrix.
struct FusedEmbeddings {
  Matrix users;
  Matrix bundles;
  double k = 0.5;
  std::uint32_t dim = 0;  // per-scenario dimension d (columns are 2d)
};

FusedEmbeddings fuse(const ScenarioEmbeddings& warm,
                     const ScenarioEmbeddings& cold, double k);

// y*_{u,b}: inner product of fused user and bundle rows.
double score(const FusedEmbeddings& fused, std::uint32_t user,
             std::uint32_t bundle);

}  // namespace epiccbr
