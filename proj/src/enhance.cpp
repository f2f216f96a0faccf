#include "epiccbr/enhance.hpp"

#include <algorithm>
#include <map>

#include "epiccbr/errors.hpp"

namespace epiccbr {

EnhancedItemAdjacency build_enhanced_ii(const RelationTable& relations,
                                        std::uint32_t n_items) {
  EnhancedItemAdjacency adj;
  adj.n_items = n_items;
  for (const RelationEntry& e : relations.entries) {
    if (e.cls != RelationClass::R2) continue;
    if (e.i >= n_items || e.j >= n_items)
      throw InputError("R2 pair outside item space");
    adj.r2_pairs.emplace_back(e.i, e.j);
  }
  std::sort(adj.r2_pairs.begin(), adj.r2_pairs.end());
  adj.r2_pairs.erase(std::unique(adj.r2_pairs.begin(), adj.r2_pairs.end()),
                     adj.r2_pairs.end());
  return adj;
}

SparseBipartiteGraph enhance_ui(const SparseBipartiteGraph& ui,
                                const EnhancedItemAdjacency& enh, double alpha,
                                bool exclude_identity) {
  if (ui.n_right() != enh.n_items)
    throw InputError("item-item adjacency does not match UI item space");
  if (alpha < 0.0 || alpha > 1.0) throw InputError("alpha must be in [0,1]");

  // Off-diagonal rows of A_enh, symmetric.
  std::vector<std::vector<std::uint32_t>> partners(enh.n_items);
  for (const auto& [i, j] : enh.r2_pairs) {
    partners[i].push_back(j);
    partners[j].push_back(i);
  }

  std::vector<Edge> edges;
  edges.reserve(ui.nnz());
  // Row u of A_UI * A_enh = sum over u's items of A_enh rows; a map keyed by
  // item keeps per-row accumulation order canonical.
  std::map<std::uint32_t, double> row;
  for (std::uint32_t u = 0; u < ui.n_left(); ++u) {
    row.clear();
    const auto items = ui.left_neighbors(u);
    const auto weights = ui.left_weights(u);
    const double base = exclude_identity ? 1.0 : 1.0 + alpha;
    for (std::size_t k = 0; k < items.size(); ++k)
      row[items[k]] += weights[k] * base;
    if (alpha > 0.0) {
      for (std::size_t k = 0; k < items.size(); ++k)
        for (const std::uint32_t partner : partners[items[k]])
          row[partner] += alpha * weights[k];
    }
    for (const auto& [item, w] : row)
      if (w != 0.0) edges.push_back({u, item, w});
  }
  return SparseBipartiteGraph::from_edges(GraphKind::UI, ui.n_left(),
                                          ui.n_right(), std::move(edges),
                                          /*binary=*/false);
}

}  // namespace epiccbr
