#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "epiccbr/graph.hpp"
#include "epiccbr/relations.hpp"

namespace epiccbr {

// Symmetric item-item adjacency with a unit diagonal and unit entries at R2
// pairs. The diagonal is implicit; r2_pairs stores each undirected pair once
// with i < j.
struct EnhancedItemAdjacency {
  std::uint32_t n_items = 0;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> r2_pairs;  // sorted, i<j
};

EnhancedItemAdjacency build_enhanced_ii(const RelationTable& relations,
                                        std::uint32_t n_items);

// A'_UI = A_UI + alpha * (A_UI * A_enh). Because A_enh carries the identity,
// existing edges scale by (1 + alpha); exclude_identity subtracts that
// contribution, leaving base edges at weight 1 (ablation switch).
SparseBipartiteGraph enhance_ui(const SparseBipartiteGraph& ui,
                                const EnhancedItemAdjacency& enh, double alpha,
                                bool exclude_identity = false);

}  // namespace epiccbr
