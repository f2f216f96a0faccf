#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <vector>

#include "epiccbr/graph.hpp"

namespace epiccbr {

// Dual-source item popularity with long-tail rescaling.
//   pop_ui(i)   raw UI interaction count
//   pop_bi(i)   sum of clamped bundle weights w_b over bundles containing i
//   pop_total   pop_ui + pop_bi
//   pop_adj     piecewise-linear long-tail scaling of pop_total
struct PopularityProfile {
  std::vector<double> pop_ui;
  std::vector<double> pop_bi;
  std::vector<double> pop_total;
  std::vector<double> pop_adj;
  std::vector<double> bundle_weight;  // w_b = min(N_b / P90, 1)
  double bundle_p90 = 0;              // P90 of bundle UB-train counts
  std::array<double, 5> anchors{};    // P50, P60, P70, P80, P90 of pop_total
  double median = 0;                  // M (nearest-rank P50)
  double pop_max = 0;                 // upper bound of the top interval
  std::array<double, 5> alpha_k{};    // interval coefficients
  bool cumulative = false;
};

// Raw popularity (pop_ui, pop_bi, pop_total, w_b). Computed from training
// interactions only. Fails if P90 of bundle counts is zero.
PopularityProfile item_popularity(const SparseBipartiteGraph& ui,
                                  const SparseBipartiteGraph& bi,
                                  const SparseBipartiteGraph& ub_train);

// Fills pop_adj. Intervals k=1..5 are (P50,P60], (P60,P70], (P70,P80],
// (P80,P90], (P90,max]; within interval k the value is
//   M * (1 + alpha_k * (pop - P_Lk)/(P_Uk - P_Lk))     [literal form]
// plus an extra +M once pop exceeds P90, exactly as the scaling function is
// stated. The cumulative variant M * (1 + sum_{j<k} alpha_j + alpha_k*frac)
// is globally monotone and continuous; default off.
void longtail_scale(PopularityProfile& profile,
                    const std::array<double, 5>& alpha_k, bool cumulative);

// BI graph reweighted with pop_adj on existing edges. Items with pop_adj = 0
// get the smallest positive pop_adj (floor) so that the symmetric
// normalization in downstream propagation stays finite.
SparseBipartiteGraph build_popularity_bi(const SparseBipartiteGraph& bi,
                                         const PopularityProfile& profile);

// Same, with explicit per-item weights (uniform-popularity ablation).
SparseBipartiteGraph build_popularity_bi(const SparseBipartiteGraph& bi,
                                         const std::vector<double>& pop_adj);

// TSV: "item\tpop_ui\tpop_bi\tpop_adj", 6 decimals, header included.
void write_popularity_tsv(const std::filesystem::path& file,
                          const PopularityProfile& profile);
std::vector<double> read_popularity_adj_tsv(const std::filesystem::path& file,
                                            std::uint32_t n_items);

}  // namespace epiccbr
