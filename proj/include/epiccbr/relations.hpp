#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <unordered_map>
#include <vector>

#include "epiccbr/graph.hpp"

namespace epiccbr {

enum class RelationClass : std::uint8_t { R1, R2, R3, R4 };

const char* to_string(RelationClass c);
RelationClass relation_class_from_string(const std::string& s);

inline std::uint64_t pair_key(std::uint32_t i, std::uint32_t j) {
  return (static_cast<std::uint64_t>(i) << 32) | j;
}

// Item co-occurrence over one bipartite graph: items co-occur when they
// share a left-side neighbor (a user for UI, a bundle for BI). Only items
// whose occurrence count exceeds min_freq participate; below that the
// statistics are noise.
struct CooccurrenceStats {
  std::uint32_t n_items = 0;
  std::uint32_t min_freq = 0;
  std::vector<std::uint32_t> item_count;                 // C_i, raw occurrences
  std::unordered_map<std::uint64_t, std::uint32_t> pairs;  // key(i<j) -> |E_ij|

  bool qualified(std::uint32_t i) const { return item_count[i] > min_freq; }
  std::uint32_t pair_count(std::uint32_t i, std::uint32_t j) const {
    if (i > j) std::swap(i, j);
    const auto it = pairs.find(pair_key(i, j));
    return it == pairs.end() ? 0 : it->second;
  }
};

CooccurrenceStats cooccurrence(const SparseBipartiteGraph& graph,
                               std::uint32_t min_freq);

// J(i,j) = |E_ij| / (C_i + C_j - |E_ij|).
double jaccard(std::uint32_t c_i, std::uint32_t c_j, std::uint32_t e_ij);

// Per-graph screening thresholds. Derived as nearest-rank percentiles of the
// nonzero Jaccard populations; within each graph high > low > anti must hold.
struct ThresholdSet {
  double high_ui = 0, low_ui = 0, anti_ui = 0;
  double high_bi = 0, low_bi = 0, anti_bi = 0;
  std::uint32_t item_freq = 0;
};

// percentiles = (high, low, anti), e.g. (95, 20, 5).
ThresholdSet compute_thresholds(const std::vector<double>& j_values_ui,
                                const std::vector<double>& j_values_bi,
                                std::array<double, 3> percentiles,
                                std::uint32_t item_freq);

// All nonzero Jaccard values of co-occurring qualified pairs in one graph;
// this is the percentile population for threshold derivation.
std::vector<double> jaccard_population(const CooccurrenceStats& stats);

struct RelationEntry {
  std::uint32_t i = 0, j = 0;  // i < j
  RelationClass cls = RelationClass::R1;
  double j_ui = 0;
  double j_bi = 0;
};

struct RelationTable {
  std::uint32_t n_items = 0;
  std::vector<RelationEntry> entries;  // sorted by (i, j)
  // Per-item indexes derived from entries.
  std::vector<std::vector<std::uint32_t>> r2_partners;
  std::vector<std::vector<std::uint32_t>> r4_negatives;

  std::size_t count(RelationClass c) const;
  void rebuild_indexes();
};

// Dual-Jaccard screening. A pair is considered when it co-occurs in at
// least one graph and both items are frequency-qualified in both graphs:
//   R1: J_ui > high_ui and J_bi > high_bi
//   R2: J_ui > high_ui and J_bi < low_bi
//   R3: J_bi > high_bi and J_ui < low_ui
//   R4: J_ui < anti_ui and J_bi < anti_bi
// Pairs matching none are dropped. Inequalities are strict.
RelationTable classify_pairs(const CooccurrenceStats& stats_ui,
                             const CooccurrenceStats& stats_bi,
                             const ThresholdSet& thresholds);

// Truncates each item's R4 negative list to max_per_item by seeded uniform
// sampling without replacement. Deterministic per seed.
void cap_r4_negatives(RelationTable& table, std::uint32_t max_per_item,
                      std::uint64_t seed);

// TSV round-trip: "item_i\titem_j\tclass\tjaccard_ui\tjaccard_bi", floats
// with 6 decimals, header line included.
void write_relations_tsv(const std::filesystem::path& file,
                         const RelationTable& table);
RelationTable read_relations_tsv(const std::filesystem::path& file,
                                 std::uint32_t n_items);

void write_thresholds_json(const std::filesystem::path& file,
                           const ThresholdSet& t);
ThresholdSet read_thresholds_json(const std::filesystem::path& file);

}  // namespace epiccbr
