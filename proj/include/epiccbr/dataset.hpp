#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <vector>

#include "epiccbr/graph.hpp"

namespace epiccbr {

struct EntitySpaces {
  std::uint32_t n_users = 0;
  std::uint32_t n_bundles = 0;
  std::uint32_t n_items = 0;
};

struct DatasetSplits {
  SparseBipartiteGraph ub_train;
  SparseBipartiteGraph ub_valid;
  SparseBipartiteGraph ub_test;
  std::vector<std::uint32_t> cold_bundles;  // sorted; zero train-UB degree
  std::vector<std::uint32_t> warm_bundles;  // sorted; >=1 train-UB edge
};

struct Dataset {
  EntitySpaces spaces;
  SparseBipartiteGraph ui;
  SparseBipartiteGraph bi;
  DatasetSplits splits;
};

// Loads the dataset directory layout:
//   data_size.txt           one line "n_users\tn_bundles\tn_items"
//   user_item.txt           interaction lines "user\titem"
//   bundle_item.txt         affiliation lines "bundle\titem"
//   user_bundle_train.txt   \
//   user_bundle_valid.txt    } interaction lines "user\tbundle"
//   user_bundle_test.txt    /
// Lines are 0-based decimal integers, tab separated, LF terminated.
// Duplicate interactions collapse to weight 1. Cold bundles are those with
// zero train-UB degree that appear in the BI graph.
Dataset load_dataset(const std::filesystem::path& dir);

// Bundle-level 7:1:2-style split: bundles are partitioned by ratio, and all
// UB edges of a valid/test bundle move out of train, so valid/test bundles
// are fully cold. Deterministic per seed.
DatasetSplits make_cold_split(const SparseBipartiteGraph& ub_all,
                              std::array<double, 3> ratios, std::uint64_t seed);

// Writes interaction lines "left\tright" in canonical order.
void write_interactions(const std::filesystem::path& file,
                        const SparseBipartiteGraph& g);

// Single interaction-file loader, exposed for the split tool.
SparseBipartiteGraph load_interactions(const std::filesystem::path& file,
                                       GraphKind kind, std::uint32_t n_left,
                                       std::uint32_t n_right,
                                       bool allow_empty = true);

EntitySpaces load_entity_spaces(const std::filesystem::path& dir);

}  // namespace epiccbr
