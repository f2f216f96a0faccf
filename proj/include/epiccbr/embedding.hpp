#pragma once

#include <cstdint>
#include <vector>

#include "epiccbr/dataset.hpp"
#include "epiccbr/matrix.hpp"

namespace epiccbr {

// All trainable tables. Cold-start bundles have no embeddings of their own:
// their rows in bundle_warm are pinned to zero and never updated; their
// representations are always derived from item composition.
struct EmbeddingState {
  Matrix user_warm;
  Matrix item_warm;
  Matrix bundle_warm;
  Matrix user_cold;
  Matrix item_cold;
  std::uint32_t dim = 0;
  int layers = 0;  // propagation depth T
  std::vector<char> bundle_frozen;  // 1 for cold bundles

  bool is_frozen(std::uint32_t b) const { return bundle_frozen[b] != 0; }

  // Applies fn to each table paired with a stable name, in fixed order.
  template <typename Fn>
  void for_each_table(Fn&& fn) {
    fn("user_warm", user_warm);
    fn("item_warm", item_warm);
    fn("bundle_warm", bundle_warm);
    fn("user_cold", user_cold);
    fn("item_cold", item_cold);
  }
  template <typename Fn>
  void for_each_table(Fn&& fn) const {
    fn("user_warm", user_warm);
    fn("item_warm", item_warm);
    fn("bundle_warm", bundle_warm);
    fn("user_cold", user_cold);
    fn("item_cold", item_cold);
  }
};

// Xavier-style init: entries uniform in [-sqrt(3/d), sqrt(3/d)] so each
// row's squared norm has expectation 1. Deterministic per seed. Rows of
// cold bundles are zeroed.
EmbeddingState init_embeddings(const EntitySpaces& spaces, std::uint32_t dim,
                               int layers, std::uint64_t seed,
                               const std::vector<std::uint32_t>& cold_bundles);

}  // namespace epiccbr
