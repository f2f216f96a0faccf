#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace epiccbr {

enum class GraphKind { UI, BI, UB };

const char* to_string(GraphKind k);

struct Edge {
  std::uint32_t left = 0;
  std::uint32_t right = 0;
  double weight = 1.0;
};

// Weighted bipartite graph stored as CSR in both directions, with cached
// weighted degrees and neighbor counts. Immutable after construction and
// safe to share across threads read-only.
class SparseBipartiteGraph {
 public:
  SparseBipartiteGraph() = default;

  // Deduplicates (left,right) pairs. binary=true collapses duplicates to
  // weight 1 (implicit feedback); binary=false sums duplicate weights.
  static SparseBipartiteGraph from_edges(GraphKind kind, std::uint32_t n_left,
                                         std::uint32_t n_right,
                                         std::vector<Edge> edges,
                                         bool binary = true);

  GraphKind kind() const { return kind_; }
  std::uint32_t n_left() const { return n_left_; }
  std::uint32_t n_right() const { return n_right_; }
  std::size_t nnz() const { return l_cols_.size(); }

  // Neighbors of a left node, column indices ascending.
  std::span<const std::uint32_t> left_neighbors(std::uint32_t l) const {
    return {l_cols_.data() + l_offsets_[l], l_offsets_[l + 1] - l_offsets_[l]};
  }
  std::span<const double> left_weights(std::uint32_t l) const {
    return {l_vals_.data() + l_offsets_[l], l_offsets_[l + 1] - l_offsets_[l]};
  }
  std::span<const std::uint32_t> right_neighbors(std::uint32_t r) const {
    return {r_cols_.data() + r_offsets_[r], r_offsets_[r + 1] - r_offsets_[r]};
  }
  std::span<const double> right_weights(std::uint32_t r) const {
    return {r_vals_.data() + r_offsets_[r], r_offsets_[r + 1] - r_offsets_[r]};
  }

  // Weighted degrees (row / column sums).
  double left_degree(std::uint32_t l) const { return left_degrees_[l]; }
  double right_degree(std::uint32_t r) const { return right_degrees_[r]; }
  const std::vector<double>& left_degrees() const { return left_degrees_; }
  const std::vector<double>& right_degrees() const { return right_degrees_; }

  // Unweighted neighbor counts.
  std::size_t left_count(std::uint32_t l) const {
    return l_offsets_[l + 1] - l_offsets_[l];
  }
  std::size_t right_count(std::uint32_t r) const {
    return r_offsets_[r + 1] - r_offsets_[r];
  }

  // Materialized edge list in canonical (left, right) order.
  std::vector<Edge> edges() const;

  bool has_edge(std::uint32_t l, std::uint32_t r) const;

 private:
  GraphKind kind_ = GraphKind::UI;
  std::uint32_t n_left_ = 0;
  std::uint32_t n_right_ = 0;
  std::vector<std::size_t> l_offsets_;
  std::vector<std::uint32_t> l_cols_;
  std::vector<double> l_vals_;
  std::vector<std::size_t> r_offsets_;
  std::vector<std::uint32_t> r_cols_;
  std::vector<double> r_vals_;
  std::vector<double> left_degrees_;
  std::vector<double> right_degrees_;
};

}  // namespace epiccbr
