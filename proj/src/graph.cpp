#include "epiccbr/graph.hpp"

#include <algorithm>
#include <cassert>

#include "epiccbr/errors.hpp"

namespace epiccbr {

const char* to_string(GraphKind k) {
  switch (k) {
    case GraphKind::UI: return "UI";
    case GraphKind::BI: return "BI";
    case GraphKind::UB: return "UB";
  }
  return "?";
}

SparseBipartiteGraph SparseBipartiteGraph::from_edges(GraphKind kind,
                                                      std::uint32_t n_left,
                                                      std::uint32_t n_right,
                                                      std::vector<Edge> edges,
                                                      bool binary) {
  SparseBipartiteGraph g;
  g.kind_ = kind;
  g.n_left_ = n_left;
  g.n_right_ = n_right;

  for (const Edge& e : edges) {
    if (e.left >= n_left || e.right >= n_right)
      throw InputError("edge endpoint out of range for " +
                       std::string(to_string(kind)) + " graph");
    if (e.weight < 0.0) throw InputError("negative edge weight");
  }

  std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
    return a.left != b.left ? a.left < b.left : a.right < b.right;
  });

  // Collapse duplicates: binary graphs pin the weight at 1, weighted graphs
  // accumulate.
  std::vector<Edge> dedup;
  dedup.reserve(edges.size());
  for (const Edge& e : edges) {
    if (!dedup.empty() && dedup.back().left == e.left &&
        dedup.back().right == e.right) {
      if (!binary) dedup.back().weight += e.weight;
    } else {
      dedup.push_back(e);
      if (binary) dedup.back().weight = 1.0;
    }
  }

  g.l_offsets_.assign(n_left + 1, 0);
  for (const Edge& e : dedup) g.l_offsets_[e.left + 1]++;
  for (std::uint32_t l = 0; l < n_left; ++l) g.l_offsets_[l + 1] += g.l_offsets_[l];
  g.l_cols_.resize(dedup.size());
  g.l_vals_.resize(dedup.size());
  for (std::size_t k = 0; k < dedup.size(); ++k) {
    g.l_cols_[k] = dedup[k].right;
    g.l_vals_[k] = dedup[k].weight;
  }

  // Transpose by counting sort; within each right row the left indices come
  // out ascending because the forward pass above is (left, right) sorted.
  g.r_offsets_.assign(n_right + 1, 0);
  for (const Edge& e : dedup) g.r_offsets_[e.right + 1]++;
  for (std::uint32_t r = 0; r < n_right; ++r) g.r_offsets_[r + 1] += g.r_offsets_[r];
  g.r_cols_.resize(dedup.size());
  g.r_vals_.resize(dedup.size());
  std::vector<std::size_t> fill(g.r_offsets_.begin(), g.r_offsets_.end() - 1);
  for (const Edge& e : dedup) {
    const std::size_t pos = fill[e.right]++;
    g.r_cols_[pos] = e.left;
    g.r_vals_[pos] = e.weight;
  }

  g.left_degrees_.assign(n_left, 0.0);
  g.right_degrees_.assign(n_right, 0.0);
  for (const Edge& e : dedup) {
    g.left_degrees_[e.left] += e.weight;
    g.right_degrees_[e.right] += e.weight;
  }
  return g;
}

std::vector<Edge> SparseBipartiteGraph::edges() const {
  std::vector<Edge> out;
  out.reserve(nnz());
  for (std::uint32_t l = 0; l < n_left_; ++l) {
    const auto cols = left_neighbors(l);
    const auto vals = left_weights(l);
    for (std::size_t k = 0; k < cols.size(); ++k)
      out.push_back({l, cols[k], vals[k]});
  }
  return out;
}

bool SparseBipartiteGraph::has_edge(std::uint32_t l, std::uint32_t r) const {
  const auto cols = left_neighbors(l);
  return std::binary_search(cols.begin(), cols.end(), r);
}

}  // namespace epiccbr
