#include "epiccbr/popularity.hpp"

#include <algorithm>
#include <fstream>
#include <limits>

#include "epiccbr/errors.hpp"
#include "epiccbr/util.hpp"

namespace epiccbr {

PopularityProfile item_popularity(const SparseBipartiteGraph& ui,
                                  const SparseBipartiteGraph& bi,
                                  const SparseBipartiteGraph& ub_train) {
  if (ui.n_right() != bi.n_right())
    throw InputError("UI and BI graphs disagree on the item space");
  if (ub_train.nnz() == 0) throw InputError("empty UB training graph");
  const std::uint32_t n_items = ui.n_right();
  const std::uint32_t n_bundles = bi.n_left();

  PopularityProfile p;
  p.pop_ui.resize(n_items);
  for (std::uint32_t i = 0; i < n_items; ++i)
    p.pop_ui[i] = static_cast<double>(ui.right_count(i));

  // Bundle interaction counts over training data, P90-clamped to weights.
  std::vector<double> counts(n_bundles);
  for (std::uint32_t b = 0; b < n_bundles; ++b)
    counts[b] = static_cast<double>(ub_train.right_count(b));
  p.bundle_p90 = percentile_nearest_rank(counts, 90.0);
  if (p.bundle_p90 <= 0.0)
    throw NumericError("90th percentile of bundle interaction counts is zero");
  p.bundle_weight.resize(n_bundles);
  for (std::uint32_t b = 0; b < n_bundles; ++b)
    p.bundle_weight[b] = std::min(counts[b] / p.bundle_p90, 1.0);

  p.pop_bi.assign(n_items, 0.0);
  for (std::uint32_t b = 0; b < n_bundles; ++b)
    for (const std::uint32_t i : bi.left_neighbors(b))
      p.pop_bi[i] += p.bundle_weight[b];

  p.pop_total.resize(n_items);
  for (std::uint32_t i = 0; i < n_items; ++i)
    p.pop_total[i] = p.pop_ui[i] + p.pop_bi[i];
  return p;
}

void longtail_scale(PopularityProfile& p, const std::array<double, 5>& alpha_k,
                    bool cumulative) {
  p.alpha_k = alpha_k;
  p.cumulative = cumulative;
  std::vector<double> sorted = p.pop_total;
  std::sort(sorted.begin(), sorted.end());
  for (int k = 0; k < 5; ++k)
    p.anchors[k] = percentile_nearest_rank_sorted(sorted, 50.0 + 10.0 * k);
  p.median = p.anchors[0];
  p.pop_max = sorted.back();

  // Interval bounds: lower = anchors, upper = next anchor, top interval
  // capped by the maximum observed popularity.
  std::array<double, 5> lo{}, hi{};
  for (int k = 0; k < 5; ++k) {
    lo[k] = p.anchors[k];
    hi[k] = k < 4 ? p.anchors[k + 1] : p.pop_max;
  }

  const double m = p.median;
  p.pop_adj.resize(p.pop_total.size());
  for (std::size_t i = 0; i < p.pop_total.size(); ++i) {
    const double pop = p.pop_total[i];
    double factor = 1.0;
    double extra = 0.0;
    for (int k = 0; k < 5; ++k) {
      if (pop > lo[k] && pop <= hi[k] && hi[k] > lo[k]) {
        const double frac = (pop - lo[k]) / (hi[k] - lo[k]);
        if (cumulative) {
          for (int j = 0; j < k; ++j) factor += alpha_k[j];
        }
        factor += alpha_k[k] * frac;
        break;
      }
    }
    if (!cumulative && pop > p.anchors[4]) extra = m;
    p.pop_adj[i] = m * factor + extra;
  }
}

namespace {

SparseBipartiteGraph reweight_bi(const SparseBipartiteGraph& bi,
                                 const std::vector<double>& pop_adj) {
  if (pop_adj.size() != bi.n_right())
    throw InputError("popularity vector does not match item space");
  double floor = std::numeric_limits<double>::infinity();
  for (const double v : pop_adj) {
    if (v < 0.0) throw NumericError("negative adjusted popularity");
    if (v > 0.0) floor = std::min(floor, v);
  }
  if (!std::isfinite(floor))
    throw NumericError("all adjusted popularities are zero; cannot weight the "
                       "BI graph");

  std::vector<Edge> edges;
  edges.reserve(bi.nnz());
  for (const Edge& e : bi.edges()) {
    const double w = pop_adj[e.right] > 0.0 ? pop_adj[e.right] : floor;
    edges.push_back({e.left, e.right, w});
  }
  return SparseBipartiteGraph::from_edges(GraphKind::BI, bi.n_left(),
                                          bi.n_right(), std::move(edges),
                                          /*binary=*/false);
}

}  // namespace

SparseBipartiteGraph build_popularity_bi(const SparseBipartiteGraph& bi,
                                         const PopularityProfile& profile) {
  if (profile.pop_adj.empty())
    throw InputError("pop_adj not computed; run longtail_scale first");
  return reweight_bi(bi, profile.pop_adj);
}

SparseBipartiteGraph build_popularity_bi(const SparseBipartiteGraph& bi,
                                         const std::vector<double>& pop_adj) {
  return reweight_bi(bi, pop_adj);
}

void write_popularity_tsv(const std::filesystem::path& file,
                          const PopularityProfile& p) {
  std::ofstream out(file, std::ios::binary);
  if (!out) throw InputError("cannot write " + file.string());
  out << "item\tpop_ui\tpop_bi\tpop_adj\n";
  for (std::size_t i = 0; i < p.pop_total.size(); ++i) {
    out << i << '\t' << format_fixed(p.pop_ui[i], 6) << '\t'
        << format_fixed(p.pop_bi[i], 6) << '\t'
        << format_fixed(p.pop_adj.empty() ? 0.0 : p.pop_adj[i], 6) << '\n';
  }
}

std::vector<double> read_popularity_adj_tsv(const std::filesystem::path& file,
                                            std::uint32_t n_items) {
  std::ifstream in(file);
  if (!in) throw InputError("missing file: " + file.string());
  std::vector<double> pop_adj(n_items, 0.0);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (lineno == 1 && line.rfind("item\t", 0) == 0) continue;
    if (line.empty()) continue;
    const auto parts = split_string(line, '\t');
    if (parts.size() != 4)
      throw ParseError(file.string(), lineno, "expected 4 tab-separated fields");
    const auto i = static_cast<std::uint32_t>(std::stoul(parts[0]));
    if (i >= n_items)
      throw ParseError(file.string(), lineno, "item index out of range");
    pop_adj[i] = std::stod(parts[3]);
  }
  return pop_adj;
}

}  // namespace epiccbr
