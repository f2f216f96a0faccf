#include "epiccbr/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <string>

#include "epiccbr/errors.hpp"
#include "epiccbr/rng.hpp"

namespace epiccbr {

namespace {

std::uint32_t parse_index(std::string_view tok, const std::string& file,
                          std::size_t line) {
  std::uint32_t v = 0;
  const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (res.ec != std::errc{} || res.ptr != tok.data() + tok.size())
    throw ParseError(file, line, "expected nonnegative integer, got '" +
                                     std::string(tok) + "'");
  return v;
}

void require_file(const std::filesystem::path& p) {
  if (!std::filesystem::exists(p))
    throw InputError("missing file: " + p.string());
}

}  // namespace

EntitySpaces load_entity_spaces(const std::filesystem::path& dir) {
  const auto path = dir / "data_size.txt";
  require_file(path);
  std::ifstream in(path);
  std::string line;
  if (!std::getline(in, line))
    throw ParseError(path.string(), 1, "empty data_size.txt");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const auto parts = [&] {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    const std::string_view sv(line);
    while (true) {
      const auto pos = sv.find('\t', start);
      out.push_back(sv.substr(start, pos - start));
      if (pos == std::string_view::npos) break;
      start = pos + 1;
    }
    return out;
  }();
  if (parts.size() != 3)
    throw ParseError(path.string(), 1,
                     "expected 'n_users\\tn_bundles\\tn_items'");
  EntitySpaces s;
  s.n_users = parse_index(parts[0], path.string(), 1);
  s.n_bundles = parse_index(parts[1], path.string(), 1);
  s.n_items = parse_index(parts[2], path.string(), 1);
  if (s.n_users == 0 || s.n_bundles == 0 || s.n_items == 0)
    throw ParseError(path.string(), 1, "entity counts must be positive");
  return s;
}

SparseBipartiteGraph load_interactions(const std::filesystem::path& file,
                                       GraphKind kind, std::uint32_t n_left,
                                       std::uint32_t n_right, bool allow_empty) {
  require_file(file);
  std::ifstream in(file);
  std::vector<Edge> edges;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos)
      throw ParseError(file.string(), lineno, "expected 'left\\tright'");
    const std::uint32_t l =
        parse_index(std::string_view(line).substr(0, tab), file.string(), lineno);
    const std::uint32_t r =
        parse_index(std::string_view(line).substr(tab + 1), file.string(), lineno);
    if (l >= n_left)
      throw ParseError(file.string(), lineno,
                       "left index " + std::to_string(l) + " >= declared count " +
                           std::to_string(n_left));
    if (r >= n_right)
      throw ParseError(file.string(), lineno,
                       "right index " + std::to_string(r) + " >= declared count " +
                           std::to_string(n_right));
    edges.push_back({l, r, 1.0});
  }
  if (edges.empty() && !allow_empty)
    throw InputError("no interactions in " + file.string());
  return SparseBipartiteGraph::from_edges(kind, n_left, n_right, std::move(edges),
                                          /*binary=*/true);
}

Dataset load_dataset(const std::filesystem::path& dir) {
  Dataset d;
  d.spaces = load_entity_spaces(dir);
  const auto& s = d.spaces;
  d.ui = load_interactions(dir / "user_item.txt", GraphKind::UI, s.n_users,
                           s.n_items);
  d.bi = load_interactions(dir / "bundle_item.txt", GraphKind::BI, s.n_bundles,
                           s.n_items);
  d.splits.ub_train = load_interactions(dir / "user_bundle_train.txt",
                                        GraphKind::UB, s.n_users, s.n_bundles,
                                        /*allow_empty=*/false);
  d.splits.ub_valid = load_interactions(dir / "user_bundle_valid.txt",
                                        GraphKind::UB, s.n_users, s.n_bundles);
  d.splits.ub_test = load_interactions(dir / "user_bundle_test.txt",
                                       GraphKind::UB, s.n_users, s.n_bundles);

  for (std::uint32_t b = 0; b < s.n_bundles; ++b) {
    if (d.splits.ub_train.right_count(b) > 0) {
      d.splits.warm_bundles.push_back(b);
    } else if (d.bi.left_count(b) > 0) {
      d.splits.cold_bundles.push_back(b);
    }
  }

  // Every bundle carrying valid/test positives must be representable: either
  // warm (train edges) or cold (item composition known).
  for (const auto* g : {&d.splits.ub_valid, &d.splits.ub_test}) {
    for (std::uint32_t b = 0; b < s.n_bundles; ++b) {
      if (g->right_count(b) > 0 && d.splits.ub_train.right_count(b) == 0 &&
          d.bi.left_count(b) == 0)
        throw InputError("bundle " + std::to_string(b) +
                         " appears in valid/test but has no train edges and no "
                         "items");
    }
  }
  return d;
}

DatasetSplits make_cold_split(const SparseBipartiteGraph& ub_all,
                              std::array<double, 3> ratios, std::uint64_t seed) {
  const double sum = ratios[0] + ratios[1] + ratios[2];
  if (std::abs(sum - 1.0) > 1e-9)
    throw InputError("split ratios must sum to 1");
  const std::uint32_t n_bundles = ub_all.n_right();
  if (n_bundles < 10) throw InputError("need at least 10 bundles to split");

  std::vector<std::uint32_t> order(n_bundles);
  std::iota(order.begin(), order.end(), 0u);
  Rng rng(derive_seed(seed, {0x5911007ULL}));
  for (std::uint32_t i = n_bundles - 1; i > 0; --i) {
    const auto j = static_cast<std::uint32_t>(rng.uniform_int(i + 1));
    std::swap(order[i], order[j]);
  }

  const auto n_valid = static_cast<std::uint32_t>(ratios[1] * n_bundles);
  const auto n_test = static_cast<std::uint32_t>(ratios[2] * n_bundles);
  // order[0 .. n-valid-test) -> train, then valid, then test
  enum class Part : std::uint8_t { Train, Valid, Test };
  std::vector<Part> part(n_bundles, Part::Train);
  for (std::uint32_t k = 0; k < n_valid; ++k)
    part[order[n_bundles - n_valid - n_test + k]] = Part::Valid;
  for (std::uint32_t k = 0; k < n_test; ++k)
    part[order[n_bundles - n_test + k]] = Part::Test;

  std::vector<Edge> train, valid, test;
  for (const Edge& e : ub_all.edges()) {
    switch (part[e.right]) {
      case Part::Train: train.push_back(e); break;
      case Part::Valid: valid.push_back(e); break;
      case Part::Test: test.push_back(e); break;
    }
  }

  DatasetSplits out;
  out.ub_train = SparseBipartiteGraph::from_edges(GraphKind::UB, ub_all.n_left(),
                                                  n_bundles, std::move(train));
  out.ub_valid = SparseBipartiteGraph::from_edges(GraphKind::UB, ub_all.n_left(),
                                                  n_bundles, std::move(valid));
  out.ub_test = SparseBipartiteGraph::from_edges(GraphKind::UB, ub_all.n_left(),
                                                 n_bundles, std::move(test));
  for (std::uint32_t b = 0; b < n_bundles; ++b) {
    if (out.ub_train.right_count(b) > 0)
      out.warm_bundles.push_back(b);
    else if (ub_all.right_count(b) > 0)
      out.cold_bundles.push_back(b);
  }
  return out;
}

void write_interactions(const std::filesystem::path& file,
                        const SparseBipartiteGraph& g) {
  std::ofstream out(file, std::ios::binary);
  if (!out) throw InputError("cannot write " + file.string());
  for (const Edge& e : g.edges())
    out << e.left << '\t' << e.right << '\n';
}

}  // namespace epiccbr
