#include "epiccbr/relations.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <nlohmann/json.hpp>

#include "epiccbr/errors.hpp"
#include "epiccbr/rng.hpp"
#include "epiccbr/util.hpp"

namespace epiccbr {

const char* to_string(RelationClass c) {
  switch (c) {
    case RelationClass::R1: return "R1";
    case RelationClass::R2: return "R2";
    case RelationClass::R3: return "R3";
    case RelationClass::R4: return "R4";
  }
  return "?";
}

RelationClass relation_class_from_string(const std::string& s) {
  if (s == "R1") return RelationClass::R1;
  if (s == "R2") return RelationClass::R2;
  if (s == "R3") return RelationClass::R3;
  if (s == "R4") return RelationClass::R4;
  throw InputError("unknown relation class '" + s + "'");
}

CooccurrenceStats cooccurrence(const SparseBipartiteGraph& graph,
                               std::uint32_t min_freq) {
  CooccurrenceStats stats;
  stats.n_items = graph.n_right();
  stats.min_freq = min_freq;
  stats.item_count.resize(graph.n_right());
  for (std::uint32_t i = 0; i < graph.n_right(); ++i)
    stats.item_count[i] = static_cast<std::uint32_t>(graph.right_count(i));

  // Enumerate co-occurring pairs through the left side: every pair of
  // qualified items adjacent to the same left node shares that neighbor.
  // Equivalent to the nonzeros of R^T R restricted to qualified items.
  std::vector<std::uint32_t> qualified;
  for (std::uint32_t l = 0; l < graph.n_left(); ++l) {
    const auto items = graph.left_neighbors(l);
    qualified.clear();
    for (std::uint32_t i : items)
      if (stats.qualified(i)) qualified.push_back(i);
    for (std::size_t a = 0; a < qualified.size(); ++a)
      for (std::size_t b = a + 1; b < qualified.size(); ++b)
        stats.pairs[pair_key(qualified[a], qualified[b])]++;
  }
  return stats;
}

double jaccard(std::uint32_t c_i, std::uint32_t c_j, std::uint32_t e_ij) {
  if (e_ij > std::min(c_i, c_j))
    throw NumericError("co-occurrence exceeds item occurrence count");
  const std::uint64_t denom =
      static_cast<std::uint64_t>(c_i) + c_j - e_ij;
  if (denom == 0) throw NumericError("jaccard denominator is zero");
  return static_cast<double>(e_ij) / static_cast<double>(denom);
}

std::vector<double> jaccard_population(const CooccurrenceStats& stats) {
  std::vector<double> values;
  values.reserve(stats.pairs.size());
  for (const auto& [key, count] : stats.pairs) {
    const auto i = static_cast<std::uint32_t>(key >> 32);
    const auto j = static_cast<std::uint32_t>(key & 0xffffffffu);
    values.push_back(jaccard(stats.item_count[i], stats.item_count[j], count));
  }
  std::sort(values.begin(), values.end());
  return values;
}

ThresholdSet compute_thresholds(const std::vector<double>& j_values_ui,
                                const std::vector<double>& j_values_bi,
                                std::array<double, 3> percentiles,
                                std::uint32_t item_freq) {
  if (j_values_ui.empty() || j_values_bi.empty())
    throw NumericError(
        "empty Jaccard population: dataset too sparse to mine relations");
  ThresholdSet t;
  t.item_freq = item_freq;
  t.high_ui = percentile_nearest_rank(j_values_ui, percentiles[0]);
  t.low_ui = percentile_nearest_rank(j_values_ui, percentiles[1]);
  t.anti_ui = percentile_nearest_rank(j_values_ui, percentiles[2]);
  t.high_bi = percentile_nearest_rank(j_values_bi, percentiles[0]);
  t.low_bi = percentile_nearest_rank(j_values_bi, percentiles[1]);
  t.anti_bi = percentile_nearest_rank(j_values_bi, percentiles[2]);
  if (!(t.high_ui > t.low_ui && t.low_ui > t.anti_ui))
    throw NumericError("degenerate UI Jaccard distribution: high > low > anti "
                       "ordering violated");
  if (!(t.high_bi > t.low_bi && t.low_bi > t.anti_bi))
    throw NumericError("degenerate BI Jaccard distribution: high > low > anti "
                       "ordering violated");
  return t;
}

std::size_t RelationTable::count(RelationClass c) const {
  return static_cast<std::size_t>(
      std::count_if(entries.begin(), entries.end(),
                    [c](const RelationEntry& e) { return e.cls == c; }));
}

void RelationTable::rebuild_indexes() {
  r2_partners.assign(n_items, {});
  r4_negatives.assign(n_items, {});
  for (const RelationEntry& e : entries) {
    if (e.cls == RelationClass::R2) {
      r2_partners[e.i].push_back(e.j);
      r2_partners[e.j].push_back(e.i);
    } else if (e.cls == RelationClass::R4) {
      r4_negatives[e.i].push_back(e.j);
      r4_negatives[e.j].push_back(e.i);
    }
  }
}

RelationTable classify_pairs(const CooccurrenceStats& stats_ui,
                             const CooccurrenceStats& stats_bi,
                             const ThresholdSet& th) {
  if (stats_ui.n_items != stats_bi.n_items)
    throw InputError("UI/BI co-occurrence stats cover different item spaces");

  RelationTable table;
  table.n_items = stats_ui.n_items;

  // Candidate pairs co-occur in at least one graph; both items must pass the
  // frequency bar in both graphs, otherwise one of the two Jaccard values is
  // unreliable.
  std::vector<std::uint64_t> keys;
  keys.reserve(stats_ui.pairs.size() + stats_bi.pairs.size());
  for (const auto& [key, _] : stats_ui.pairs) keys.push_back(key);
  for (const auto& [key, _] : stats_bi.pairs)
    if (!stats_ui.pairs.count(key)) keys.push_back(key);
  std::sort(keys.begin(), keys.end());

  for (const std::uint64_t key : keys) {
    const auto i = static_cast<std::uint32_t>(key >> 32);
    const auto j = static_cast<std::uint32_t>(key & 0xffffffffu);
    if (!stats_ui.qualified(i) || !stats_ui.qualified(j)) continue;
    if (!stats_bi.qualified(i) || !stats_bi.qualified(j)) continue;

    const std::uint32_t e_ui = stats_ui.pair_count(i, j);
    const std::uint32_t e_bi = stats_bi.pair_count(i, j);
    const double j_ui =
        e_ui == 0 ? 0.0 : jaccard(stats_ui.item_count[i], stats_ui.item_count[j], e_ui);
    const double j_bi =
        e_bi == 0 ? 0.0 : jaccard(stats_bi.item_count[i], stats_bi.item_count[j], e_bi);

    RelationClass cls;
    if (j_ui > th.high_ui && j_bi > th.high_bi) {
      cls = RelationClass::R1;
    } else if (j_ui > th.high_ui && j_bi < th.low_bi) {
      cls = RelationClass::R2;
    } else if (j_bi > th.high_bi && j_ui < th.low_ui) {
      cls = RelationClass::R3;
    } else if (j_ui < th.anti_ui && j_bi < th.anti_bi) {
      cls = RelationClass::R4;
    } else {
      continue;
    }
    table.entries.push_back({i, j, cls, j_ui, j_bi});
  }
  table.rebuild_indexes();
  return table;
}

void cap_r4_negatives(RelationTable& table, std::uint32_t max_per_item,
                      std::uint64_t seed) {
  if (max_per_item == 0) throw InputError("r4 cap must be positive");
  for (std::uint32_t i = 0; i < table.n_items; ++i) {
    auto& list = table.r4_negatives[i];
    if (list.size() <= max_per_item) continue;
    // Partial Fisher-Yates with a per-item stream keeps the result
    // independent of processing order.
    Rng rng(derive_seed(seed, {0x84c4ULL, i}));
    for (std::uint32_t k = 0; k < max_per_item; ++k) {
      const auto pick =
          k + static_cast<std::uint32_t>(rng.uniform_int(list.size() - k));
      std::swap(list[k], list[pick]);
    }
    list.resize(max_per_item);
    std::sort(list.begin(), list.end());
  }
}

void write_relations_tsv(const std::filesystem::path& file,
                         const RelationTable& table) {
  std::ofstream out(file, std::ios::binary);
  if (!out) throw InputError("cannot write " + file.string());
  out << "item_i\titem_j\tclass\tjaccard_ui\tjaccard_bi\n";
  for (const RelationEntry& e : table.entries) {
    out << e.i << '\t' << e.j << '\t' << to_string(e.cls) << '\t'
        << format_fixed(e.j_ui, 6) << '\t' << format_fixed(e.j_bi, 6) << '\n';
  }
}

RelationTable read_relations_tsv(const std::filesystem::path& file,
                                 std::uint32_t n_items) {
  std::ifstream in(file);
  if (!in) throw InputError("missing file: " + file.string());
  RelationTable table;
  table.n_items = n_items;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (lineno == 1 && line.rfind("item_i\t", 0) == 0) continue;  // header
    if (line.empty()) continue;
    const auto parts = split_string(line, '\t');
    if (parts.size() != 5)
      throw ParseError(file.string(), lineno, "expected 5 tab-separated fields");
    RelationEntry e;
    e.i = static_cast<std::uint32_t>(std::stoul(parts[0]));
    e.j = static_cast<std::uint32_t>(std::stoul(parts[1]));
    e.cls = relation_class_from_string(parts[2]);
    e.j_ui = std::stod(parts[3]);
    e.j_bi = std::stod(parts[4]);
    if (e.i >= n_items || e.j >= n_items)
      throw ParseError(file.string(), lineno, "item index out of range");
    table.entries.push_back(e);
  }
  table.rebuild_indexes();
  return table;
}

void write_thresholds_json(const std::filesystem::path& file,
                           const ThresholdSet& t) {
  nlohmann::json j{{"theta_high_ui", t.high_ui}, {"theta_low_ui", t.low_ui},
                   {"theta_anti_ui", t.anti_ui}, {"theta_high_bi", t.high_bi},
                   {"theta_low_bi", t.low_bi},   {"theta_anti_bi", t.anti_bi},
                   {"theta_item_freq", t.item_freq}};
  std::ofstream out(file, std::ios::binary);
  if (!out) throw InputError("cannot write " + file.string());
  out << j.dump(2) << '\n';
}

ThresholdSet read_thresholds_json(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw InputError("missing file: " + file.string());
  nlohmann::json j;
  in >> j;
  ThresholdSet t;
  t.high_ui = j.at("theta_high_ui").get<double>();
  t.low_ui = j.at("theta_low_ui").get<double>();
  t.anti_ui = j.at("theta_anti_ui").get<double>();
  t.high_bi = j.at("theta_high_bi").get<double>();
  t.low_bi = j.at("theta_low_bi").get<double>();
  t.anti_bi = j.at("theta_anti_bi").get<double>();
  t.item_freq = j.at("theta_item_freq").get<std::uint32_t>();
  return t;
}

}  // namespace epiccbr
