#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace epiccbr {

// Nearest-rank percentile: the value at 1-based index ceil(p/100 * n) of the
// ascending-sorted sample. Exact and interpolation-free, so identical across
// platforms. p in [0, 100]; the sample must be nonempty.
double percentile_nearest_rank(std::vector<double> values, double p);

// Nearest-rank percentile over an already ascending-sorted sample.
double percentile_nearest_rank_sorted(const std::vector<double>& sorted, double p);

// FNV-1a 64-bit over raw bytes.
std::uint64_t fnv1a64(const void* data, std::size_t len,
                      std::uint64_t seed = 0xcbf29ce484222325ULL);
std::uint64_t fnv1a64(std::string_view s);

std::string to_hex(std::uint64_t v);

// FNV-1a hash of a file's contents, hex-encoded. Throws InputError if the
// file cannot be read.
std::string hash_file(const std::filesystem::path& p);

// Fixed-point decimal formatting ("%.6f" style) used by the TSV dumps.
std::string format_fixed(double v, int decimals);

std::vector<std::string> split_string(const std::string& s, char sep);

}  // namespace epiccbr
