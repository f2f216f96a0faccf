#include "epiccbr/embedding.hpp"

#include <cmath>
#include <cstring>

#include "epiccbr/errors.hpp"
#include "epiccbr/rng.hpp"

namespace epiccbr {

namespace {

void fill_xavier(Matrix& m, double bound, Rng& rng) {
  for (double& v : m.data()) v = rng.uniform(-bound, bound);
}

}  // namespace

EmbeddingState init_embeddings(const EntitySpaces& spaces, std::uint32_t dim,
                               int layers, std::uint64_t seed,
                               const std::vector<std::uint32_t>& cold_bundles) {
  if (dim == 0) throw InputError("embedding dimension must be positive");
  if (layers < 1) throw InputError("propagation depth must be >= 1");
  if (spaces.n_users == 0 || spaces.n_bundles == 0 || spaces.n_items == 0)
    throw InputError("entity spaces must be nonempty");

  EmbeddingState s;
  s.dim = dim;
  s.layers = layers;
  s.user_warm = Matrix(spaces.n_users, dim);
  s.item_warm = Matrix(spaces.n_items, dim);
  s.bundle_warm = Matrix(spaces.n_bundles, dim);
  s.user_cold = Matrix(spaces.n_users, dim);
  s.item_cold = Matrix(spaces.n_items, dim);

  const double bound = std::sqrt(3.0 / static_cast<double>(dim));
  int table_idx = 0;
  s.for_each_table([&](const char*, Matrix& t) {
    Rng rng(derive_seed(seed, {0x1417ULL, static_cast<std::uint64_t>(table_idx++)}));
    fill_xavier(t, bound, rng);
  });

  s.bundle_frozen.assign(spaces.n_bundles, 0);
  for (const std::uint32_t b : cold_bundles) {
    if (b >= spaces.n_bundles) throw InputError("cold bundle index out of range");
    s.bundle_frozen[b] = 1;
    std::memset(s.bundle_warm.row(b), 0, sizeof(double) * dim);
  }
  return s;
}

}  // namespace epiccbr
