#include "gearevo/direct.hpp"

namespace gearevo {

namespace {

constexpr std::size_t kMinGenes = 2;
constexpr std::size_t kMaxGenes = 6;

PlacementStep random_gene(RngStream& rng) {
  PlacementStep g;
  g.gear_id = static_cast<int>(rng.uniform_index(GearCatalog::kSize)) + 1;
  g.placement =
      rng.uniform_index(2) == 0 ? Placement::Linear : Placement::Coaxial;
  return g;
}

}  // namespace

DirectGenome random_direct(RngStream& rng) {
  DirectGenome genome;
  const std::size_t len =
      kMinGenes + rng.uniform_index(kMaxGenes - kMinGenes + 1);
  genome.genes.reserve(len);
  for (std::size_t i = 0; i < len; ++i)
    genome.genes.push_back(random_gene(rng));
  return genome;
}

std::vector<PlacementStep> decode_direct(const DirectGenome& genome) {
  return genome.genes;
}

DirectGenome mutate_direct(const DirectGenome& genome, RngStream& rng,
                           const DirectRates& rates) {
  DirectGenome out = genome;
  for (auto& gene : out.genes) {
    if (!rng.bernoulli(rates.point)) continue;
    if (rng.uniform_index(2) == 0) {
      gene.gear_id = static_cast<int>(rng.uniform_index(GearCatalog::kSize)) + 1;
    } else {
      gene.placement = gene.placement == Placement::Linear
                           ? Placement::Coaxial
                           : Placement::Linear;
    }
  }
  if (out.genes.size() < kMaxGenes && rng.bernoulli(rates.insert)) {
    const std::size_t at = rng.uniform_index(out.genes.size() + 1);
    out.genes.insert(out.genes.begin() + static_cast<std::ptrdiff_t>(at),
                     random_gene(rng));
  }
  if (out.genes.size() > kMinGenes && rng.bernoulli(rates.erase)) {
    const std::size_t at = rng.uniform_index(out.genes.size());
    out.genes.erase(out.genes.begin() + static_cast<std::ptrdiff_t>(at));
  }
  return out;
}

std::pair<DirectGenome, DirectGenome> crossover_direct(const DirectGenome& a,
                                                       const DirectGenome& b,
                                                       RngStream& rng) {
  const std::size_t na = a.genes.size();
  const std::size_t nb = b.genes.size();
  for (int attempt = 0; attempt < 8; ++attempt) {
    const std::size_t ca = 1 + rng.uniform_index(na - 1);
    const std::size_t cb = 1 + rng.uniform_index(nb - 1);
    const std::size_t len1 = ca + (nb - cb);
    const std::size_t len2 = cb + (na - ca);
    if (len1 < kMinGenes || len1 > kMaxGenes || len2 < kMinGenes ||
        len2 > kMaxGenes)
      continue;
    DirectGenome c1;
    DirectGenome c2;
    c1.genes.assign(a.genes.begin(), a.genes.begin() + static_cast<std::ptrdiff_t>(ca));
    c1.genes.insert(c1.genes.end(), b.genes.begin() + static_cast<std::ptrdiff_t>(cb),
                    b.genes.end());
    c2.genes.assign(b.genes.begin(), b.genes.begin() + static_cast<std::ptrdiff_t>(cb));
    c2.genes.insert(c2.genes.end(), a.genes.begin() + static_cast<std::ptrdiff_t>(ca),
                    a.genes.end());
    return {std::move(c1), std::move(c2)};
  }
  return {a, b};
}

}  // namespace gearevo
