#pragma once

#include <utility>
#include <vector>

#include "gearevo/geometry.hpp"
#include "gearevo/rng.hpp"

namespace gearevo {

// Baseline genome: the step list written out explicitly. Every operator
// keeps the gene count in 2..6 and gear ids in 1..6.
struct DirectGenome {
  std::vector<PlacementStep> genes;

  bool operator==(const DirectGenome&) const = default;
};

struct DirectRates {
  double point = 0.15;   // per-gene: resample gear id or flip placement
  double insert = 0.10;  // per-genome: insert a random gene if length < 6
  double erase = 0.10;   // per-genome: delete a random gene if length > 2

  bool operator==(const DirectRates&) const = default;
};

// Length uniform in {2..6}; each gene uniform over 6 sizes x 2 placements.
DirectGenome random_direct(RngStream& rng);

// Identity onto the step list consumed by place_sequence.
std::vector<PlacementStep> decode_direct(const DirectGenome& genome);

DirectGenome mutate_direct(const DirectGenome& genome, RngStream& rng,
                           const DirectRates& rates);

// One-point crossover. Cut points are drawn independently in each parent
// until both children land in 2..6 genes; after 8 failed attempts the
// children are plain copies of the parents.
std::pair<DirectGenome, DirectGenome> crossover_direct(const DirectGenome& a,
                                                       const DirectGenome& b,
                                                       RngStream& rng);

}  // namespace gearevo
