#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "gearevo/direct.hpp"
#include "gearevo/geometry.hpp"
#include "gearevo/novelty.hpp"
#include "gearevo/rng.hpp"
#include "gearevo/rnn.hpp"

namespace gearevo {

// Purposes for deriving independent rng streams from the master seed.
// Adding draws to one stream can never shift the others.
inline constexpr std::uint64_t kRngPurposeInit = 0;
inline constexpr std::uint64_t kRngPurposeSelection = 1;
inline constexpr std::uint64_t kRngPurposeVariation = 2;

struct RnnMutation {
  double rate = 0.1;   // per-gene perturbation probability
  double sigma = 0.1;  // Gaussian step size

  bool operator==(const RnnMutation&) const = default;
};

struct EvolutionConfig {
  EncodingKind encoding = EncodingKind::Rnn;
  int pop_size = 150;
  int generations = 40;
  int tournament_size = 3;
  double crossover_rate = 0.75;
  RnnMutation rnn_mutation;
  DirectRates direct_rates;
  int elitism = 1;
  std::uint64_t seed = 0;
  GeometryConfig geometry;
  bool normalize_novelty = false;

  void validate() const;  // throws ConfigError

  bool operator==(const EvolutionConfig&) const = default;
};

struct GenerationStats {
  int generation = 0;
  double best_fitness = 0.0;
  double mean_fitness = 0.0;
  double feasible_fraction = 0.0;
  int elite_coaxial_gears = 0;

  bool operator==(const GenerationStats&) const = default;
};

struct RunReport {
  std::uint64_t seed = 0;
  EvolutionConfig config;  // echo of the inputs the run actually used
  std::vector<GenerationStats> per_generation;

  bool operator==(const RunReport&) const = default;
};

struct EvolveResult {
  Archive archive;
  RunReport report;
};

// Runs the full loop: init population, then per generation decode, place,
// score novelty, assign fitness, archive the best individual, and breed the
// next population (tournament parents, crossover then mutation, elites
// carried unchanged). Both encodings run through the same driver body; only
// the genome operations differ. Fully determined by the config.
EvolveResult evolve(const EvolutionConfig& config);

// Draws `count` parent indices. Each slot samples `k` distinct indices
// uniformly and keeps the fittest (ties break to the lowest index).
std::vector<std::size_t> select_tournament(std::span<const double> fitness,
                                           int k, std::size_t count,
                                           RngStream& rng);

// Each gene independently gains Gaussian(0, sigma) noise with probability
// `rate`; values are not clamped.
RnnGenome mutate_rnn(const RnnGenome& genome, RngStream& rng, double rate,
                     double sigma);

// Uniform crossover: every gene position swaps between the two children
// with probability 0.5.
std::pair<RnnGenome, RnnGenome> crossover_rnn(const RnnGenome& a,
                                              const RnnGenome& b,
                                              RngStream& rng);

}  // namespace gearevo
