#include "gearevo/evolve.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>

#include "gearevo/errors.hpp"

namespace gearevo {
namespace {

bool valid_probability(double p) { return std::isfinite(p) && p >= 0.0 && p <= 1.0; }

int coaxial_gear_count(const Mechanism& mech) {
  int n = 0;
  for (const auto& g : mech.gears) {
    if (g.placement == Placement::Coaxial) ++n;
  }
  return n;
}

// Genome operations behind one interface so the driver below stays byte-for-
// byte identical for both encodings.
struct RnnTraits {
  using Genome = RnnGenome;
  static constexpr EncodingKind kKind = EncodingKind::Rnn;

  static Genome random(RngStream& rng, const EvolutionConfig&) {
    return random_genome(rng);
  }
  static std::vector<PlacementStep> decode_steps(
      const Genome& g, std::optional<ActivationTrace>& trace) {
    DecodeResult r = decode(g);
    trace = std::move(r.trace);
    return std::move(r.steps);
  }
  static std::pair<Genome, Genome> crossover(const Genome& a, const Genome& b,
                                             RngStream& rng,
                                             const EvolutionConfig&) {
    return crossover_rnn(a, b, rng);
  }
  static Genome mutate(const Genome& g, RngStream& rng,
                       const EvolutionConfig& cfg) {
    return mutate_rnn(g, rng, cfg.rnn_mutation.rate, cfg.rnn_mutation.sigma);
  }
};

struct DirectTraits {
  using Genome = DirectGenome;
  static constexpr EncodingKind kKind = EncodingKind::Direct;

  static Genome random(RngStream& rng, const EvolutionConfig&) {
    return random_direct(rng);
  }
  static std::vector<PlacementStep> decode_steps(
      const Genome& g, std::optional<ActivationTrace>&) {
    return decode_direct(g);
  }
  static std::pair<Genome, Genome> crossover(const Genome& a, const Genome& b,
                                             RngStream& rng,
                                             const EvolutionConfig&) {
    return crossover_direct(a, b, rng);
  }
  static Genome mutate(const Genome& g, RngStream& rng,
                       const EvolutionConfig& cfg) {
    return mutate_direct(g, rng, cfg.direct_rates);
  }
};

template <class Traits>
EvolveResult evolve_impl(const EvolutionConfig& cfg) {
  using Genome = typename Traits::Genome;

  RngStream init_rng = RngStream::derive(cfg.seed, kRngPurposeInit);
  RngStream select_rng = RngStream::derive(cfg.seed, kRngPurposeSelection);
  RngStream vary_rng = RngStream::derive(cfg.seed, kRngPurposeVariation);

  const std::size_t pop_size = static_cast<std::size_t>(cfg.pop_size);
  std::vector<Genome> pop;
  pop.reserve(pop_size);
  for (std::size_t i = 0; i < pop_size; ++i) {
    pop.push_back(Traits::random(init_rng, cfg));
  }

  EvolveResult result;
  result.report.seed = cfg.seed;
  result.report.config = cfg;

  for (int gen = 0; gen < cfg.generations; ++gen) {
    // Evaluation is pure per-individual work; no rng is touched here.
    std::vector<Mechanism> mechs(pop_size);
    std::vector<std::optional<ActivationTrace>> traces(pop_size);
    std::vector<NoveltyVector> vectors(pop_size);
    std::vector<FeasibilityReport> feasibility(pop_size);
    for (std::size_t i = 0; i < pop_size; ++i) {
      const auto steps = Traits::decode_steps(pop[i], traces[i]);
      mechs[i] = place_sequence(steps, cfg.geometry);
      feasibility[i] = mechs[i].feasibility;
      vectors[i] = novelty_vector(mechs[i]);
    }

    const std::vector<NoveltyVector> archive_vectors =
        result.archive.novelty_vectors();
    const FitnessResult scored =
        assign_fitness(vectors, feasibility, archive_vectors,
                       {.normalize = cfg.normalize_novelty});

    const std::size_t best = best_index(scored.fitness);
    ArchiveEntry entry;
    entry.generation = gen;
    entry.encoding = Traits::kKind;
    entry.genome = pop[best];
    entry.mechanism = mechs[best];
    entry.novelty = vectors[best];
    entry.novelty_score = scored.novelty_scores[best];
    entry.fitness = scored.fitness[best];
    entry.trace = traces[best];
    result.archive.append(std::move(entry));

    GenerationStats stats;
    stats.generation = gen;
    stats.best_fitness = scored.fitness[best];
    stats.mean_fitness =
        std::accumulate(scored.fitness.begin(), scored.fitness.end(), 0.0) /
        static_cast<double>(pop_size);
    std::size_t feasible = 0;
    for (const auto& f : feasibility) feasible += f.feasible ? 1 : 0;
    stats.feasible_fraction =
        static_cast<double>(feasible) / static_cast<double>(pop_size);
    stats.elite_coaxial_gears = coaxial_gear_count(mechs[best]);
    result.report.per_generation.push_back(stats);

    if (gen + 1 == cfg.generations) break;

    // Elites: top `elitism` by fitness, ties toward the lower index.
    std::vector<std::size_t> order(pop_size);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) {
                       return scored.fitness[a] > scored.fitness[b];
                     });

    std::vector<Genome> next;
    next.reserve(pop_size);
    for (int e = 0; e < cfg.elitism; ++e) next.push_back(pop[order[e]]);

    const std::size_t needed = pop_size - next.size();
    const std::size_t pairs = (needed + 1) / 2;
    const std::vector<std::size_t> parents = select_tournament(
        scored.fitness, cfg.tournament_size, 2 * pairs, select_rng);

    for (std::size_t p = 0; p < pairs; ++p) {
      const Genome& pa = pop[parents[2 * p]];
      const Genome& pb = pop[parents[2 * p + 1]];
      Genome c1, c2;
      if (vary_rng.bernoulli(cfg.crossover_rate)) {
        std::tie(c1, c2) = Traits::crossover(pa, pb, vary_rng, cfg);
      } else {
        c1 = pa;
        c2 = pb;
      }
      c1 = Traits::mutate(c1, vary_rng, cfg);
      c2 = Traits::mutate(c2, vary_rng, cfg);
      next.push_back(std::move(c1));
      if (next.size() < pop_size) next.push_back(std::move(c2));
    }
    pop = std::move(next);
  }

  return result;
}

}  // namespace

void EvolutionConfig::validate() const {
  if (pop_size < 2) throw ConfigError("pop_size must be at least 2");
  if (generations < 1) throw ConfigError("generations must be at least 1");
  if (tournament_size < 1 || tournament_size > pop_size) {
    throw ConfigError("tournament_size must be in [1, pop_size]");
  }
  if (!valid_probability(crossover_rate)) {
    throw ConfigError("crossover_rate must be a probability in [0, 1]");
  }
  if (!valid_probability(rnn_mutation.rate)) {
    throw ConfigError("rnn_mutation.rate must be a probability in [0, 1]");
  }
  if (!std::isfinite(rnn_mutation.sigma) || rnn_mutation.sigma < 0.0) {
    throw ConfigError("rnn_mutation.sigma must be finite and nonnegative");
  }
  if (!valid_probability(direct_rates.point) ||
      !valid_probability(direct_rates.insert) ||
      !valid_probability(direct_rates.erase)) {
    throw ConfigError("direct rates must be probabilities in [0, 1]");
  }
  if (elitism < 0 || elitism > pop_size) {
    throw ConfigError("elitism must be in [0, pop_size]");
  }
  geometry.validate();
}

EvolveResult evolve(const EvolutionConfig& config) {
  config.validate();
  return config.encoding == EncodingKind::Rnn ? evolve_impl<RnnTraits>(config)
                                              : evolve_impl<DirectTraits>(config);
}

std::vector<std::size_t> select_tournament(std::span<const double> fitness,
                                           int k, std::size_t count,
                                           RngStream& rng) {
  const std::size_t n = fitness.size();
  if (n == 0) throw std::invalid_argument("tournament over empty population");
  if (k < 1 || static_cast<std::size_t>(k) > n) {
    throw std::invalid_argument("tournament size out of range");
  }

  std::vector<std::size_t> pool(n);
  std::vector<std::size_t> winners;
  winners.reserve(count);
  for (std::size_t slot = 0; slot < count; ++slot) {
    // Partial Fisher-Yates: the first k entries become a uniform random
    // k-subset after exactly k draws.
    std::iota(pool.begin(), pool.end(), std::size_t{0});
    std::size_t best = n;  // sentinel
    for (int j = 0; j < k; ++j) {
      const std::size_t pick =
          static_cast<std::size_t>(j) + rng.uniform_index(n - j);
      std::swap(pool[j], pool[pick]);
      const std::size_t idx = pool[j];
      if (best == n || fitness[idx] > fitness[best] ||
          (fitness[idx] == fitness[best] && idx < best)) {
        best = idx;
      }
    }
    winners.push_back(best);
  }
  return winners;
}

RnnGenome mutate_rnn(const RnnGenome& genome, RngStream& rng, double rate,
                     double sigma) {
  RnnGenome out = genome;
  for (double& gene : out.genes) {
    if (rng.bernoulli(rate)) gene += rng.gaussian() * sigma;
  }
  return out;
}

std::pair<RnnGenome, RnnGenome> crossover_rnn(const RnnGenome& a,
                                              const RnnGenome& b,
                                              RngStream& rng) {
  std::pair<RnnGenome, RnnGenome> children{a, b};
  for (int i = 0; i < RnnGenome::kGeneCount; ++i) {
    if (rng.bernoulli(0.5)) {
      std::swap(children.first.genes[i], children.second.genes[i]);
    }
  }
  return children;
}

}  // namespace gearevo
