#include "gearevo/novelty.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace gearevo {
namespace {

double mean_of(std::span<const double> xs) {
  double s = 0.0;
  for (double x : xs) s += x;
  return s / static_cast<double>(xs.size());
}

// Population variance (divide by n).
double variance_of(std::span<const double> xs) {
  const double m = mean_of(xs);
  double s = 0.0;
  for (double x : xs) s += (x - m) * (x - m);
  return s / static_cast<double>(xs.size());
}

}  // namespace

double euclidean(const NoveltyVector& a, const NoveltyVector& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.f.size(); ++i) {
    const double d = a.f[i] - b.f[i];
    s += d * d;
  }
  return std::sqrt(s);
}

NoveltyVector novelty_vector(const Mechanism& mech) {
  const auto& gears = mech.gears;
  std::vector<double> xs, radii, ratios;
  xs.reserve(gears.size());
  radii.reserve(gears.size());
  for (const auto& g : gears) {
    xs.push_back(g.center_x_mm);
    radii.push_back(g.radius_mm);
  }
  ratios.reserve(gears.size() > 0 ? gears.size() - 1 : 0);
  for (std::size_t i = 1; i < gears.size(); ++i) {
    ratios.push_back(gears[i].radius_mm / gears[i - 1].radius_mm);
  }

  NoveltyVector v;
  v.f[0] = variance_of(xs);
  v.f[1] = mean_of(ratios);
  v.f[2] = variance_of(ratios);
  v.f[3] = mean_of(radii);
  v.f[4] = variance_of(radii);
  v.f[5] = static_cast<double>(gears.size());
  return v;
}

double novelty_score(const NoveltyVector& v,
                     std::span<const NoveltyVector> archive,
                     std::span<const NoveltyVector> population,
                     std::size_t self_index) {
  double best = std::numeric_limits<double>::infinity();
  if (!archive.empty()) {
    for (const auto& a : archive) best = std::min(best, euclidean(v, a));
    return best;
  }
  for (std::size_t i = 0; i < population.size(); ++i) {
    if (i == self_index) continue;
    best = std::min(best, euclidean(v, population[i]));
  }
  return std::isinf(best) ? 0.0 : best;
}

void Archive::append(ArchiveEntry entry) {
  if (entry.generation != static_cast<int>(entries_.size())) {
    throw std::logic_error("archive append out of order: expected generation " +
                           std::to_string(entries_.size()) + ", got " +
                           std::to_string(entry.generation));
  }
  entries_.push_back(std::move(entry));
}

std::vector<NoveltyVector> Archive::novelty_vectors() const {
  std::vector<NoveltyVector> out;
  out.reserve(entries_.size());
  for (const auto& e : entries_) out.push_back(e.novelty);
  return out;
}

namespace {

struct FeatureScale {
  std::array<double, 6> mean{};
  std::array<double, 6> stddev{};
};

FeatureScale population_scale(std::span<const NoveltyVector> pop) {
  FeatureScale s;
  const double n = static_cast<double>(pop.size());
  for (std::size_t k = 0; k < 6; ++k) {
    double m = 0.0;
    for (const auto& v : pop) m += v.f[k];
    m /= n;
    double var = 0.0;
    for (const auto& v : pop) var += (v.f[k] - m) * (v.f[k] - m);
    s.mean[k] = m;
    s.stddev[k] = std::sqrt(var / n);
  }
  return s;
}

NoveltyVector scaled(const NoveltyVector& v, const FeatureScale& s) {
  NoveltyVector out;
  for (std::size_t k = 0; k < 6; ++k) {
    // A feature constant across the population carries no signal; drop it to
    // zero rather than divide by zero.
    out.f[k] = s.stddev[k] > 0.0 ? (v.f[k] - s.mean[k]) / s.stddev[k] : 0.0;
  }
  return out;
}

}  // namespace

FitnessResult assign_fitness(std::span<const NoveltyVector> pop_vectors,
                             std::span<const FeasibilityReport> pop_feasibility,
                             std::span<const NoveltyVector> archive_vectors,
                             const FitnessOptions& options) {
  if (pop_vectors.size() != pop_feasibility.size()) {
    throw std::invalid_argument("population vectors and feasibility reports differ in length");
  }

  std::vector<NoveltyVector> pop_used(pop_vectors.begin(), pop_vectors.end());
  std::vector<NoveltyVector> arc_used(archive_vectors.begin(), archive_vectors.end());
  if (options.normalize && !pop_used.empty()) {
    const FeatureScale scale = population_scale(pop_used);
    for (auto& v : pop_used) v = scaled(v, scale);
    for (auto& v : arc_used) v = scaled(v, scale);
  }

  FitnessResult result;
  result.fitness.resize(pop_used.size());
  result.novelty_scores.resize(pop_used.size());
  for (std::size_t i = 0; i < pop_used.size(); ++i) {
    const double score = novelty_score(pop_used[i], arc_used, pop_used, i);
    result.novelty_scores[i] = score;
    result.fitness[i] = pop_feasibility[i].feasible
                            ? score
                            : -pop_feasibility[i].violation_mm;
  }
  return result;
}

std::size_t best_index(std::span<const double> fitness) {
  if (fitness.empty()) throw std::invalid_argument("best_index on empty span");
  std::size_t best = 0;
  for (std::size_t i = 1; i < fitness.size(); ++i) {
    if (fitness[i] > fitness[best]) best = i;
  }
  return best;
}

}  // namespace gearevo
