#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "gearevo/direct.hpp"
#include "gearevo/geometry.hpp"
#include "gearevo/rnn.hpp"

namespace gearevo {

enum class EncodingKind { Rnn, Direct };

// Six-feature structural descriptor of a mechanism. Feature order:
//   [0] variance of gear center x-positions
//   [1] mean of adjacent radius ratios r_t / r_{t-1}
//   [2] variance of adjacent radius ratios
//   [3] mean of pitch radii
//   [4] variance of pitch radii
//   [5] gear count
// Variances divide by n (population convention).
struct NoveltyVector {
  std::array<double, 6> f{};

  bool operator==(const NoveltyVector&) const = default;
};

double euclidean(const NoveltyVector& a, const NoveltyVector& b);

NoveltyVector novelty_vector(const Mechanism& mech);

// Minimum Euclidean distance from v to the archive; when the archive is
// empty (generation 0) the nearest other population member is used instead.
// Returns 0 when there is nothing at all to compare against.
double novelty_score(const NoveltyVector& v,
                     std::span<const NoveltyVector> archive,
                     std::span<const NoveltyVector> population,
                     std::size_t self_index);

using GenomeSnapshot = std::variant<RnnGenome, DirectGenome>;

// One elite per completed generation, immutable once appended. Distance
// scores are annotations attached after evolution and never read by it.
struct ArchiveEntry {
  int generation = 0;
  EncodingKind encoding = EncodingKind::Rnn;
  GenomeSnapshot genome;
  Mechanism mechanism;
  NoveltyVector novelty;
  double novelty_score = 0.0;
  double fitness = 0.0;
  std::optional<double> distance_in;
  std::optional<std::array<double, 3>> trials_in;
  std::optional<ActivationTrace> trace;

  bool operator==(const ArchiveEntry&) const = default;
};

class Archive {
 public:
  // Appends the elite of the next generation. Throws std::logic_error if the
  // entry's generation is not exactly the next one (double append, gap).
  void append(ArchiveEntry entry);

  const std::vector<ArchiveEntry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  std::vector<NoveltyVector> novelty_vectors() const;

  bool operator==(const Archive&) const = default;

 private:
  std::vector<ArchiveEntry> entries_;
};

struct FitnessOptions {
  // Z-score each feature over the current population before measuring
  // distances (applied to archive vectors with the same transform).
  bool normalize = false;
};

struct FitnessResult {
  std::vector<double> fitness;         // feasible: novelty; infeasible: -violation
  std::vector<double> novelty_scores;  // recorded for everyone, reporting only
};

// Feasible individuals score their novelty (>= 0); infeasible ones score the
// negated violation severity (< 0), so every infeasible individual ranks
// below every feasible one and deeper violations rank lower.
FitnessResult assign_fitness(std::span<const NoveltyVector> pop_vectors,
                             std::span<const FeasibilityReport> pop_feasibility,
                             std::span<const NoveltyVector> archive_vectors,
                             const FitnessOptions& options = {});

// Argmax with ties broken toward the lowest index.
std::size_t best_index(std::span<const double> fitness);

}  // namespace gearevo
