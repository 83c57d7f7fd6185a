#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gearevo/geometry.hpp"
#include "gearevo/novelty.hpp"

namespace gearevo {

// Number of archive entries whose mechanism contains at least one coaxial
// gear. Throws std::invalid_argument on an empty archive.
int coaxial_count(const Archive& archive);

// Mean pairwise Euclidean distance among archived novelty vectors.
// Throws std::invalid_argument with fewer than two entries.
double diversity(const Archive& archive);

struct ScoreDispersion {
  double mean = 0.0;
  double stddev = 0.0;  // population convention (divide by n)

  bool operator==(const ScoreDispersion&) const = default;
};

// Mean and standard deviation of distance scores, unscored entries
// excluded. Throws std::invalid_argument with fewer than two scored entries.
ScoreDispersion score_dispersion(const Archive& archive);

// One line of the activation-pattern table for an archived elite.
struct TraceRow {
  int generation = 0;
  std::vector<PlacementStep> steps;            // (gear id, placement) per emission
  std::vector<std::array<int, 8>> hidden_signs;  // -1/0/+1 per hidden node per step
  bool alternating = false;  // >= 3 gears with strictly alternating size direction

  bool operator==(const TraceRow&) const = default;
};

struct TraceSummary {
  std::vector<TraceRow> rows;

  bool operator==(const TraceSummary&) const = default;
};

// Builds the per-elite pattern table from stored activation traces.
// Throws std::invalid_argument if any entry lacks a trace (archives from the
// step-list encoding have none).
TraceSummary trace_summary(const Archive& archive);

// Plot-ready score table: one row per scored entry with avg/min/max taken
// from imported trials when present, else the single surrogate value.
struct ScoreTableRow {
  int generation = 0;
  double avg_in = 0.0;
  double min_in = 0.0;
  double max_in = 0.0;

  bool operator==(const ScoreTableRow&) const = default;
};

std::vector<ScoreTableRow> score_table(const Archive& archive);

// One persisted run picked up from disk for cross-run comparison.
struct LoadedRun {
  std::string label;  // typically the run directory
  EncodingKind encoding = EncodingKind::Rnn;
  std::uint64_t seed = 0;
  Archive archive;
};

struct RunSummary {
  std::string label;
  EncodingKind encoding = EncodingKind::Rnn;
  std::uint64_t seed = 0;
  std::size_t archive_size = 0;
  int coaxial = 0;
  double diversity = 0.0;
  std::optional<ScoreDispersion> scores;  // absent when < 2 scored entries

  bool operator==(const RunSummary&) const = default;
};

// Head-to-head outcome for one seed that has both encodings.
struct SeedVerdict {
  std::uint64_t seed = 0;
  bool rnn_more_diverse = false;        // strict inequality
  bool rnn_at_least_as_coaxial = false;

  bool operator==(const SeedVerdict&) const = default;
};

struct ComparisonReport {
  std::vector<RunSummary> runs;
  std::vector<SeedVerdict> verdicts;  // seeds present under both encodings
  int seeds_compared = 0;
  int rnn_more_diverse_count = 0;
  int rnn_at_least_as_coaxial_count = 0;

  bool operator==(const ComparisonReport&) const = default;
};

// Summarizes every run and pairs runs of equal seed across encodings.
// Throws std::invalid_argument with fewer than two runs.
ComparisonReport compare_runs(std::span<const LoadedRun> runs);

}  // namespace gearevo
