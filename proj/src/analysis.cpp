#include "gearevo/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace gearevo {

int coaxial_count(const Archive& archive) {
  if (archive.empty()) throw std::invalid_argument("coaxial_count on empty archive");
  int n = 0;
  for (const auto& e : archive.entries()) {
    if (has_coaxial(e.mechanism)) ++n;
  }
  return n;
}

double diversity(const Archive& archive) {
  const auto& entries = archive.entries();
  if (entries.size() < 2) {
    throw std::invalid_argument("diversity needs at least two archive entries");
  }
  double sum = 0.0;
  std::size_t pairs = 0;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    for (std::size_t j = i + 1; j < entries.size(); ++j) {
      sum += euclidean(entries[i].novelty, entries[j].novelty);
      ++pairs;
    }
  }
  return sum / static_cast<double>(pairs);
}

ScoreDispersion score_dispersion(const Archive& archive) {
  std::vector<double> scores;
  for (const auto& e : archive.entries()) {
    if (e.distance_in) scores.push_back(*e.distance_in);
  }
  if (scores.size() < 2) {
    throw std::invalid_argument("score_dispersion needs at least two scored entries");
  }
  double mean = 0.0;
  for (double s : scores) mean += s;
  mean /= static_cast<double>(scores.size());
  double var = 0.0;
  for (double s : scores) var += (s - mean) * (s - mean);
  var /= static_cast<double>(scores.size());
  return {mean, std::sqrt(var)};
}

namespace {

// Strictly alternating size direction over >= 3 gears: every consecutive
// radius difference is nonzero and flips sign relative to the previous one.
bool is_alternating(const std::vector<PlacedGear>& gears) {
  if (gears.size() < 3) return false;
  int prev_sign = 0;
  for (std::size_t i = 1; i < gears.size(); ++i) {
    const double diff = gears[i].radius_mm - gears[i - 1].radius_mm;
    const int sign = diff > 0.0 ? 1 : (diff < 0.0 ? -1 : 0);
    if (sign == 0) return false;
    if (prev_sign != 0 && sign == prev_sign) return false;
    prev_sign = sign;
  }
  return true;
}

}  // namespace

TraceSummary trace_summary(const Archive& archive) {
  TraceSummary summary;
  for (const auto& e : archive.entries()) {
    if (!e.trace) {
      throw std::invalid_argument(
          "entry " + std::to_string(e.generation) +
          " has no activation trace (not produced by the network encoding)");
    }
    TraceRow row;
    row.generation = e.generation;
    for (const auto& step : e.trace->steps) {
      row.steps.push_back({step.action.gear_id, step.action.placement});
      std::array<int, 8> signs{};
      for (std::size_t k = 0; k < signs.size(); ++k) {
        const double h = step.hidden[k];
        signs[k] = h > 0.0 ? 1 : (h < 0.0 ? -1 : 0);
      }
      row.hidden_signs.push_back(signs);
    }
    row.alternating = is_alternating(e.mechanism.gears);
    summary.rows.push_back(std::move(row));
  }
  return summary;
}

std::vector<ScoreTableRow> score_table(const Archive& archive) {
  std::vector<ScoreTableRow> rows;
  for (const auto& e : archive.entries()) {
    if (!e.distance_in) continue;
    ScoreTableRow row;
    row.generation = e.generation;
    if (e.trials_in) {
      const auto& t = *e.trials_in;
      row.avg_in = (t[0] + t[1] + t[2]) / 3.0;
      row.min_in = std::min({t[0], t[1], t[2]});
      row.max_in = std::max({t[0], t[1], t[2]});
    } else {
      row.avg_in = row.min_in = row.max_in = *e.distance_in;
    }
    rows.push_back(row);
  }
  return rows;
}

ComparisonReport compare_runs(std::span<const LoadedRun> runs) {
  if (runs.size() < 2) {
    throw std::invalid_argument("compare_runs needs at least two runs");
  }

  ComparisonReport report;
  for (const auto& run : runs) {
    RunSummary s;
    s.label = run.label;
    s.encoding = run.encoding;
    s.seed = run.seed;
    s.archive_size = run.archive.size();
    s.coaxial = coaxial_count(run.archive);
    s.diversity = diversity(run.archive);
    std::size_t scored = 0;
    for (const auto& e : run.archive.entries()) scored += e.distance_in ? 1 : 0;
    if (scored >= 2) s.scores = score_dispersion(run.archive);
    report.runs.push_back(std::move(s));
  }

  // Pair the first run of each encoding per seed.
  std::map<std::uint64_t, std::pair<const RunSummary*, const RunSummary*>> by_seed;
  for (const auto& s : report.runs) {
    auto& slot = by_seed[s.seed];
    if (s.encoding == EncodingKind::Rnn) {
      if (!slot.first) slot.first = &s;
    } else {
      if (!slot.second) slot.second = &s;
    }
  }
  for (const auto& [seed, pair] : by_seed) {
    if (!pair.first || !pair.second) continue;
    SeedVerdict v;
    v.seed = seed;
    v.rnn_more_diverse = pair.first->diversity > pair.second->diversity;
    v.rnn_at_least_as_coaxial = pair.first->coaxial >= pair.second->coaxial;
    report.verdicts.push_back(v);
    ++report.seeds_compared;
    if (v.rnn_more_diverse) ++report.rnn_more_diverse_count;
    if (v.rnn_at_least_as_coaxial) ++report.rnn_at_least_as_coaxial_count;
  }
  return report;
}

}  // namespace gearevo
