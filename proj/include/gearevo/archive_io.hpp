#pragma once

#include <array>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "gearevo/evolve.hpp"
#include "gearevo/novelty.hpp"
#include "gearevo/rig.hpp"

namespace gearevo {

// Version stamped into every persisted record and file; readers reject
// anything else rather than guess.
inline constexpr int kSchemaVersion = 1;

std::string encoding_to_string(EncodingKind kind);
EncodingKind encoding_from_string(const std::string& s);

std::string placement_to_string(Placement p);
Placement placement_from_string(const std::string& s);

std::string breach_kind_to_string(BreachKind k);
BreachKind breach_kind_from_string(const std::string& s);

// Archive entries serialize to self-contained JSON objects; optional fields
// (distance, trials, trace) are omitted when absent. Doubles round-trip
// exactly through the shortest decimal representation.
nlohmann::ordered_json to_json(const ArchiveEntry& entry);
ArchiveEntry entry_from_json(const nlohmann::json& j);

// One record per line. Loading validates the schema stamp on every line and
// the generation ordering; both failures raise IoError.
void save_archive(const Archive& archive, const std::filesystem::path& path);
Archive load_archive(const std::filesystem::path& path);

// Config files may omit any field (defaults apply) but unknown keys are
// rejected; the echo written next to a run always carries every field.
nlohmann::ordered_json to_json(const EvolutionConfig& config);
EvolutionConfig config_from_json(const nlohmann::json& j);
void save_config(const EvolutionConfig& config, const std::filesystem::path& path);
EvolutionConfig load_config(const std::filesystem::path& path);

nlohmann::ordered_json to_json(const RunReport& report);
void save_report(const RunReport& report, const std::filesystem::path& path);

RigModel rig_from_json(const nlohmann::json& j);
RigModel load_rig(const std::filesystem::path& path);

// Manual measurement import: whitespace-separated lines of
//   generation trial1_in trial2_in trial3_in
// with '#' comments and blank lines ignored.
struct ScoreImportRow {
  int generation = 0;
  std::array<double, 3> trials_in{};

  bool operator==(const ScoreImportRow&) const = default;
};

std::vector<ScoreImportRow> parse_score_import(const std::string& text);
std::vector<ScoreImportRow> load_score_import(const std::filesystem::path& path);

// Copy of the archive with each row's trials attached to its generation
// (distance becomes the trial average). Rows naming generations the archive
// does not contain raise IoError listing every offender.
Archive apply_imported_scores(const Archive& archive,
                              std::span<const ScoreImportRow> rows);

}  // namespace gearevo
