#include "gearevo/archive_io.hpp"

#include <algorithm>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include "gearevo/errors.hpp"

namespace gearevo {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

void require_keys(const json& j, std::initializer_list<const char*> allowed,
                  const std::string& where) {
  for (const auto& item : j.items()) {
    bool ok = false;
    for (const char* k : allowed) {
      if (item.key() == k) {
        ok = true;
        break;
      }
    }
    if (!ok) throw IoError("unknown key \"" + item.key() + "\" in " + where);
  }
}

void require_schema(const json& j, const std::string& where) {
  if (!j.contains("schema") || !j["schema"].is_number_integer() ||
      j["schema"].get<int>() != kSchemaVersion) {
    throw IoError(where + ": missing or unsupported schema version (expected " +
                  std::to_string(kSchemaVersion) + ")");
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("read failed on " + path.string());
  return buf.str();
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << content;
  out.flush();
  if (!out) throw IoError("write failed on " + path.string());
}

json parse_json(const std::string& text, const std::string& where) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw IoError(where + ": malformed JSON");
  return j;
}

}  // namespace

std::string encoding_to_string(EncodingKind kind) {
  return kind == EncodingKind::Rnn ? "rnn" : "direct";
}

EncodingKind encoding_from_string(const std::string& s) {
  if (s == "rnn") return EncodingKind::Rnn;
  if (s == "direct") return EncodingKind::Direct;
  throw IoError("unknown encoding \"" + s + "\"");
}

std::string placement_to_string(Placement p) {
  switch (p) {
    case Placement::First:
      return "first";
    case Placement::Linear:
      return "linear";
    case Placement::Coaxial:
      return "coaxial";
  }
  throw IoError("invalid placement value");
}

Placement placement_from_string(const std::string& s) {
  if (s == "first") return Placement::First;
  if (s == "linear") return Placement::Linear;
  if (s == "coaxial") return Placement::Coaxial;
  throw IoError("unknown placement \"" + s + "\"");
}

std::string breach_kind_to_string(BreachKind k) {
  switch (k) {
    case BreachKind::DiscOverlap:
      return "disc_overlap";
    case BreachKind::AxleClash:
      return "axle_clash";
    case BreachKind::OutOfBounds:
      return "out_of_bounds";
  }
  throw IoError("invalid breach kind value");
}

BreachKind breach_kind_from_string(const std::string& s) {
  if (s == "disc_overlap") return BreachKind::DiscOverlap;
  if (s == "axle_clash") return BreachKind::AxleClash;
  if (s == "out_of_bounds") return BreachKind::OutOfBounds;
  throw IoError("unknown breach kind \"" + s + "\"");
}

namespace {

ordered_json mechanism_to_json(const Mechanism& mech) {
  ordered_json gears = ordered_json::array();
  for (const auto& g : mech.gears) {
    gears.push_back({{"gear_id", g.gear_id},
                     {"radius_mm", g.radius_mm},
                     {"center_x_mm", g.center_x_mm},
                     {"plane", g.plane},
                     {"axle_id", g.axle_id},
                     {"placement", placement_to_string(g.placement)}});
  }
  ordered_json breaches = ordered_json::array();
  for (const auto& b : mech.feasibility.breaches) {
    breaches.push_back({{"kind", breach_kind_to_string(b.kind)},
                        {"depth_mm", b.depth_mm},
                        {"gear", b.gear},
                        {"other", b.other}});
  }
  return {{"gears", std::move(gears)},
          {"feasibility",
           {{"feasible", mech.feasibility.feasible},
            {"violation_mm", mech.feasibility.violation_mm},
            {"breaches", std::move(breaches)}}}};
}

Mechanism mechanism_from_json(const json& j) {
  Mechanism mech;
  for (const auto& gj : j.at("gears")) {
    PlacedGear g;
    g.gear_id = gj.at("gear_id").get<int>();
    g.radius_mm = gj.at("radius_mm").get<double>();
    g.center_x_mm = gj.at("center_x_mm").get<double>();
    g.plane = gj.at("plane").get<int>();
    g.axle_id = gj.at("axle_id").get<int>();
    g.placement = placement_from_string(gj.at("placement").get<std::string>());
    mech.gears.push_back(g);
  }
  const json& fj = j.at("feasibility");
  mech.feasibility.feasible = fj.at("feasible").get<bool>();
  mech.feasibility.violation_mm = fj.at("violation_mm").get<double>();
  for (const auto& bj : fj.at("breaches")) {
    Breach b;
    b.kind = breach_kind_from_string(bj.at("kind").get<std::string>());
    b.depth_mm = bj.at("depth_mm").get<double>();
    b.gear = bj.at("gear").get<int>();
    b.other = bj.at("other").get<int>();
    mech.feasibility.breaches.push_back(b);
  }
  return mech;
}

ordered_json genome_to_json(const GenomeSnapshot& genome) {
  if (const auto* rnn = std::get_if<RnnGenome>(&genome)) {
    return ordered_json(rnn->genes);
  }
  const auto& direct = std::get<DirectGenome>(genome);
  ordered_json genes = ordered_json::array();
  for (const auto& g : direct.genes) {
    genes.push_back({{"gear_id", g.gear_id},
                     {"placement", placement_to_string(g.placement)}});
  }
  return genes;
}

GenomeSnapshot genome_from_json(const json& j, EncodingKind kind) {
  if (kind == EncodingKind::Rnn) {
    RnnGenome g;
    if (!j.is_array() || j.size() != g.genes.size()) {
      throw IoError("network genome must be a flat array of " +
                    std::to_string(g.genes.size()) + " numbers");
    }
    for (std::size_t i = 0; i < g.genes.size(); ++i) {
      g.genes[i] = j[i].get<double>();
    }
    return g;
  }
  DirectGenome g;
  for (const auto& gj : j) {
    g.genes.push_back({gj.at("gear_id").get<int>(),
                       placement_from_string(gj.at("placement").get<std::string>())});
  }
  return g;
}

ordered_json trace_to_json(const ActivationTrace& trace) {
  ordered_json steps = ordered_json::array();
  for (const auto& s : trace.steps) {
    steps.push_back({{"input", s.input},
                     {"hidden", s.hidden},
                     {"output", s.output},
                     {"action",
                      {{"gear_id", s.action.gear_id},
                       {"placement", placement_to_string(s.action.placement)},
                       {"continue", s.action.continue_adding}}}});
  }
  return {{"steps", std::move(steps)}};
}

ActivationTrace trace_from_json(const json& j) {
  ActivationTrace trace;
  for (const auto& sj : j.at("steps")) {
    TraceStep s;
    auto read8 = [&](const char* key, std::array<double, 8>& out) {
      const json& a = sj.at(key);
      if (!a.is_array() || a.size() != out.size()) {
        throw IoError(std::string("trace field \"") + key + "\" must have 8 numbers");
      }
      for (std::size_t i = 0; i < out.size(); ++i) out[i] = a[i].get<double>();
    };
    read8("input", s.input);
    read8("hidden", s.hidden);
    read8("output", s.output);
    const json& aj = sj.at("action");
    s.action.gear_id = aj.at("gear_id").get<int>();
    s.action.placement = placement_from_string(aj.at("placement").get<std::string>());
    s.action.continue_adding = aj.at("continue").get<bool>();
    trace.steps.push_back(s);
  }
  return trace;
}

}  // namespace

ordered_json to_json(const ArchiveEntry& entry) {
  ordered_json j;
  j["schema"] = kSchemaVersion;
  j["generation"] = entry.generation;
  j["encoding"] = encoding_to_string(entry.encoding);
  j["genome"] = genome_to_json(entry.genome);
  j["mechanism"] = mechanism_to_json(entry.mechanism);
  j["novelty"] = entry.novelty.f;
  j["novelty_score"] = entry.novelty_score;
  j["fitness"] = entry.fitness;
  if (entry.distance_in) j["distance_in"] = *entry.distance_in;
  if (entry.trials_in) j["trials_in"] = *entry.trials_in;
  if (entry.trace) j["trace"] = trace_to_json(*entry.trace);
  return j;
}

ArchiveEntry entry_from_json(const json& j) {
  require_schema(j, "archive record");
  ArchiveEntry e;
  e.generation = j.at("generation").get<int>();
  e.encoding = encoding_from_string(j.at("encoding").get<std::string>());
  e.genome = genome_from_json(j.at("genome"), e.encoding);
  e.mechanism = mechanism_from_json(j.at("mechanism"));
  const json& nv = j.at("novelty");
  if (!nv.is_array() || nv.size() != e.novelty.f.size()) {
    throw IoError("novelty vector must have 6 numbers");
  }
  for (std::size_t i = 0; i < e.novelty.f.size(); ++i) {
    e.novelty.f[i] = nv[i].get<double>();
  }
  e.novelty_score = j.at("novelty_score").get<double>();
  e.fitness = j.at("fitness").get<double>();
  if (j.contains("distance_in")) e.distance_in = j["distance_in"].get<double>();
  if (j.contains("trials_in")) {
    const json& t = j["trials_in"];
    if (!t.is_array() || t.size() != 3) throw IoError("trials_in must have 3 numbers");
    e.trials_in = {{t[0].get<double>(), t[1].get<double>(), t[2].get<double>()}};
  }
  if (j.contains("trace")) e.trace = trace_from_json(j["trace"]);
  return e;
}

void save_archive(const Archive& archive, const std::filesystem::path& path) {
  std::string out;
  for (const auto& entry : archive.entries()) {
    out += to_json(entry).dump();
    out += '\n';
  }
  write_file(path, out);
}

Archive load_archive(const std::filesystem::path& path) {
  const std::string text = read_file(path);
  Archive archive;
  std::istringstream lines(text);
  std::string line;
  int line_no = 0;
  while (std::getline(lines, line)) {
    ++line_no;
    if (line.empty()) continue;
    const std::string where = path.string() + ":" + std::to_string(line_no);
    json j = parse_json(line, where);
    ArchiveEntry entry = entry_from_json(j);
    try {
      archive.append(std::move(entry));
    } catch (const std::logic_error& err) {
      throw IoError(where + ": " + err.what());
    }
  }
  return archive;
}

ordered_json to_json(const EvolutionConfig& config) {
  return {{"schema", kSchemaVersion},
          {"encoding", encoding_to_string(config.encoding)},
          {"pop_size", config.pop_size},
          {"generations", config.generations},
          {"tournament_size", config.tournament_size},
          {"crossover_rate", config.crossover_rate},
          {"rnn_mutation",
           {{"rate", config.rnn_mutation.rate}, {"sigma", config.rnn_mutation.sigma}}},
          {"direct_rates",
           {{"point", config.direct_rates.point},
            {"insert", config.direct_rates.insert},
            {"erase", config.direct_rates.erase}}},
          {"elitism", config.elitism},
          {"seed", config.seed},
          {"geometry",
           {{"box_length_mm", config.geometry.box_length_mm},
            {"axle_radius_mm", config.geometry.axle_radius_mm},
            {"catalog_radii_mm", config.geometry.catalog.radii_mm()}}},
          {"normalize_novelty", config.normalize_novelty}};
}

EvolutionConfig config_from_json(const json& j) {
  require_keys(j,
               {"schema", "encoding", "pop_size", "generations", "tournament_size",
                "crossover_rate", "rnn_mutation", "direct_rates", "elitism", "seed",
                "geometry", "normalize_novelty"},
               "config");
  if (j.contains("schema")) require_schema(j, "config");

  EvolutionConfig c;
  if (j.contains("encoding")) {
    c.encoding = encoding_from_string(j["encoding"].get<std::string>());
  }
  if (j.contains("pop_size")) c.pop_size = j["pop_size"].get<int>();
  if (j.contains("generations")) c.generations = j["generations"].get<int>();
  if (j.contains("tournament_size")) c.tournament_size = j["tournament_size"].get<int>();
  if (j.contains("crossover_rate")) c.crossover_rate = j["crossover_rate"].get<double>();
  if (j.contains("rnn_mutation")) {
    const json& m = j["rnn_mutation"];
    require_keys(m, {"rate", "sigma"}, "rnn_mutation");
    if (m.contains("rate")) c.rnn_mutation.rate = m["rate"].get<double>();
    if (m.contains("sigma")) c.rnn_mutation.sigma = m["sigma"].get<double>();
  }
  if (j.contains("direct_rates")) {
    const json& d = j["direct_rates"];
    require_keys(d, {"point", "insert", "erase"}, "direct_rates");
    if (d.contains("point")) c.direct_rates.point = d["point"].get<double>();
    if (d.contains("insert")) c.direct_rates.insert = d["insert"].get<double>();
    if (d.contains("erase")) c.direct_rates.erase = d["erase"].get<double>();
  }
  if (j.contains("elitism")) c.elitism = j["elitism"].get<int>();
  if (j.contains("seed")) c.seed = j["seed"].get<std::uint64_t>();
  if (j.contains("geometry")) {
    const json& g = j["geometry"];
    require_keys(g, {"box_length_mm", "axle_radius_mm", "catalog_radii_mm"},
                 "geometry");
    double box = c.geometry.box_length_mm;
    double axle = c.geometry.axle_radius_mm;
    GearCatalog catalog = c.geometry.catalog;
    if (g.contains("box_length_mm")) box = g["box_length_mm"].get<double>();
    if (g.contains("axle_radius_mm")) axle = g["axle_radius_mm"].get<double>();
    if (g.contains("catalog_radii_mm")) {
      const json& r = g["catalog_radii_mm"];
      if (!r.is_array() || r.size() != GearCatalog::kSize) {
        throw IoError("catalog_radii_mm must have " +
                      std::to_string(GearCatalog::kSize) + " numbers");
      }
      std::array<double, GearCatalog::kSize> radii{};
      for (std::size_t i = 0; i < radii.size(); ++i) radii[i] = r[i].get<double>();
      catalog = GearCatalog(radii);
    }
    c.geometry = GeometryConfig{box, axle, catalog};
  }
  if (j.contains("normalize_novelty")) {
    c.normalize_novelty = j["normalize_novelty"].get<bool>();
  }
  return c;
}

void save_config(const EvolutionConfig& config, const std::filesystem::path& path) {
  write_file(path, to_json(config).dump(2) + "\n");
}

EvolutionConfig load_config(const std::filesystem::path& path) {
  return config_from_json(parse_json(read_file(path), path.string()));
}

ordered_json to_json(const RunReport& report) {
  ordered_json gens = ordered_json::array();
  for (const auto& g : report.per_generation) {
    gens.push_back({{"generation", g.generation},
                    {"best_fitness", g.best_fitness},
                    {"mean_fitness", g.mean_fitness},
                    {"feasible_fraction", g.feasible_fraction},
                    {"elite_coaxial_gears", g.elite_coaxial_gears}});
  }
  return {{"schema", kSchemaVersion},
          {"seed", report.seed},
          {"config", to_json(report.config)},
          {"per_generation", std::move(gens)}};
}

void save_report(const RunReport& report, const std::filesystem::path& path) {
  write_file(path, to_json(report).dump(2) + "\n");
}

RigModel rig_from_json(const json& j) {
  require_keys(j,
               {"schema", "track_length_in", "input_turns", "band_torque",
                "spool_radius_mm", "required_tension", "friction_loss_per_mesh"},
               "rig");
  if (j.contains("schema")) require_schema(j, "rig");
  RigModel r;
  if (j.contains("track_length_in")) r.track_length_in = j["track_length_in"].get<double>();
  if (j.contains("input_turns")) r.input_turns = j["input_turns"].get<double>();
  if (j.contains("band_torque")) r.band_torque = j["band_torque"].get<double>();
  if (j.contains("spool_radius_mm")) r.spool_radius_mm = j["spool_radius_mm"].get<double>();
  if (j.contains("required_tension")) r.required_tension = j["required_tension"].get<double>();
  if (j.contains("friction_loss_per_mesh")) {
    r.friction_loss_per_mesh = j["friction_loss_per_mesh"].get<double>();
  }
  return r;
}

RigModel load_rig(const std::filesystem::path& path) {
  return rig_from_json(parse_json(read_file(path), path.string()));
}

std::vector<ScoreImportRow> parse_score_import(const std::string& text) {
  std::vector<ScoreImportRow> rows;
  std::istringstream lines(text);
  std::string line;
  int line_no = 0;
  while (std::getline(lines, line)) {
    ++line_no;
    std::istringstream fields(line);
    std::string first;
    if (!(fields >> first) || first[0] == '#') continue;

    ScoreImportRow row;
    std::size_t used = 0;
    try {
      row.generation = std::stoi(first, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != first.size()) {
      throw IoError("score import line " + std::to_string(line_no) +
                    ": generation must be an integer, got \"" + first + "\"");
    }
    std::string extra;
    if (!(fields >> row.trials_in[0] >> row.trials_in[1] >> row.trials_in[2]) ||
        (fields >> extra)) {
      throw IoError("score import line " + std::to_string(line_no) +
                    ": expected \"generation trial1 trial2 trial3\"");
    }
    rows.push_back(row);
  }
  return rows;
}

std::vector<ScoreImportRow> load_score_import(const std::filesystem::path& path) {
  return parse_score_import(read_file(path));
}

Archive apply_imported_scores(const Archive& archive,
                              std::span<const ScoreImportRow> rows) {
  std::vector<ArchiveEntry> entries = archive.entries();
  std::vector<int> unknown;
  for (const auto& row : rows) {
    auto it = std::find_if(entries.begin(), entries.end(), [&](const ArchiveEntry& e) {
      return e.generation == row.generation;
    });
    if (it == entries.end()) {
      unknown.push_back(row.generation);
      continue;
    }
    it->trials_in = row.trials_in;
    it->distance_in =
        (row.trials_in[0] + row.trials_in[1] + row.trials_in[2]) / 3.0;
  }
  if (!unknown.empty()) {
    std::string msg = "score import references unknown generations:";
    for (int g : unknown) msg += " " + std::to_string(g);
    throw IoError(msg);
  }
  Archive out;
  for (auto& e : entries) out.append(std::move(e));
  return out;
}

}  // namespace gearevo
