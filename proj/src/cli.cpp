#include "gearevo/cli.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "gearevo/archive_io.hpp"
#include "gearevo/errors.hpp"
#include "gearevo/evolve.hpp"
#include "gearevo/rig.hpp"
#include "gearevo/svg.hpp"

namespace gearevo {
namespace {

namespace fs = std::filesystem;

struct EvolveArgs {
  std::string encoding;
  std::string config_path;
  std::uint64_t seed = 0;
  bool seed_given = false;
  std::string out_dir;
};

struct RenderArgs {
  std::string archive_path;
  int entry = 0;
  std::string out_path;
};

struct ScoreArgs {
  std::string archive_path;
  std::string rig_path;
  std::string import_path;
  std::string out_path;
};

struct CompareArgs {
  std::vector<std::string> run_dirs;
  std::string out_prefix;
};

int do_evolve(const EvolveArgs& args) {
  EvolutionConfig config;
  if (!args.config_path.empty()) config = load_config(args.config_path);
  if (!args.encoding.empty()) config.encoding = encoding_from_string(args.encoding);
  if (args.seed_given) config.seed = args.seed;
  config.validate();

  const EvolveResult result = evolve(config);

  const fs::path out(args.out_dir);
  fs::create_directories(out);
  save_archive(result.archive, out / kArchiveFileName);
  save_report(result.report, out / kReportFileName);
  save_config(result.report.config, out / kConfigFileName);

  std::cout << "wrote " << result.archive.size() << " records to "
            << (out / kArchiveFileName).string() << "\n";
  return 0;
}

int do_render(const RenderArgs& args) {
  const fs::path archive_path(args.archive_path);
  const Archive archive = load_archive(archive_path);
  if (args.entry < 0 || args.entry >= static_cast<int>(archive.size())) {
    std::cerr << "error: entry " << args.entry << " out of range (archive has "
              << archive.size() << " records)\n";
    return 1;
  }

  // Use the run's own geometry when the archive sits in a run directory.
  GeometryConfig geo;
  const fs::path config_path = archive_path.parent_path() / kConfigFileName;
  if (fs::exists(config_path)) geo = load_config(config_path).geometry;

  const ArchiveEntry& entry = archive.entries()[static_cast<std::size_t>(args.entry)];
  const std::string svg = render_mechanism_svg(entry.mechanism, geo);

  std::ofstream out(args.out_path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + args.out_path + " for writing");
  out << svg;
  out.flush();
  if (!out) throw IoError("write failed on " + args.out_path);

  std::cout << "wrote " << args.out_path << "\n";
  return 0;
}

int do_score(const ScoreArgs& args) {
  const fs::path archive_path(args.archive_path);
  Archive archive = load_archive(archive_path);

  if (!args.import_path.empty()) {
    archive = apply_imported_scores(archive, load_score_import(args.import_path));
  } else {
    RigModel rig;
    if (!args.rig_path.empty()) rig = load_rig(args.rig_path);
    rig.validate();
    archive = attach_scores(archive, rig);
  }

  fs::path out_path = args.out_path.empty()
                          ? archive_path.parent_path() /
                                (archive_path.stem().string() + ".scored.jsonl")
                          : fs::path(args.out_path);
  save_archive(archive, out_path);
  std::cout << "wrote " << archive.size() << " records to " << out_path.string()
            << "\n";
  return 0;
}

std::string fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, v);
  return buf;
}

std::string comparison_text(const ComparisonReport& report,
                            const std::vector<LoadedRun>& runs) {
  std::string out;
  out += "runs\n";
  char line[256];
  std::snprintf(line, sizeof(line), "  %-28s %-8s %-12s %8s %8s %12s %12s %12s\n",
                "label", "encoding", "seed", "entries", "coaxial", "diversity",
                "score_mean", "score_std");
  out += line;
  for (const auto& r : report.runs) {
    std::snprintf(line, sizeof(line), "  %-28s %-8s %-12llu %8zu %8d %12s %12s %12s\n",
                  r.label.c_str(), encoding_to_string(r.encoding).c_str(),
                  static_cast<unsigned long long>(r.seed), r.archive_size,
                  r.coaxial, fixed(r.diversity, 3).c_str(),
                  r.scores ? fixed(r.scores->mean, 2).c_str() : "-",
                  r.scores ? fixed(r.scores->stddev, 2).c_str() : "-");
    out += line;
  }

  out += "\nhead-to-head by seed\n";
  std::snprintf(line, sizeof(line), "  %-12s %-22s %-22s\n", "seed",
                "rnn_more_diverse", "rnn_at_least_as_coaxial");
  out += line;
  for (const auto& v : report.verdicts) {
    std::snprintf(line, sizeof(line), "  %-12llu %-22s %-22s\n",
                  static_cast<unsigned long long>(v.seed),
                  v.rnn_more_diverse ? "yes" : "no",
                  v.rnn_at_least_as_coaxial ? "yes" : "no");
    out += line;
  }
  std::snprintf(line, sizeof(line),
                "  majority: rnn more diverse in %d/%d, rnn at least as coaxial "
                "in %d/%d\n",
                report.rnn_more_diverse_count, report.seeds_compared,
                report.rnn_at_least_as_coaxial_count, report.seeds_compared);
  out += line;

  for (const auto& run : runs) {
    const auto table = score_table(run.archive);
    if (table.empty()) continue;
    out += "\nscores: " + run.label + " (generation avg min max, inches)\n";
    for (const auto& row : table) {
      std::snprintf(line, sizeof(line), "  %4d %8s %8s %8s\n", row.generation,
                    fixed(row.avg_in, 2).c_str(), fixed(row.min_in, 2).c_str(),
                    fixed(row.max_in, 2).c_str());
      out += line;
    }
  }
  return out;
}

nlohmann::ordered_json comparison_json(const ComparisonReport& report,
                                       const std::vector<LoadedRun>& runs) {
  nlohmann::ordered_json j;
  j["schema"] = kSchemaVersion;
  j["runs"] = nlohmann::ordered_json::array();
  for (const auto& r : report.runs) {
    nlohmann::ordered_json rj{{"label", r.label},
                              {"encoding", encoding_to_string(r.encoding)},
                              {"seed", r.seed},
                              {"entries", r.archive_size},
                              {"coaxial", r.coaxial},
                              {"diversity", r.diversity}};
    if (r.scores) {
      rj["score_mean"] = r.scores->mean;
      rj["score_std"] = r.scores->stddev;
    }
    j["runs"].push_back(std::move(rj));
  }
  j["verdicts"] = nlohmann::ordered_json::array();
  for (const auto& v : report.verdicts) {
    j["verdicts"].push_back({{"seed", v.seed},
                             {"rnn_more_diverse", v.rnn_more_diverse},
                             {"rnn_at_least_as_coaxial", v.rnn_at_least_as_coaxial}});
  }
  j["seeds_compared"] = report.seeds_compared;
  j["rnn_more_diverse_count"] = report.rnn_more_diverse_count;
  j["rnn_at_least_as_coaxial_count"] = report.rnn_at_least_as_coaxial_count;
  j["score_tables"] = nlohmann::ordered_json::object();
  for (const auto& run : runs) {
    const auto table = score_table(run.archive);
    if (table.empty()) continue;
    nlohmann::ordered_json tj = nlohmann::ordered_json::array();
    for (const auto& row : table) {
      tj.push_back({{"generation", row.generation},
                    {"avg_in", row.avg_in},
                    {"min_in", row.min_in},
                    {"max_in", row.max_in}});
    }
    j["score_tables"][run.label] = std::move(tj);
  }
  return j;
}

int do_compare(const CompareArgs& args) {
  if (args.run_dirs.size() < 2) {
    std::cerr << "error: compare needs at least two run directories\n";
    return 1;
  }
  std::vector<LoadedRun> runs;
  runs.reserve(args.run_dirs.size());
  for (const auto& dir : args.run_dirs) runs.push_back(load_run_dir(dir));

  const ComparisonReport report = compare_runs(runs);

  const std::string text = comparison_text(report, runs);
  const std::string json_text = comparison_json(report, runs).dump(2) + "\n";

  const std::string txt_path = args.out_prefix + ".txt";
  const std::string json_path = args.out_prefix + ".json";
  const auto write_text = [](const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + path + " for writing");
    out << content;
    out.flush();
    if (!out) throw IoError("write failed on " + path);
  };
  write_text(txt_path, text);
  write_text(json_path, json_text);

  std::cout << text;
  std::cout << "wrote " << txt_path << " and " << json_path << "\n";
  return 0;
}

}  // namespace

LoadedRun load_run_dir(const std::filesystem::path& dir) {
  LoadedRun run;
  run.label = dir.string();
  run.archive = load_archive(dir / kArchiveFileName);
  const EvolutionConfig config = load_config(dir / kConfigFileName);
  run.encoding = config.encoding;
  run.seed = config.seed;
  return run;
}

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"evolves, renders, scores, and compares gear mechanisms"};
  app.require_subcommand(1);

  EvolveArgs evolve_args;
  auto* evolve_cmd =
      app.add_subcommand("evolve", "run evolution and write a run directory");
  evolve_cmd->add_option("--encoding", evolve_args.encoding, "genome encoding")
      ->check(CLI::IsMember({"rnn", "direct"}));
  evolve_cmd->add_option("--config", evolve_args.config_path, "JSON config file")
      ->check(CLI::ExistingFile);
  auto* seed_opt =
      evolve_cmd->add_option("--seed", evolve_args.seed, "master random seed");
  evolve_cmd->add_option("--out", evolve_args.out_dir, "output directory")
      ->required();

  RenderArgs render_args;
  auto* render_cmd =
      app.add_subcommand("render", "draw one archived mechanism as SVG");
  render_cmd->add_option("--archive", render_args.archive_path, "archive stream")
      ->required()
      ->check(CLI::ExistingFile);
  render_cmd->add_option("--entry", render_args.entry, "record index (generation)")
      ->required();
  render_cmd->add_option("--out", render_args.out_path, "SVG output path")
      ->required();

  ScoreArgs score_args;
  auto* score_cmd = app.add_subcommand(
      "score", "annotate an archive copy with distance scores");
  score_cmd->add_option("--archive", score_args.archive_path, "archive stream")
      ->required()
      ->check(CLI::ExistingFile);
  auto* rig_opt = score_cmd
                      ->add_option("--rig", score_args.rig_path,
                                   "rig model JSON (default model if omitted)")
                      ->check(CLI::ExistingFile);
  score_cmd
      ->add_option("--import", score_args.import_path,
                   "measured trials: lines of 'generation t1 t2 t3'")
      ->check(CLI::ExistingFile)
      ->excludes(rig_opt);
  score_cmd->add_option("--out", score_args.out_path,
                        "annotated copy path (default: <archive>.scored.jsonl)");

  CompareArgs compare_args;
  auto* compare_cmd =
      app.add_subcommand("compare", "cross-run comparison report");
  compare_cmd
      ->add_option("--runs", compare_args.run_dirs, "run directories to compare")
      ->required()
      ->expected(-1);
  compare_cmd
      ->add_option("--out", compare_args.out_prefix,
                   "report path prefix (writes PREFIX.txt and PREFIX.json)")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  evolve_args.seed_given = seed_opt->count() > 0;

  try {
    if (evolve_cmd->parsed()) return do_evolve(evolve_args);
    if (render_cmd->parsed()) return do_render(render_args);
    if (score_cmd->parsed()) return do_score(score_args);
    if (compare_cmd->parsed()) return do_compare(compare_args);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

int run_cli(const std::vector<std::string>& args) {
  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("gearevo");
  for (const auto& a : args) argv.push_back(a.c_str());
  return run_cli(static_cast<int>(argv.size()), argv.data());
}

}  // namespace gearevo
