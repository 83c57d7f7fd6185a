#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "gearevo/archive_io.hpp"
#include "gearevo/cli.hpp"

using namespace gearevo;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;

  TempDir() {
    std::random_device rd;
    path = fs::temp_directory_path() /
           ("gearevo-cli-" + std::to_string(rd()) + std::to_string(rd()));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void spit(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  out << text;
}

// Small but real run: big enough to exercise selection and variation.
const char* kSmallConfig =
    "{\"pop_size\": 12, \"generations\": 4, \"seed\": 5}\n";

fs::path make_run(const TempDir& tmp, const std::string& name,
                  const std::vector<std::string>& extra_args) {
  const fs::path cfg = tmp.path / (name + "-config.json");
  spit(cfg, kSmallConfig);
  const fs::path out = tmp.path / name;
  std::vector<std::string> args{"evolve", "--config", cfg.string(), "--out",
                                out.string()};
  args.insert(args.end(), extra_args.begin(), extra_args.end());
  REQUIRE(run_cli(args) == 0);
  return out;
}

}  // namespace

TEST_CASE("evolve writes a complete run directory") {
  TempDir tmp;
  const fs::path run = make_run(tmp, "run", {"--encoding", "rnn"});

  REQUIRE(fs::exists(run / kArchiveFileName));
  REQUIRE(fs::exists(run / kReportFileName));
  REQUIRE(fs::exists(run / kConfigFileName));

  const Archive archive = load_archive(run / kArchiveFileName);
  CHECK(archive.size() == 4);
  for (const auto& e : archive.entries()) {
    CHECK(e.encoding == EncodingKind::Rnn);
    CHECK(e.trace.has_value());
  }

  const EvolutionConfig echoed = load_config(run / kConfigFileName);
  CHECK(echoed.pop_size == 12);
  CHECK(echoed.generations == 4);
  CHECK(echoed.seed == 5);
  CHECK(echoed.encoding == EncodingKind::Rnn);

  const nlohmann::json report = nlohmann::json::parse(slurp(run / kReportFileName));
  CHECK(report["seed"] == 5);
  CHECK(report["per_generation"].size() == 4);
  CHECK(report["config"]["pop_size"] == 12);
}

TEST_CASE("evolve is reproducible and flag overrides beat the config file") {
  TempDir tmp;
  const fs::path a = make_run(tmp, "a", {"--encoding", "direct"});
  const fs::path b = make_run(tmp, "b", {"--encoding", "direct"});
  CHECK(slurp(a / kArchiveFileName) == slurp(b / kArchiveFileName));

  const fs::path c = make_run(tmp, "c", {"--encoding", "direct", "--seed", "9"});
  CHECK(load_config(c / kConfigFileName).seed == 9);
  CHECK(slurp(c / kArchiveFileName) != slurp(a / kArchiveFileName));

  const Archive direct = load_archive(a / kArchiveFileName);
  for (const auto& e : direct.entries()) {
    CHECK(e.encoding == EncodingKind::Direct);
    CHECK_FALSE(e.trace.has_value());
  }
}

TEST_CASE("evolve rejects bad invocations") {
  TempDir tmp;
  CHECK(run_cli({"evolve"}) != 0);  // --out is required
  CHECK(run_cli({"evolve", "--out", (tmp.path / "x").string(), "--encoding",
                 "grammar"}) != 0);
  CHECK(run_cli({"evolve", "--out", (tmp.path / "x").string(), "--config",
                 (tmp.path / "missing.json").string()}) != 0);
  CHECK(run_cli({}) != 0);            // a subcommand is required
  CHECK(run_cli({"shrink"}) != 0);    // unknown subcommand
  CHECK(run_cli({"evolve", "--out", (tmp.path / "x").string(), "--bogus"}) != 0);

  const fs::path bad_cfg = tmp.path / "bad.json";
  spit(bad_cfg, "{\"pop_size\": 1}\n");
  CHECK(run_cli({"evolve", "--config", bad_cfg.string(), "--out",
                 (tmp.path / "x").string()}) != 0);
}

TEST_CASE("render writes an SVG for an archived record") {
  TempDir tmp;
  const fs::path run = make_run(tmp, "run", {"--encoding", "rnn"});
  const fs::path svg_path = tmp.path / "gen0.svg";

  REQUIRE(run_cli({"render", "--archive", (run / kArchiveFileName).string(),
                   "--entry", "0", "--out", svg_path.string()}) == 0);
  const std::string svg = slurp(svg_path);
  CHECK(svg.rfind("<svg ", 0) == 0);
  CHECK(svg.find("</svg>") != std::string::npos);

  CHECK(run_cli({"render", "--archive", (run / kArchiveFileName).string(),
                 "--entry", "7", "--out", svg_path.string()}) != 0);
  CHECK(run_cli({"render", "--archive", (tmp.path / "no.jsonl").string(),
                 "--entry", "0", "--out", svg_path.string()}) != 0);
  CHECK(run_cli({"render", "--archive", (run / kArchiveFileName).string(),
                 "--out", svg_path.string()}) != 0);  // --entry required
}

TEST_CASE("score annotates a copy with surrogate distances") {
  TempDir tmp;
  const fs::path run = make_run(tmp, "run", {"--encoding", "direct"});
  const fs::path archive_path = run / kArchiveFileName;

  REQUIRE(run_cli({"score", "--archive", archive_path.string()}) == 0);
  const fs::path scored_path = run / "archive.scored.jsonl";
  REQUIRE(fs::exists(scored_path));

  const Archive original = load_archive(archive_path);
  const Archive scored = load_archive(scored_path);
  REQUIRE(scored.size() == original.size());
  for (std::size_t i = 0; i < scored.size(); ++i) {
    const ArchiveEntry& e = scored.entries()[i];
    CHECK(e.distance_in.has_value() == e.mechanism.feasibility.feasible);
    if (e.distance_in) {
      CHECK(*e.distance_in >= 0.0);
      CHECK(*e.distance_in <= 35.0);
    }
    CHECK(e.generation == original.entries()[i].generation);
  }
  // The source archive stays unscored.
  for (const auto& e : original.entries()) CHECK_FALSE(e.distance_in.has_value());
}

TEST_CASE("score accepts a custom rig and an explicit output path") {
  TempDir tmp;
  const fs::path run = make_run(tmp, "run", {"--encoding", "direct"});
  const fs::path rig = tmp.path / "rig.json";
  spit(rig, "{\"band_torque\": 1e9, \"input_turns\": 1e7}\n");
  const fs::path out = tmp.path / "custom.jsonl";

  REQUIRE(run_cli({"score", "--archive", (run / kArchiveFileName).string(),
                   "--rig", rig.string(), "--out", out.string()}) == 0);
  const Archive scored = load_archive(out);
  for (const auto& e : scored.entries()) {
    if (e.mechanism.feasibility.feasible) {
      CHECK(*e.distance_in == 35.0);  // no stall + huge turn budget pegs the clamp
    }
  }
}

TEST_CASE("score imports measured trials and refuses mixed modes") {
  TempDir tmp;
  const fs::path run = make_run(tmp, "run", {"--encoding", "rnn"});
  const fs::path imports = tmp.path / "trials.txt";
  spit(imports, "# bench sheet\n0 10 11 12\n2 5 5 5\n");
  const fs::path out = tmp.path / "imported.jsonl";

  REQUIRE(run_cli({"score", "--archive", (run / kArchiveFileName).string(),
                   "--import", imports.string(), "--out", out.string()}) == 0);
  const Archive scored = load_archive(out);
  CHECK(scored.entries()[0].distance_in == 11.0);
  CHECK(scored.entries()[0].trials_in ==
        std::array<double, 3>{{10.0, 11.0, 12.0}});
  CHECK_FALSE(scored.entries()[1].distance_in.has_value());
  CHECK(scored.entries()[2].distance_in == 5.0);

  const fs::path rig = tmp.path / "rig.json";
  spit(rig, "{}\n");
  CHECK(run_cli({"score", "--archive", (run / kArchiveFileName).string(),
                 "--import", imports.string(), "--rig", rig.string()}) != 0);

  spit(imports, "9 1 2 3\n");
  CHECK(run_cli({"score", "--archive", (run / kArchiveFileName).string(),
                 "--import", imports.string(), "--out", out.string()}) != 0);
}

TEST_CASE("compare writes paired text and JSON reports") {
  TempDir tmp;
  const fs::path rnn_run = make_run(tmp, "rnn-run", {"--encoding", "rnn"});
  const fs::path direct_run = make_run(tmp, "direct-run", {"--encoding", "direct"});
  const fs::path prefix = tmp.path / "comparison";

  REQUIRE(run_cli({"compare", "--runs", rnn_run.string(), direct_run.string(),
                   "--out", prefix.string()}) == 0);

  const std::string text = slurp(fs::path(prefix.string() + ".txt"));
  CHECK(text.find("head-to-head by seed") != std::string::npos);
  CHECK(text.find("majority:") != std::string::npos);

  const nlohmann::json j =
      nlohmann::json::parse(slurp(fs::path(prefix.string() + ".json")));
  CHECK(j["runs"].size() == 2);
  CHECK(j["seeds_compared"] == 1);
  REQUIRE(j["verdicts"].size() == 1);
  CHECK(j["verdicts"][0]["seed"] == 5);
  CHECK(j["runs"][0]["entries"] == 4);

  CHECK(run_cli({"compare", "--runs", rnn_run.string(), "--out",
                 prefix.string()}) != 0);  // needs at least two runs
}
