#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "gearevo/analysis.hpp"

namespace gearevo {

// File names written into a run directory by `evolve`.
inline constexpr const char* kArchiveFileName = "archive.jsonl";
inline constexpr const char* kReportFileName = "report.json";
inline constexpr const char* kConfigFileName = "config.json";

// Loads a run directory (archive plus config echo) for comparison.
LoadedRun load_run_dir(const std::filesystem::path& dir);

// Full command-line entry point, also callable in-process from tests.
// Returns the process exit status; diagnostics go to the standard streams.
int run_cli(int argc, const char* const* argv);

// Convenience overload: `args` excludes the program name.
int run_cli(const std::vector<std::string>& args);

}  // namespace gearevo
