#pragma once

#include <stdexcept>
#include <string>

namespace gearevo {

// Rejected configuration (bad ranges, unknown encoding, ...).
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// File and serialization failures (missing files, schema mismatch, ...).
struct IoError : std::runtime_error {
  explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace gearevo
