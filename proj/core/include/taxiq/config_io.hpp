#pragma once

#include <filesystem>
#include <string>

#include "taxiq/network.hpp"

namespace taxiq {

// JSON (de)serialization of NetworkConfig. Numeric fields round-trip
// bit-exactly; matrices are flat row-major arrays. Structural problems
// (missing keys, wrong types or shapes, unsupported schema_version) raise
// ParseError; semantic checks live in validate_network.
NetworkConfig config_from_json(const std::string& text);
std::string config_to_json(const NetworkConfig& config);

NetworkConfig load_config(const std::filesystem::path& path);
void save_config(const NetworkConfig& config, const std::filesystem::path& path);

// Stable 64-bit digest (hex) of the canonical serialization. Identical
// configs digest identically on any platform.
std::string config_digest(const NetworkConfig& config);

}  // namespace taxiq
