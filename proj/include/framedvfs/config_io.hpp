#pragma once

#include <stdexcept>
#include <string>

#include "framedvfs/model.hpp"

namespace framedvfs {

/// Malformed configuration input (bad JSON, missing or mistyped fields).
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Config file schema:
///   {"D": real, "m": int, "freqs": [real], "grid_step": real,
///    "tasks": [{"wcec": int, "dist": [[cycles, prob], ...]}]}
/// Task indices are implied by array position. grid_step defaults to
/// D/1000 when absent. Unknown fields are ignored.
SystemConfig parse_config_json(const std::string& text);
SystemConfig load_config_file(const std::string& path);

std::string config_to_json(const SystemConfig& cfg);
void save_config_file(const SystemConfig& cfg, const std::string& path);

}  // namespace framedvfs
