#pragma once

#include "wcop/criteria.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace wcop {

enum class Task { BoundedBloch, CompactBloch, BoundedLittleBloch, CompactLittleBloch, LemmaProbes, Oracle };

const char* to_string(Task task) noexcept;
std::optional<Task> task_from_string(const std::string& name);

/// Tasks in execution order, with every prerequisite inserted.
std::vector<Task> schedule(const std::vector<Task>& requested);

struct RunConfig {
    std::string name;
    SymbolPair symbol;
    SpaceSpec space = SpaceSpec::bergman(2.0);
    RadialGrid grid;
    std::vector<Task> tasks;
    bool force_boundary_analysis = false;
    std::optional<std::string> output_dir;
    std::vector<std::string> formats;
    /// Normalized document: re-parsing it gives back this configuration.
    nlohmann::ordered_json echo;
};

/// Parses and validates a JSON configuration document.
/// Throws ParseError for malformed text or fields and ValidationError for
/// violated invariants (non-normal weight, map leaving the disk, empty task list).
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

/// Replaces the grid and refreshes the echo.
void override_grid(RunConfig& config, const RadialGrid& grid);

DiskFunction parse_disk_function(const nlohmann::ordered_json& node, const std::string& path);
SelfMap parse_self_map(const nlohmann::ordered_json& node, const std::string& path);
SpaceSpec parse_space(const nlohmann::ordered_json& node, const std::string& path);

/// "K,M,ORDER".
RadialGrid parse_grid_triple(const std::string& text);

}  // namespace wcop
