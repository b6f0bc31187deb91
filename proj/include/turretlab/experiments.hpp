#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include <json.hpp>

namespace turretlab::experiments {

/// One batch experiment: a subcommand plus its parameter map. Unknown keys
/// anywhere in the spec are rejected. Every run writes a manifest next to
/// its outputs; CSV bodies are byte-stable for a fixed spec and seed.
struct ExperimentSpec {
    std::string subcommand;  // region2d | sweep2d | duo2d | spherepaths | engagement3d
    nlohmann::json params;
    std::filesystem::path out_dir;
    std::uint64_t seed = 0;
    int threads = 1;
};

/// Parses and validates a spec file. Throws BadSpec naming the offending key.
ExperimentSpec parse_spec_file(const std::filesystem::path& file);

/// Runs the experiment, writing CSV outputs plus manifest.json into
/// spec.out_dir. Cleans up partial outputs when a run fails.
void run(const ExperimentSpec& spec);

}  // namespace turretlab::experiments
