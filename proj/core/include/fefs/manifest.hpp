#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>

#include "fefs/eval.hpp"

namespace fefs {

/// Everything needed to re-run a CLI command.
struct RunManifest {
    std::string command_line;
    ExperimentConfig config;
    /// Command-specific settings such as the p grid or label column.
    std::map<std::string, std::string> parameters;
    std::string dataset_fingerprint;
    std::string tool_version;
    std::string timestamp;

    friend bool operator==(const RunManifest&, const RunManifest&) = default;
};

/// 64-bit FNV-1a of the file contents, as 16 hex digits.
std::string file_fingerprint(const std::filesystem::path& path);

std::string_view tool_version() noexcept;
/// Current UTC time as ISO-8601, e.g. 2024-01-31T12:00:00Z.
std::string utc_timestamp();

std::string to_json(const RunManifest& manifest);
RunManifest manifest_from_json(std::string_view text);

}  // namespace fefs
