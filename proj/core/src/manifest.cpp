#include "fefs/manifest.hpp"

#include <chrono>
#include <ctime>
#include <fstream>
#include <iterator>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "fefs/error.hpp"

#ifndef FEFS_VERSION
#define FEFS_VERSION "0.0.0"
#endif

namespace fefs {

namespace {

using nlohmann::json;

json config_json(const ExperimentConfig& c) {
    return json{
        {"repeats", c.repeats},
        {"master_seed", c.master_seed},
        {"ideal_mean", to_string(c.ideal_mean)},
        {"classifier_mean", to_string(c.classifier_mean)},
        {"entropy", to_string(c.entropy_kind)},
        {"p", c.p},
        {"order", to_string(c.removal_order)},
        {"matrix_source", to_string(c.matrix_source)},
        {"clip_percentile", c.clip_percentile},
        {"train_fraction", c.train_fraction},
        {"stratified", c.stratified},
        {"threads", c.threads},
    };
}

ExperimentConfig config_from(const json& j) {
    ExperimentConfig c;
    c.repeats = j.at("repeats").get<std::size_t>();
    c.master_seed = j.at("master_seed").get<std::uint64_t>();
    c.ideal_mean = parse_mean_kind(j.at("ideal_mean").get<std::string>());
    c.classifier_mean = parse_mean_kind(j.at("classifier_mean").get<std::string>());
    c.entropy_kind = parse_entropy_kind(j.at("entropy").get<std::string>());
    c.p = j.at("p").get<double>();
    c.removal_order = parse_removal_order(j.at("order").get<std::string>());
    c.matrix_source = parse_matrix_source(j.at("matrix_source").get<std::string>());
    c.clip_percentile = j.at("clip_percentile").get<double>();
    c.train_fraction = j.at("train_fraction").get<double>();
    c.stratified = j.at("stratified").get<bool>();
    c.threads = j.at("threads").get<std::size_t>();
    return c;
}

}  // namespace

std::string file_fingerprint(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw error(errc::file_not_found, fmt::format("cannot open '{}'", path.string()));
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (std::istreambuf_iterator<char> it(in), end; it != end; ++it) {
        h ^= static_cast<unsigned char>(*it);
        h *= 0x100000001b3ULL;
    }
    return fmt::format("{:016x}", h);
}

std::string_view tool_version() noexcept { return FEFS_VERSION; }

std::string utc_timestamp() {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    return fmt::format("{:04}-{:02}-{:02}T{:02}:{:02}:{:02}Z", tm.tm_year + 1900, tm.tm_mon + 1, tm.tm_mday, tm.tm_hour,
                       tm.tm_min, tm.tm_sec);
}

std::string to_json(const RunManifest& m) {
    json j{
        {"command_line", m.command_line},
        {"config", config_json(m.config)},
        {"parameters", m.parameters},
        {"dataset_fingerprint", m.dataset_fingerprint},
        {"tool_version", m.tool_version},
        {"timestamp", m.timestamp},
    };
    return j.dump(2) + "\n";
}

RunManifest manifest_from_json(std::string_view text) {
    try {
        const auto j = json::parse(text);
        RunManifest m;
        m.command_line = j.at("command_line").get<std::string>();
        m.config = config_from(j.at("config"));
        m.parameters = j.at("parameters").get<std::map<std::string, std::string>>();
        m.dataset_fingerprint = j.at("dataset_fingerprint").get<std::string>();
        m.tool_version = j.at("tool_version").get<std::string>();
        m.timestamp = j.at("timestamp").get<std::string>();
        return m;
    } catch (const json::exception& e) {
        throw error(errc::invalid_config, fmt::format("malformed manifest: {}", e.what()));
    }
}

}  // namespace fefs
