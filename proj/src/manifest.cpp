#include "polylab/manifest.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace polylab::io {

std::string fnv1a64_hex(std::string_view data) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string iso8601_utc_now() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

RunManifest start_manifest(int argc, const char* const* argv, std::uint64_t seed) {
    RunManifest m;
    std::ostringstream cmd;
    for (int i = 0; i < argc; ++i) {
        if (i) cmd << ' ';
        cmd << argv[i];
    }
    m.command_line = cmd.str();
    m.seed = seed;
    m.started_at = iso8601_utc_now();
    return m;
}

void add_output_file(RunManifest& manifest, const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("manifest: cannot read output file " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    const std::string data = ss.str();
    manifest.outputs.push_back({path, data.size(), "fnv1a64:" + fnv1a64_hex(data)});
}

std::string RunManifest::to_json() const {
    nlohmann::json j;
    j["command_line"] = command_line;
    j["seed"] = seed;
    j["version"] = version;
    j["started_at"] = started_at;
    j["finished_at"] = finished_at;
    j["outputs"] = nlohmann::json::array();
    for (const auto& f : outputs)
        j["outputs"].push_back({{"path", f.path}, {"bytes", f.bytes}, {"digest", f.digest}});
    return j.dump(2);
}

void finish_and_write_manifest(RunManifest& manifest, const std::string& manifest_path) {
    manifest.finished_at = iso8601_utc_now();
    std::ofstream out(manifest_path);
    if (!out) throw std::runtime_error("manifest: cannot write " + manifest_path);
    out << manifest.to_json() << '\n';
}

}  // namespace polylab::io
