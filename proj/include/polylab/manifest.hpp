#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace polylab::io {

inline constexpr const char* kVersion = "polylab 0.1.0";

// Provenance record emitted alongside every output file: the exact command
// line, seed, version, wall-clock span, and a digest of each file written.
struct RunManifest {
    struct OutputFile {
        std::string path;
        std::uint64_t bytes = 0;
        std::string digest;  // "fnv1a64:<hex>"
    };

    std::string command_line;
    std::uint64_t seed = 0;
    std::string version = kVersion;
    std::string started_at;
    std::string finished_at;
    std::vector<OutputFile> outputs;

    std::string to_json() const;
};

std::string fnv1a64_hex(std::string_view data);
std::string iso8601_utc_now();

RunManifest start_manifest(int argc, const char* const* argv, std::uint64_t seed);

// Digests an already-written file and appends it to the manifest.
void add_output_file(RunManifest& manifest, const std::string& path);

// Stamps finished_at and writes the manifest next to its outputs.
void finish_and_write_manifest(RunManifest& manifest, const std::string& manifest_path);

}  // namespace polylab::io
