#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace unigini {

inline constexpr const char* kToolVersion = "0.1.0";

// Reproducibility record written alongside every output file: the exact
// invocation, input digests (of the input bytes), and row counts.
struct RunManifest {
    std::string command_line;
    std::string version = kToolVersion;
    struct Input {
        std::string path;
        std::string sha256;
        std::uint64_t bytes = 0;
    };
    std::vector<Input> inputs;
    std::uint64_t rows_in = 0;
    std::uint64_t rows_out = 0;
    std::string timestamp_utc;
};

std::string sha256_hex(const void* data, std::size_t size);
std::string sha256_file(const std::filesystem::path& path, std::uint64_t* bytes_out = nullptr);

std::string utc_timestamp_now();

// Serializes the manifest as JSON to `<output_path>.manifest.json`.
void write_manifest(const std::filesystem::path& output_path, const RunManifest& manifest);

}  // namespace unigini
