#pragma once

#include <map>
#include <string>
#include <vector>

#include "stanley/store.hpp"

namespace stanley {

struct OutputFile {
    std::string path;
    std::string sha256;
};

/// Record of one command invocation.
struct RunManifest {
    std::string tool_version;
    std::string command;
    Json parameters = Json::object();
    std::map<std::string, std::string> input_hashes;  // path -> sha256
    std::vector<OutputFile> output_files;  // relative to the manifest's directory once written
    double wall_clock_seconds = 0;
};

Json to_json(const RunManifest& m);
RunManifest manifest_from_json(const Json& j);

/// Hashes each listed output (which must exist), rewrites its path relative
/// to the manifest's directory and writes the manifest.
void write_manifest(RunManifest& m, const fs::path& path);

/// Re-reads a manifest and checks every output's hash. Throws FormatError
/// on a missing file or a mismatch.
RunManifest verify_manifest(const fs::path& path);

}  // namespace stanley
