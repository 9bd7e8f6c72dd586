#include "stanley/manifest.hpp"

#include "stanley/error.hpp"

namespace stanley {

Json to_json(const RunManifest& m) {
    Json outputs = Json::array();
    for (const auto& f : m.output_files) outputs.push_back({{"path", f.path}, {"sha256", f.sha256}});
    return {
        {"tool_version", m.tool_version},
        {"command", m.command},
        {"parameters", m.parameters},
        {"input_hashes", m.input_hashes},
        {"output_files", outputs},
        {"wall_clock_seconds", m.wall_clock_seconds},
    };
}

RunManifest manifest_from_json(const Json& j) {
    try {
        RunManifest m;
        m.tool_version = j.at("tool_version").get<std::string>();
        m.command = j.at("command").get<std::string>();
        m.parameters = j.at("parameters");
        m.input_hashes = j.at("input_hashes").get<std::map<std::string, std::string>>();
        for (const auto& f : j.at("output_files"))
            m.output_files.push_back({f.at("path").get<std::string>(), f.at("sha256").get<std::string>()});
        m.wall_clock_seconds = j.at("wall_clock_seconds").get<double>();
        return m;
    } catch (const Json::exception& e) {
        throw FormatError(std::string("malformed run manifest: ") + e.what());
    }
}

void write_manifest(RunManifest& m, const fs::path& path) {
    const auto base = fs::absolute(path).parent_path();
    for (auto& f : m.output_files) {
        if (!fs::exists(f.path)) throw Error("declared output '" + f.path + "' was not written");
        f.sha256 = sha256_file(f.path);
        f.path = fs::proximate(fs::absolute(f.path), base).generic_string();
    }
    write_file(path, to_json(m).dump(2) + "\n");
}

RunManifest verify_manifest(const fs::path& path) {
    Json j;
    try {
        j = Json::parse(read_file(path));
    } catch (const Json::exception& e) {
        throw FormatError("malformed run manifest '" + path.string() + "': " + e.what());
    }
    auto m = manifest_from_json(j);
    const auto base = fs::absolute(path).parent_path();
    for (const auto& f : m.output_files) {
        const auto p = base / f.path;
        if (!fs::exists(p)) throw FormatError("manifest output '" + f.path + "' is missing");
        if (sha256_file(p) != f.sha256) throw FormatError("manifest output '" + f.path + "' hash mismatch");
    }
    return m;
}

}  // namespace stanley
