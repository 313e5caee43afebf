#include "mediatone/manifest.hpp"

#include <cstdio>

#include <json.hpp>

#include "mediatone/io.hpp"
#include "mediatone/rng.hpp"
#include "mediatone/version.hpp"

namespace mediatone {

std::string render_manifest(const RunManifest& manifest, const std::string& output) {
    nlohmann::json doc;
    doc["tool"] = "mediatone";
    doc["version"] = kVersion;
    doc["command"] = manifest.command;
    doc["inputs"] = manifest.inputs;
    doc["output"] = output;
    doc["config"] = manifest.config;

    std::string canonical = manifest.command;
    for (const auto& input : manifest.inputs) canonical += "\x1f" + input;
    for (const auto& [key, value] : manifest.config) {
        canonical += "\x1f" + key + "=" + value;
    }
    char hex[17];
    std::snprintf(hex, sizeof(hex), "%016llx",
                  static_cast<unsigned long long>(fnv1a64(canonical)));
    doc["config_hash"] = hex;
    return doc.dump(2) + "\n";
}

void write_manifests(const RunManifest& manifest,
                     const std::vector<std::filesystem::path>& outputs) {
    for (const auto& output : outputs) {
        auto out = open_output(output.string() + ".manifest.json");
        out << render_manifest(manifest, output.filename().string());
    }
}

}  // namespace mediatone
