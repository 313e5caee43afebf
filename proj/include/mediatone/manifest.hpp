#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace mediatone {

struct RunManifest {
    std::string command;
    std::vector<std::string> inputs;
    std::map<std::string, std::string> config;
};

std::string render_manifest(const RunManifest& manifest, const std::string& output);

// Writes <output>.manifest.json beside each output file. Content carries no
// timestamps, so reruns are byte-identical.
void write_manifests(const RunManifest& manifest,
                     const std::vector<std::filesystem::path>& outputs);

}  // namespace mediatone
