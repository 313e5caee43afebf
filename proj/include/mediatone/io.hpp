#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <string_view>
#include <vector>

namespace mediatone {

// Shortest round-trip decimal representation. Used for every number the
// toolkit writes, so reruns are byte-identical.
std::string fmt_double(double v);

std::vector<std::string_view> split(std::string_view line, char delim);

// Strict field parsers (whole field must be consumed); throw ParseError.
double parse_double(std::string_view s);
std::int64_t parse_int64(std::string_view s);

// Strips a trailing '\r' in place (files written on Windows).
void chomp(std::string& line);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view content);

std::ofstream open_output(const std::filesystem::path& path);
std::ifstream open_input(const std::filesystem::path& path);

}  // namespace mediatone
