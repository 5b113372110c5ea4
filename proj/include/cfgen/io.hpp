#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace cfgen::io {

// Throws LoadError when the file cannot be read.
std::string read_file(const std::filesystem::path& path);
// Writes with LF endings as given; creates parent directories.
void write_file(const std::filesystem::path& path, std::string_view content);
std::vector<std::string> read_lines(const std::filesystem::path& path);

}  // namespace cfgen::io
