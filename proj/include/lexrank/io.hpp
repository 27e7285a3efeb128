#pragma once

#include <filesystem>
#include <string>
#include <string_view>

namespace lexrank {

// Reads a whole file; throws std::runtime_error naming the path on failure.
std::string read_file(const std::filesystem::path& path);

// Writes via a temporary file in the same directory followed by a rename, so
// readers never observe a partially written file.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

}  // namespace lexrank
