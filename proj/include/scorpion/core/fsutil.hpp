#pragma once

#include <filesystem>
#include <string>
#include <string_view>

namespace scorpion {

/// Writes content to a sibling temp file, then renames over the target.
/// A failed write never leaves a truncated file at `path`.
void atomic_write_bytes(const std::filesystem::path& path, std::string_view content);

std::string read_file_bytes(const std::filesystem::path& path);

/// Fixed-format double for CSV output: shortest form with up to 10
/// significant digits, locale-independent.
std::string format_double(double v);

}  // namespace scorpion
