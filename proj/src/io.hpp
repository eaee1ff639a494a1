#pragma once

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <string>

namespace qcbm {

// Writes via a temp file in the same directory followed by rename, so
// readers never observe a partial file.
void write_text_atomic(const std::filesystem::path& path, const std::string& text);

std::string read_text(const std::filesystem::path& path);

// FNV-1a 64-bit; used for config hashes so reruns can name their inputs.
std::uint64_t fnv1a64(const std::string& text);
std::string fnv1a64_hex(const std::string& text);

// Shortest round-trip decimal for a double ("%.17g"); infinities print as
// "inf"/"-inf".
std::string format_double(double value);

}  // namespace qcbm
