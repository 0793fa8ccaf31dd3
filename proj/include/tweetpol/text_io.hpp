#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

// Small helpers shared by the line-oriented file formats.
namespace tweetpol::io {

std::vector<std::string_view> split_tabs(std::string_view line);

std::string_view trim(std::string_view s);

// Line without its trailing "\r".
std::string_view chomp(std::string_view line);

// Value of a "# key: value" or "# key=value" comment line, if it is one.
std::optional<std::string> comment_value(std::string_view line,
                                         std::string_view key);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view content);

// 64-bit FNV-1a over raw bytes; used for provenance digests.
std::uint64_t fnv1a64(std::string_view bytes);
std::string digest_hex(std::string_view bytes);

// printf("%.*f") in the C locale.
std::string fixed(double value, int decimals);

// Shortest text that parses back to the identical double.
std::string exact(double value);

double parse_double(std::string_view s, std::string_view what);
std::uint64_t parse_u64(std::string_view s, std::string_view what);

}  // namespace tweetpol::io
