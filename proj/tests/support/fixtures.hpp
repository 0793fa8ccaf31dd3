#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "tweetpol/ablation.hpp"
#include "tweetpol/utf8.hpp"

namespace fixtures {

inline std::filesystem::path test_data_dir() { return TWEETPOL_TEST_DATA_DIR; }

// Loaded once per process.
inline const tweetpol::Resources& resources() {
  static const tweetpol::Resources res = tweetpol::Resources::load(tweetpol::default_data_dir());
  return res;
}

inline std::string u8(std::u32string_view scalars) {
  std::string s;
  for (const char32_t c : scalars) tweetpol::utf8::append(s, c);
  return s;
}

inline std::vector<std::uint8_t> bytes_of(std::string_view s) {
  return {s.begin(), s.end()};
}

inline std::vector<std::uint8_t> from_hex(std::string_view hex) {
  std::vector<std::uint8_t> out;
  for (std::size_t i = 0; i + 1 < hex.size(); i += 2) {
    out.push_back(static_cast<std::uint8_t>(std::stoi(std::string(hex.substr(i, 2)), nullptr, 16)));
  }
  return out;
}

// Fresh empty directory under the system temp dir.
inline std::filesystem::path scratch_dir(std::string_view name) {
  const auto dir = std::filesystem::temp_directory_path() / ("tweetpol-test-" + std::string(name));
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace fixtures
